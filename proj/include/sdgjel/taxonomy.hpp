#pragma once

#include "sdgjel/text.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sdgjel {

enum class error_kind { duplicate_code, orphan_code, bad_code, bad_catalog, bad_format };

class parse_error : public std::runtime_error {
public:
    parse_error(error_kind kind, std::string what, std::string code = {}, int entry = 0, int goal = 0)
        : std::runtime_error(std::move(what)), kind_(kind), code_(std::move(code)), entry_(entry), goal_(goal) {}

    error_kind kind() const { return kind_; }
    const std::string& code() const { return code_; }
    // 1-based position of the offending entry in the array
    int entry() const { return entry_; }
    int goal() const { return goal_; }

private:
    error_kind kind_;
    std::string code_;
    int entry_;
    int goal_;
};

struct jel_code {
    std::string code;
    int level = 0;
    std::string parent;  // empty for level 1
    std::string label;
    std::string guideline;
};

struct class_count {
    char letter = 0;
    int level2 = 0;
    int level3 = 0;
    friend bool operator==(const class_count&, const class_count&) = default;
};

struct taxonomy_stats {
    int level1_count = 0;
    int level2_count = 0;
    int level3_count = 0;
    std::vector<class_count> per_class;
};

inline bool valid_code_syntax(std::string_view c) {
    if (c.empty() || c.size() > 3 || c[0] < 'A' || c[0] > 'Z') return false;
    return std::all_of(c.begin() + 1, c.end(), [](char ch) { return ch >= '0' && ch <= '9'; });
}

class jel_taxonomy {
public:
    jel_taxonomy() = default;

    explicit jel_taxonomy(std::vector<jel_code> codes) : codes_(std::move(codes)) {
        for (std::size_t i = 0; i < codes_.size(); ++i) {
            if (!index_.emplace(codes_[i].code, i).second)
                throw parse_error(error_kind::duplicate_code, "duplicate code " + codes_[i].code,
                                  codes_[i].code, static_cast<int>(i) + 1);
        }
        for (std::size_t i = 0; i < codes_.size(); ++i) {
            const auto& c = codes_[i];
            if (c.level > 1 && !index_.count(c.parent))
                throw parse_error(error_kind::orphan_code, "parent " + c.parent + " of " + c.code + " not found",
                                  c.code, static_cast<int>(i) + 1);
            if (c.level == 3) level3_.push_back(&c);
        }
        std::sort(level3_.begin(), level3_.end(),
                  [](const jel_code* a, const jel_code* b) { return a->code < b->code; });
    }

    jel_taxonomy(const jel_taxonomy& o) : jel_taxonomy(o.codes_) {}
    jel_taxonomy& operator=(const jel_taxonomy& o) {
        if (this != &o) *this = jel_taxonomy(o.codes_);
        return *this;
    }
    jel_taxonomy(jel_taxonomy&&) = default;
    jel_taxonomy& operator=(jel_taxonomy&&) = default;

    const std::vector<jel_code>& codes() const { return codes_; }
    // sorted by code
    const std::vector<const jel_code*>& level3() const { return level3_; }

    const jel_code* find(std::string_view code) const {
        auto it = index_.find(std::string(code));
        return it == index_.end() ? nullptr : &codes_[it->second];
    }

    // Level-2 "x0 General" headings are not counted as subcategories; all
    // their level-3 children are.
    taxonomy_stats stats() const {
        taxonomy_stats s;
        std::map<char, class_count> per;
        for (const auto& c : codes_) {
            char k = c.code[0];
            auto& row = per[k];
            row.letter = k;
            if (c.level == 1) ++s.level1_count;
            else if (c.level == 2 && c.code[1] != '0') ++row.level2;
            else if (c.level == 3) ++row.level3;
        }
        for (const auto& [k, row] : per) {
            s.level2_count += row.level2;
            s.level3_count += row.level3;
            s.per_class.push_back(row);
        }
        return s;
    }

private:
    std::vector<jel_code> codes_;
    std::map<std::string, std::size_t> index_;
    std::vector<const jel_code*> level3_;
};

namespace detail {

inline std::string strip_comment_header(std::string_view raw) {
    std::size_t i = 0;
    if (raw.substr(0, 3) == "\xEF\xBB\xBF") i = 3;
    while (i < raw.size()) {
        std::size_t j = i;
        while (j < raw.size() && (raw[j] == ' ' || raw[j] == '\t')) ++j;
        if (j < raw.size() && raw[j] == '#') {
            auto nl = raw.find('\n', j);
            i = nl == std::string_view::npos ? raw.size() : nl + 1;
        } else if (j < raw.size() && (raw[j] == '\n' || raw[j] == '\r')) {
            i = j + 1;
        } else {
            break;
        }
    }
    return std::string(raw.substr(i));
}

inline nlohmann::json parse_json_payload(std::string_view raw) {
    try {
        return nlohmann::json::parse(strip_comment_header(raw));
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(error_kind::bad_format, std::string("invalid JSON: ") + e.what());
    }
}

inline std::string code_token(const nlohmann::json& v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
}

}  // namespace detail

inline jel_taxonomy parse_jel_snapshot(std::string_view raw) {
    auto doc = detail::parse_json_payload(raw);
    if (!doc.is_array()) throw parse_error(error_kind::bad_format, "snapshot is not a JSON array");
    std::vector<jel_code> codes;
    codes.reserve(doc.size());
    int entry = 0;
    for (const auto& o : doc) {
        ++entry;
        if (!o.is_object() || !o.contains("code"))
            throw parse_error(error_kind::bad_code, "entry " + std::to_string(entry) + ": missing code", {}, entry);
        std::string tok = detail::code_token(o["code"]);
        auto bad = [&](const std::string& why) {
            return parse_error(error_kind::bad_code, "entry " + std::to_string(entry) + ": " + why + " '" + tok + "'",
                               tok, entry);
        };
        if (!o["code"].is_string() || !valid_code_syntax(tok)) throw bad("malformed code");
        jel_code c;
        c.code = tok;
        if (!o.contains("level") || !o["level"].is_number_integer()) throw bad("missing level for");
        c.level = o["level"].get<int>();
        if (c.level < 1 || c.level > 3 || static_cast<std::size_t>(c.level) != tok.size())
            throw bad("level does not fit code");
        if (c.level == 1) {
            if (o.contains("parent") && !o["parent"].is_null()) throw bad("level-1 code with parent");
        } else {
            if (!o.contains("parent") || !o["parent"].is_string())
                throw parse_error(error_kind::orphan_code, "entry " + std::to_string(entry) + ": no parent for " + tok,
                                  tok, entry);
            c.parent = o["parent"].get<std::string>();
            if (c.parent != tok.substr(0, tok.size() - 1)) throw bad("parent is not the enclosing class of");
        }
        if (!o.contains("label") || !o["label"].is_string()) throw bad("missing label for");
        c.label = o["label"].get<std::string>();
        if (o.contains("guideline")) {
            if (!o["guideline"].is_string()) throw bad("guideline is not a string for");
            c.guideline = o["guideline"].get<std::string>();
        }
        codes.push_back(std::move(c));
    }
    return jel_taxonomy(std::move(codes));
}

struct keyword {
    std::string surface;
    int rank = 0;
    friend bool operator==(const keyword&, const keyword&) = default;
};

inline bool valid_keyword_surface(std::string_view s) {
    if (s.empty() || s.front() == '_' || s.back() == '_') return false;
    if (s.find("__") != std::string_view::npos) return false;
    return std::all_of(s.begin(), s.end(),
                       [](char c) { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_'; });
}

inline std::vector<keyword> make_keywords(const std::vector<std::string>& surfaces) {
    std::vector<keyword> out;
    out.reserve(surfaces.size());
    for (std::size_t i = 0; i < surfaces.size(); ++i) out.push_back({surfaces[i], static_cast<int>(i) + 1});
    return out;
}

struct sdg_goal {
    int id = 0;
    std::string title;
    std::vector<keyword> direct_keywords;
    std::vector<keyword> lafleur_keywords;
    std::vector<keyword> selected_three;
};

inline constexpr int goal_count = 17;

inline std::vector<sdg_goal> parse_sdg_catalog(std::string_view raw) {
    auto doc = detail::parse_json_payload(raw);
    if (!doc.is_array()) throw parse_error(error_kind::bad_format, "catalog is not a JSON array");
    std::map<int, sdg_goal> by_id;
    for (const auto& o : doc) {
        if (!o.is_object() || !o.contains("id") || !o["id"].is_number_integer())
            throw parse_error(error_kind::bad_catalog, "catalog entry without integer id");
        sdg_goal g;
        g.id = o["id"].get<int>();
        auto bad = [&](const std::string& why) {
            return parse_error(error_kind::bad_catalog, "goal " + std::to_string(g.id) + ": " + why, {}, 0, g.id);
        };
        if (g.id < 1 || g.id > goal_count) throw bad("id out of range");
        if (by_id.count(g.id)) throw bad("duplicate id");
        if (!o.contains("title") || !o["title"].is_string()) throw bad("missing title");
        g.title = o["title"].get<std::string>();
        auto list = [&](const char* name) {
            if (!o.contains(name) || !o[name].is_array()) throw bad(std::string("missing ") + name);
            std::vector<std::string> v;
            for (const auto& s : o[name]) {
                if (!s.is_string() || !valid_keyword_surface(s.get<std::string>()))
                    throw bad(std::string("bad keyword in ") + name);
                v.push_back(s.get<std::string>());
            }
            return v;
        };
        auto direct = list("direct_keywords");
        auto lafleur = list("lafleur_keywords");
        auto selected = list("selected_three");
        if (direct.empty()) throw bad("empty direct_keywords");
        if (selected.size() != 3) throw bad("selected_three must hold exactly 3 keywords");
        if (lafleur.size() > 20) throw bad("more than 20 lafleur_keywords");
        std::set<std::string> seen(lafleur.begin(), lafleur.end());
        if (seen.size() != lafleur.size()) throw bad("duplicate lafleur keyword");
        std::set<std::string> keys;
        for (const auto& s : lafleur) keys.insert(stem_key(s));
        for (const auto& s : selected)
            if (!keys.count(stem_key(s))) throw bad("selected keyword '" + s + "' not in lafleur_keywords");
        g.direct_keywords = make_keywords(direct);
        g.lafleur_keywords = make_keywords(lafleur);
        g.selected_three = make_keywords(selected);
        by_id.emplace(g.id, std::move(g));
    }
    std::vector<sdg_goal> out;
    for (int id = 1; id <= goal_count; ++id) {
        auto it = by_id.find(id);
        if (it == by_id.end())
            throw parse_error(error_kind::bad_catalog, "goal " + std::to_string(id) + ": missing", {}, 0, id);
        out.push_back(std::move(it->second));
    }
    return out;
}

// Stoplist words that collide with some goal's selected keywords.
inline std::vector<std::string> stoplist_conflicts(const stoplist& stop, const std::vector<sdg_goal>& goals) {
    std::set<std::string> hits;
    for (const auto& g : goals)
        for (const auto& k : g.selected_three)
            if (stop.general_words.count(k.surface) || stop.function_words.count(k.surface)) hits.insert(k.surface);
    return {hits.begin(), hits.end()};
}

}  // namespace sdgjel
