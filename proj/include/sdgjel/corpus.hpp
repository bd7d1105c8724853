#pragma once

#include "sdgjel/matcher.hpp"
#include "sdgjel/rational.hpp"
#include "sdgjel/taxonomy.hpp"

#include <json.hpp>

#include <istream>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sdgjel {

class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct biblio_record {
    std::string id;
    int year = 0;
    std::string title;
    std::string abstract;
    std::vector<std::string> jel_codes;
};

struct line_diagnostic {
    int line = 0;
    std::string message;
};

struct unknown_code {
    int line = 0;
    std::string record_id;
    std::string code;
};

struct corpus {
    std::vector<biblio_record> records;
    std::vector<line_diagnostic> errors;
    std::vector<unknown_code> warnings;
};

inline constexpr int min_year = 1900;
inline constexpr int max_year = 2100;

namespace detail {

inline biblio_record parse_record(std::string_view line) {
    static const std::set<std::string> fields{"abstract", "id", "jel_codes", "title", "year"};
    nlohmann::json o;
    try {
        o = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception&) {
        throw std::invalid_argument("invalid JSON");
    }
    if (!o.is_object()) throw std::invalid_argument("record is not an object");
    for (const auto& f : fields)
        if (!o.contains(f)) throw std::invalid_argument("missing field \"" + f + "\"");
    for (const auto& [k, v] : o.items())
        if (!fields.count(k)) throw std::invalid_argument("unexpected field \"" + k + "\"");

    biblio_record r;
    if (!o["id"].is_string() || o["id"].get<std::string>().empty())
        throw std::invalid_argument("id must be a non-empty string");
    r.id = o["id"].get<std::string>();
    if (!o["year"].is_number_integer()) throw std::invalid_argument("year must be an integer");
    r.year = o["year"].get<int>();
    if (r.year < min_year || r.year > max_year)
        throw std::invalid_argument("year " + std::to_string(r.year) + " outside [1900, 2100]");
    if (!o["title"].is_string()) throw std::invalid_argument("title must be a string");
    r.title = o["title"].get<std::string>();
    if (!o["abstract"].is_string()) throw std::invalid_argument("abstract must be a string");
    r.abstract = o["abstract"].get<std::string>();
    if (!o["jel_codes"].is_array()) throw std::invalid_argument("jel_codes must be an array");
    for (const auto& c : o["jel_codes"]) {
        if (!c.is_string() || !valid_code_syntax(c.get<std::string>()))
            throw std::invalid_argument("malformed JEL code " + c.dump());
        r.jel_codes.push_back(c.get<std::string>());
    }
    return r;
}

}  // namespace detail

// Malformed lines become diagnostics; codes missing from tax become
// warnings. With tax == nullptr no existence check is made.
inline corpus parse_corpus(std::istream& in, const jel_taxonomy* tax = nullptr) {
    corpus out;
    std::set<std::string> ids;
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        try {
            auto r = detail::parse_record(line);
            if (!ids.insert(r.id).second) throw std::invalid_argument("duplicate id \"" + r.id + "\"");
            if (tax)
                for (const auto& c : r.jel_codes)
                    if (!tax->find(c)) out.warnings.push_back({n, r.id, c});
            out.records.push_back(std::move(r));
        } catch (const std::invalid_argument& e) {
            out.errors.push_back({n, e.what()});
        }
    }
    if (in.bad()) throw io_error("read error at line " + std::to_string(n + 1));
    return out;
}

struct sdg_tagging {
    std::string record_id;
    std::map<int, rational> scores;
    std::optional<int> argmax;
};

inline sdg_tagging tag_record(const biblio_record& rec, const linkage_table& linkage) {
    sdg_tagging t{rec.id, {}, std::nullopt};
    std::set<std::string> codes(rec.jel_codes.begin(), rec.jel_codes.end());
    for (const auto& [sdg, entries] : linkage.entries) {
        rational raw, top;
        for (const auto& e : entries) {
            if (e.score > top) top = e.score;
            if (codes.count(e.jel_code)) raw += e.score;
        }
        if (raw == 0) continue;
        rational s = raw / top;
        if (s > rational(1)) s = 1;
        t.scores.emplace(sdg, s);
        if (!t.argmax || s > t.scores.at(*t.argmax)) t.argmax = sdg;
    }
    return t;
}

namespace detail {

inline std::string fold_space(std::string_view s) {
    std::string out;
    bool gap = false;
    for (char c : s) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
            gap = true;
            continue;
        }
        if (gap && !out.empty()) out += ' ';
        gap = false;
        out += (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
    }
    return out;
}

}  // namespace detail

inline bool phrase_match(std::string_view text, std::string_view phrase) {
    auto p = detail::fold_space(phrase);
    if (p.empty()) return false;
    return detail::fold_space(text).find(p) != std::string::npos;
}

struct query_group {
    std::string name;
    std::vector<std::string> phrases;
};

struct trend_series {
    std::string query_group;
    std::vector<std::string> phrases;
    std::map<int, long> counts;
};

inline std::vector<trend_series> trend_count(const std::vector<biblio_record>& records,
                                             const std::vector<query_group>& groups, int from, int to) {
    if (from > to) throw std::invalid_argument("empty year range");
    std::vector<trend_series> out;
    for (const auto& g : groups) {
        trend_series s{g.name, g.phrases, {}};
        for (int y = from; y <= to; ++y) s.counts[y] = 0;
        out.push_back(std::move(s));
    }
    for (const auto& r : records) {
        if (r.year < from || r.year > to) continue;
        const std::string text = r.title + " " + r.abstract;
        for (std::size_t i = 0; i < groups.size(); ++i)
            for (const auto& p : groups[i].phrases)
                if (phrase_match(text, p)) {
                    ++out[i].counts[r.year];
                    break;
                }
    }
    return out;
}

}  // namespace sdgjel
