#pragma once

#include "sdgjel/corpus.hpp"
#include "sdgjel/matcher.hpp"
#include "sdgjel/taxonomy.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <map>
#include <ostream>
#include <string_view>
#include <string>
#include <vector>

namespace sdgjel {

// Reference per-class counts of the 2020 JEL edition.
inline const std::vector<class_count>& expected_counts() {
    static const std::vector<class_count> v{
        {'A', 3, 16}, {'B', 5, 32}, {'C', 9, 70}, {'D', 9, 65}, {'E', 7, 47}, {'F', 6, 53}, {'G', 5, 33},
        {'H', 8, 56}, {'I', 3, 23}, {'J', 8, 62}, {'K', 4, 30}, {'L', 9, 72}, {'M', 5, 29}, {'N', 9, 74},
        {'O', 5, 41}, {'P', 5, 43}, {'Q', 5, 49}, {'R', 5, 31}, {'Y', 9, 11}, {'Z', 3, 19}};
    return v;
}

inline constexpr int expected_level2_total = 122;
inline constexpr int expected_level3_total = 856;

struct count_diff {
    char letter;
    class_count got;
    class_count want;
};

inline std::vector<count_diff> diff_counts(const taxonomy_stats& s) {
    std::map<char, class_count> got, want;
    for (const auto& c : s.per_class) got[c.letter] = c;
    for (const auto& c : expected_counts()) want[c.letter] = c;
    std::vector<count_diff> out;
    for (const auto& [k, w] : want) {
        auto g = got.count(k) ? got[k] : class_count{k, 0, 0};
        if (!(g == w)) out.push_back({k, g, w});
    }
    for (const auto& [k, g] : got)
        if (!want.count(k)) out.push_back({k, g, {k, 0, 0}});
    return out;
}

inline void write_stats(std::ostream& os, const taxonomy_stats& s, const std::vector<count_diff>& diffs) {
    os << "class\tlevel2\tlevel3\n";
    for (const auto& c : s.per_class) os << c.letter << '\t' << c.level2 << '\t' << c.level3 << '\n';
    os << "total\t" << s.level2_count << '\t' << s.level3_count << '\n';
    for (const auto& d : diffs)
        os << "diff\t" << d.letter << '(' << d.got.level2 << ',' << d.got.level3 << ")\texpected\t" << d.letter << '('
           << d.want.level2 << ',' << d.want.level3 << ")\n";
    if (s.level2_count != expected_level2_total || s.level3_count != expected_level3_total)
        os << "diff\ttotal(" << s.level2_count << ',' << s.level3_count << ")\texpected\ttotal(" << expected_level2_total
           << ',' << expected_level3_total << ")\n";
}

inline constexpr const char* tsv_header = "sdg_id\tkeyword_or_rank\tjel_code\tlabel\tcount_or_score\tmatched_keywords\n";

inline std::string join(const std::vector<std::string>& v, const char* sep = ";") {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += v[i];
    }
    return out;
}

inline std::vector<std::string> matched_surfaces(const match_result& r) {
    std::vector<std::string> v;
    for (const auto& [k, w] : r.matched) v.push_back(k.surface);
    return v;
}

inline void write_direct_tsv(std::ostream& os, const std::vector<std::pair<int, std::vector<direct_hit>>>& rows) {
    os << tsv_header;
    for (const auto& [id, hits] : rows)
        for (const auto& h : hits)
            os << id << '\t' << h.kw.surface << '\t' << (h.codes.empty() ? "-" : join(h.codes)) << "\t-\t" << h.count()
               << '\t' << h.kw.surface << '\n';
}

inline void write_direct_json(std::ostream& os, const std::vector<std::pair<int, std::vector<direct_hit>>>& rows) {
    nlohmann::ordered_json doc;
    doc["method"] = "direct";
    nlohmann::ordered_json entries = nlohmann::ordered_json::object();
    for (const auto& [id, hits] : rows) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& h : hits)
            arr.push_back({{"keyword", h.kw.surface}, {"count", h.count()}, {"codes", h.codes}});
        entries[std::to_string(id)] = arr;
    }
    doc["entries"] = entries;
    os << doc.dump(2) << '\n';
}

inline void write_ranked_tsv(std::ostream& os, const linkage_table& t, const jel_taxonomy& tax) {
    os << tsv_header;
    for (const auto& [id, rows] : t.entries) {
        int rank = 0;
        for (const auto& r : rows) {
            ++rank;
            const auto* c = tax.find(r.jel_code);
            os << id << '\t' << rank << (r.tie ? "*" : "") << '\t' << r.jel_code << '\t' << (c ? c->label : "-") << '\t'
               << r.score << '\t' << join(matched_surfaces(r)) << '\n';
        }
    }
}

inline nlohmann::ordered_json linkage_to_json(const linkage_table& t) {
    nlohmann::ordered_json doc;
    doc["method"] = to_string(t.how);
    doc["weighting"] = to_string(t.scheme);
    nlohmann::ordered_json entries = nlohmann::ordered_json::object();
    for (const auto& [id, rows] : t.entries) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& r : rows)
            arr.push_back({{"jel", r.jel_code},
                           {"score_num", r.score.num()},
                           {"score_den", r.score.den()},
                           {"matched", matched_surfaces(r)},
                           {"tie", r.tie}});
        entries[std::to_string(id)] = arr;
    }
    doc["entries"] = entries;
    return doc;
}

// Matched keyword ranks are not part of the exchange format; restored
// entries carry surfaces only.
inline linkage_table linkage_from_json(std::string_view raw) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(raw);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(error_kind::bad_format, std::string("linkage: invalid JSON: ") + e.what());
    }
    auto fail = [](const std::string& why) { return parse_error(error_kind::bad_format, "linkage: " + why); };
    if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_object()) throw fail("missing entries");
    linkage_table t;
    if (doc.contains("method")) {
        auto m = doc["method"].is_string() ? parse_method(doc["method"].get<std::string>()) : std::nullopt;
        if (!m) throw fail("unknown method");
        t.how = *m;
    }
    if (doc.contains("weighting")) {
        auto w = doc["weighting"].is_string() ? parse_weighting(doc["weighting"].get<std::string>()) : std::nullopt;
        if (!w) throw fail("unknown weighting");
        t.scheme = *w;
    }
    for (const auto& [key, arr] : doc["entries"].items()) {
        int id = 0;
        try {
            std::size_t used = 0;
            id = std::stoi(key, &used);
            if (used != key.size()) throw std::invalid_argument(key);
        } catch (const std::exception&) {
            throw fail("bad sdg id '" + key + "'");
        }
        if (!arr.is_array()) throw fail("entries for " + key + " not an array");
        auto& rows = t.entries[id];
        for (const auto& e : arr) {
            if (!e.is_object() || !e.contains("jel") || !e["jel"].is_string() || !e.contains("score_num") ||
                !e["score_num"].is_number_integer() || !e.contains("score_den") || !e["score_den"].is_number_integer())
                throw fail("malformed entry under " + key);
            match_result r;
            r.sdg_id = id;
            r.jel_code = e["jel"].get<std::string>();
            auto den = e["score_den"].get<std::int64_t>();
            if (den <= 0) throw fail("non-positive denominator under " + key);
            r.score = rational(e["score_num"].get<std::int64_t>(), den);
            if (e.contains("matched") && e["matched"].is_array())
                for (const auto& m : e["matched"])
                    if (m.is_string()) r.matched.emplace_back(keyword{m.get<std::string>(), 0}, rational{});
            r.tie = e.contains("tie") && e["tie"].is_boolean() && e["tie"].get<bool>();
            rows.push_back(std::move(r));
        }
    }
    return t;
}

inline double round6(double x) { return std::round(x * 1e6) / 1e6; }

inline std::string tagging_json(const sdg_tagging& t) {
    nlohmann::ordered_json o;
    o["id"] = t.record_id;
    nlohmann::ordered_json scores = nlohmann::ordered_json::object();
    for (const auto& [id, s] : t.scores) scores[std::to_string(id)] = round6(s.to_double());
    o["scores"] = scores;
    if (t.argmax) o["argmax"] = *t.argmax;
    else o["argmax"] = nullptr;
    return o.dump();
}

inline void write_trend_tsv(std::ostream& os, const std::vector<trend_series>& series, int from, int to) {
    os << "year";
    for (const auto& s : series) os << '\t' << s.query_group;
    os << '\n';
    for (int y = from; y <= to; ++y) {
        os << y;
        for (const auto& s : series) {
            auto it = s.counts.find(y);
            os << '\t' << (it == s.counts.end() ? 0 : it->second);
        }
        os << '\n';
    }
}

inline void write_reduction(std::ostream& os, const sdg_goal& g, const reduction& r,
                            const std::vector<std::string>& missing) {
    auto surfaces = [](const std::vector<keyword>& v) {
        std::vector<std::string> s;
        for (const auto& k : v) s.push_back(k.surface);
        return join(s);
    };
    os << "goal\t" << g.id << '\n';
    os << "original\t" << surfaces(g.lafleur_keywords) << '\n';
    os << "general_words\t" << surfaces(r.general_removed) << '\n';
    os << "pair_duplicates\t" << surfaces(r.pair_removed) << '\n';
    os << "plural_forms\t" << surfaces(r.plural_removed) << '\n';
    os << "survivors\t" << surfaces(r.survivors) << '\n';
    os << "selected_three\t" << surfaces(g.selected_three) << '\t' << (missing.empty() ? "ok" : "missing:" + join(missing))
       << '\n';
}

}  // namespace sdgjel
