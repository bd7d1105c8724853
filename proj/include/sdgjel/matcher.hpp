#pragma once

#include "sdgjel/rational.hpp"
#include "sdgjel/taxonomy.hpp"
#include "sdgjel/text.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sdgjel {

enum class weighting { uniform, harmonic, top_five_then_harmonic };
enum class method { direct, lafleur, selected_three };

class bad_rank : public std::invalid_argument {
public:
    explicit bad_rank(int r) : std::invalid_argument("keyword rank must be >= 1, got " + std::to_string(r)) {}
};

inline rational weight(weighting scheme, int rank) {
    if (rank < 1) throw bad_rank(rank);
    switch (scheme) {
    case weighting::uniform: return 1;
    case weighting::harmonic: return {1, rank};
    case weighting::top_five_then_harmonic: return rank <= 5 ? rational(1) : rational(1, rank);
    }
    return 1;
}

inline std::string to_string(weighting w) {
    switch (w) {
    case weighting::uniform: return "uniform";
    case weighting::harmonic: return "harmonic";
    case weighting::top_five_then_harmonic: return "top5";
    }
    return {};
}

inline std::string to_string(method m) {
    switch (m) {
    case method::direct: return "direct";
    case method::lafleur: return "lafleur";
    case method::selected_three: return "selected3";
    }
    return {};
}

inline std::optional<weighting> parse_weighting(std::string_view s) {
    if (s == "uniform") return weighting::uniform;
    if (s == "harmonic") return weighting::harmonic;
    if (s == "top5") return weighting::top_five_then_harmonic;
    return std::nullopt;
}

inline std::optional<method> parse_method(std::string_view s) {
    if (s == "direct") return method::direct;
    if (s == "lafleur") return method::lafleur;
    if (s == "selected3") return method::selected_three;
    return std::nullopt;
}

enum class match_locus { none, label, guideline };

struct stemmed_token {
    std::string stem;
    int pos = 0;
    match_locus where = match_locus::label;
};

// Label and guideline of one code, tokenized and stemmed once.
struct code_text {
    const jel_code* code = nullptr;
    std::vector<stemmed_token> tokens;
};

inline code_text index_code(const jel_code& c, const std::set<std::string>& function_words) {
    code_text t{&c, {}};
    int end = 0;
    for (auto& tk : tokenize(c.label, function_words, 0, &end))
        t.tokens.push_back({stem(tk.text), tk.pos, match_locus::label});
    for (auto& tk : tokenize(c.guideline, function_words, end + 1))
        t.tokens.push_back({stem(tk.text), tk.pos, match_locus::guideline});
    return t;
}

// Level-3 codes in code order, ready for matching. Holds pointers into tax,
// which must outlive the index.
class code_index {
public:
    code_index(const jel_taxonomy&& tax, const std::set<std::string>&) = delete;
    code_index(const jel_taxonomy& tax, const std::set<std::string>& function_words) {
        for (const auto* c : tax.level3()) texts_.push_back(index_code(*c, function_words));
    }
    const std::vector<code_text>& texts() const { return texts_; }

private:
    std::vector<code_text> texts_;
};

struct compiled_keyword {
    keyword kw;
    std::vector<std::string> stems;
};

inline compiled_keyword compile(const keyword& k) {
    compiled_keyword c{k, {}};
    for (const auto& p : split_keyword(k.surface)) c.stems.push_back(stem(p));
    return c;
}

inline std::vector<compiled_keyword> compile(const std::vector<keyword>& ks) {
    std::vector<compiled_keyword> out;
    out.reserve(ks.size());
    for (const auto& k : ks) out.push_back(compile(k));
    return out;
}

// A multi-word keyword matches a run of consecutive positions, read forward
// or backward.
inline match_locus keyword_matches(const compiled_keyword& kw, const code_text& text) {
    const auto& tk = text.tokens;
    const auto n = kw.stems.size();
    if (n == 1) {
        for (const auto& t : tk)
            if (t.stem == kw.stems[0]) return t.where;
        return match_locus::none;
    }
    for (std::size_t i = 0; i + n <= tk.size(); ++i) {
        if (tk[i + n - 1].pos - tk[i].pos != static_cast<int>(n) - 1) continue;
        bool fwd = true, rev = true;
        for (std::size_t j = 0; j < n && (fwd || rev); ++j) {
            fwd = fwd && tk[i + j].stem == kw.stems[j];
            rev = rev && tk[i + j].stem == kw.stems[n - 1 - j];
        }
        if (fwd || rev) return tk[i].where;
    }
    return match_locus::none;
}

inline match_locus keyword_matches(const keyword& kw, const jel_code& code, const std::set<std::string>& function_words) {
    return keyword_matches(compile(kw), index_code(code, function_words));
}

struct direct_hit {
    keyword kw;
    std::vector<std::string> codes;
    std::size_t count() const { return codes.size(); }
};

inline std::vector<direct_hit> direct_match(const sdg_goal& goal, const code_index& idx) {
    std::vector<direct_hit> out;
    for (const auto& k : goal.direct_keywords) {
        auto ck = compile(k);
        direct_hit h{k, {}};
        for (const auto& t : idx.texts())
            if (keyword_matches(ck, t) != match_locus::none) h.codes.push_back(t.code->code);
        out.push_back(std::move(h));
    }
    return out;
}

struct match_result {
    int sdg_id = 0;
    std::string jel_code;
    rational score;
    std::vector<std::pair<keyword, rational>> matched;
    bool tie = false;
};

inline match_result overlap_score(const std::vector<compiled_keyword>& kws, const code_text& text, weighting scheme) {
    match_result r;
    r.jel_code = text.code ? text.code->code : std::string{};
    std::set<std::string> seen;
    for (const auto& k : kws) {
        if (keyword_matches(k, text) == match_locus::none) continue;
        if (!seen.insert(k.kw.surface).second) continue;
        auto w = weight(scheme, k.kw.rank);
        r.score += w;
        r.matched.emplace_back(k.kw, w);
    }
    return r;
}

inline match_result overlap_score(const std::vector<keyword>& kws, const code_text& text, weighting scheme) {
    return overlap_score(compile(kws), text, scheme);
}

inline const std::vector<keyword>& keywords_for(const sdg_goal& g, method m) {
    switch (m) {
    case method::direct: return g.direct_keywords;
    case method::lafleur: return g.lafleur_keywords;
    case method::selected_three: return g.selected_three;
    }
    return g.lafleur_keywords;
}

// Sorts by (score desc, code asc) and keeps the first k. When the entry
// after the cut has the same score as the k-th, every entry with that score
// is kept and flagged as a tie.
inline std::vector<match_result> top_k(std::vector<match_result> all, std::size_t k) {
    std::sort(all.begin(), all.end(), [](const match_result& a, const match_result& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.jel_code < b.jel_code;
    });
    if (all.size() <= k) return all;
    const rational cut = all[k - 1].score;
    if (all[k].score != cut) {
        all.resize(k);
        return all;
    }
    std::vector<match_result> out;
    for (auto& r : all) {
        if (r.score < cut) break;
        r.tie = r.score == cut;
        out.push_back(std::move(r));
    }
    return out;
}

inline std::vector<match_result> score_all(const std::vector<keyword>& kws, int sdg_id, const code_index& idx,
                                           weighting scheme) {
    auto ck = compile(kws);
    std::vector<match_result> all;
    for (const auto& t : idx.texts()) {
        auto r = overlap_score(ck, t, scheme);
        if (r.score == 0) continue;
        r.sdg_id = sdg_id;
        all.push_back(std::move(r));
    }
    return all;
}

inline std::vector<match_result> rank_codes(const sdg_goal& goal, const code_index& idx, method m, weighting scheme,
                                            int k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (m == method::direct) scheme = weighting::uniform;
    return top_k(score_all(keywords_for(goal, m), goal.id, idx, scheme), static_cast<std::size_t>(k));
}

struct linkage_table {
    method how = method::lafleur;
    weighting scheme = weighting::top_five_then_harmonic;
    std::map<int, std::vector<match_result>> entries;
};

inline linkage_table build_linkage(const std::vector<sdg_goal>& goals, const code_index& idx, method m,
                                   weighting scheme, int k) {
    linkage_table t{m, m == method::direct ? weighting::uniform : scheme, {}};
    for (const auto& g : goals) t.entries[g.id] = rank_codes(g, idx, m, scheme, k);
    return t;
}

struct reduction {
    std::vector<keyword> general_removed;
    std::vector<keyword> pair_removed;
    std::vector<keyword> plural_removed;
    std::vector<keyword> survivors;
};

inline reduction reduce_keywords_traced(const std::vector<keyword>& kws, const stoplist& stop) {
    reduction r;
    std::vector<keyword> a;
    for (const auto& k : kws) (stop.general_words.count(k.surface) ? r.general_removed : a).push_back(k);

    std::set<std::string> single;
    for (const auto& k : a)
        if (k.surface.find('_') == std::string::npos) single.insert(stem(k.surface));
    std::vector<keyword> b;
    for (const auto& k : a) {
        auto parts = split_keyword(k.surface);
        bool covered = parts.size() > 1 && std::all_of(parts.begin(), parts.end(),
                                                       [&](const std::string& p) { return single.count(stem(p)); });
        (covered ? r.pair_removed : b).push_back(k);
    }

    // Among surfaces sharing a stem key keep the shortest, earliest on ties.
    std::map<std::string, std::size_t> keep;
    for (std::size_t i = 0; i < b.size(); ++i) {
        auto key = stem_key(b[i].surface);
        auto it = keep.find(key);
        if (it == keep.end()) keep.emplace(key, i);
        else if (b[i].surface.size() < b[it->second].surface.size()) it->second = i;
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (keep[stem_key(b[i].surface)] == i) r.survivors.push_back(b[i]);
        else r.plural_removed.push_back(b[i]);
    }
    for (std::size_t i = 0; i < r.survivors.size(); ++i) r.survivors[i].rank = static_cast<int>(i) + 1;
    return r;
}

inline std::vector<keyword> reduce_keywords(const std::vector<keyword>& kws, const stoplist& stop) {
    return reduce_keywords_traced(kws, stop).survivors;
}

// Selected keywords that do not survive reduction, compared by stem key.
inline std::vector<std::string> missing_after_reduction(const sdg_goal& g, const std::vector<keyword>& survivors) {
    std::set<std::string> keys;
    for (const auto& k : survivors) keys.insert(stem_key(k.surface));
    std::vector<std::string> out;
    for (const auto& k : g.selected_three)
        if (!keys.count(stem_key(k.surface))) out.push_back(k.surface);
    return out;
}

}  // namespace sdgjel
