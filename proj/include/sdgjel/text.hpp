#pragma once

#include <array>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sdgjel {

struct stoplist {
    std::set<std::string> general_words;
    std::set<std::string> function_words;
};

// Lines are words; "[general]" / "[function]" switch the target set.
// Words before any section header are general words.
inline stoplist parse_stoplist(std::string_view raw) {
    stoplist out;
    std::set<std::string>* target = &out.general_words;
    std::istringstream in{std::string(raw)};
    std::string line;
    while (std::getline(in, line)) {
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#') continue;
        auto e = line.find_last_not_of(" \t\r");
        std::string w = line.substr(b, e - b + 1);
        if (w == "[general]") { target = &out.general_words; continue; }
        if (w == "[function]") { target = &out.function_words; continue; }
        for (auto& c : w)
            if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
        target->insert(std::move(w));
    }
    return out;
}

inline std::string stem(std::string_view token) {
    static const std::array<std::pair<std::string_view, std::string_view>, 4> irregular{{
        {"women", "woman"}, {"men", "man"}, {"children", "child"}, {"cities", "city"}}};
    std::string w(token);
    for (const auto& [from, to] : irregular)
        if (w == from) { w = to; break; }

    auto ends = [&](std::string_view s) {
        return w.size() > s.size() && std::string_view(w).substr(w.size() - s.size()) == s;
    };
    auto cut = [&](std::size_t n, std::string_view add) {
        w.resize(w.size() - n);
        w += add;
    };

    if (ends("izations")) cut(8, "ize");
    else if (ends("ization")) cut(7, "ize");
    else if (ends("ities")) cut(5, "ity");
    else if (ends("ies")) cut(3, "y");
    else if (ends("ment")) {}
    else if (ends("ural")) cut(2, "");
    else if (ends("al") && w.size() - 2 >= 5) cut(2, "");
    else if (ends("es")) cut(2, "");
    else if (ends("s") && !ends("ss")) cut(1, "");

    if (w.size() > 1 && w.back() == 'e') w.pop_back();
    return w;
}

struct token {
    std::string text;
    int pos = 0;
};

namespace detail {

inline bool is_word_byte(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

inline bool is_hard_break(std::string_view s, std::size_t i) {
    switch (s[i]) {
    case ',': case ';': case ':': case '.': case '(': case ')': case '[': case ']':
    case '!': case '?':
        return true;
    default:
        break;
    }
    // U+2022 bullet
    return s.compare(i, 3, "\xE2\x80\xA2") == 0;
}

}  // namespace detail

// Positions advance on every word, including dropped function words, and
// jump by one more at clause punctuation so that adjacency never spans it.
inline std::vector<token> tokenize(std::string_view text, const std::set<std::string>& function_words,
                                   int start = 0, int* end = nullptr) {
    std::vector<token> out;
    int pos = start;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) return;
        if (!function_words.count(cur)) out.push_back({cur, pos});
        ++pos;
        cur.clear();
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        auto c = static_cast<unsigned char>(text[i]);
        if (detail::is_word_byte(c)) {
            cur += static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c);
            continue;
        }
        flush();
        if (detail::is_hard_break(text, i)) ++pos;
    }
    flush();
    if (end) *end = pos;
    return out;
}

inline std::vector<std::string> normalize(std::string_view text, const std::set<std::string>& function_words) {
    std::vector<std::string> out;
    for (auto& t : tokenize(text, function_words)) out.push_back(std::move(t.text));
    return out;
}

inline std::vector<std::string> split_keyword(std::string_view surface) {
    std::vector<std::string> parts;
    std::size_t b = 0;
    while (b <= surface.size()) {
        auto e = surface.find('_', b);
        if (e == std::string_view::npos) e = surface.size();
        parts.emplace_back(surface.substr(b, e - b));
        b = e + 1;
    }
    return parts;
}

// Stem of each component joined by '_'; two surfaces with the same key are
// the same keyword up to inflection.
inline std::string stem_key(std::string_view surface) {
    std::string key;
    for (const auto& p : split_keyword(surface)) {
        if (!key.empty()) key += '_';
        key += stem(p);
    }
    return key;
}

}  // namespace sdgjel
