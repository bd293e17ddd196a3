#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "dyadconv/conceptnet/lexicon.hpp"
#include "dyadconv/corpus/text.hpp"

namespace dyadconv::conceptnet {

using Sentence = std::vector<std::string>;

namespace detail {

inline bool is_digit(char c) { return c >= '0' && c <= '9'; }

inline bool is_terminator(std::string_view text, std::size_t i) {
    const char c = text[i];
    if (c == '?' || c == '!') return true;
    if (c != '.') return false;
    // decimal point, not a sentence end
    return !(i > 0 && i + 1 < text.size() && is_digit(text[i - 1]) && is_digit(text[i + 1]));
}

inline bool is_numeral(std::string_view w) {
    bool digit = false;
    for (char c : w) {
        if (is_digit(c)) digit = true;
        else if (c != '.') return false;
    }
    return digit;
}

/// Lowercase ASCII, drop apostrophes, turn other ASCII punctuation into spaces
/// (decimal points inside numerals survive).
inline std::string normalize(std::string_view sentence) {
    std::string out;
    out.reserve(sentence.size());
    for (std::size_t i = 0; i < sentence.size(); ++i) {
        const auto c = static_cast<unsigned char>(sentence[i]);
        if (c >= 0x80) {
            out.push_back(static_cast<char>(c));
        } else if (c == '\'') {
            continue;
        } else if (c == '.' && i > 0 && i + 1 < sentence.size() && is_digit(sentence[i - 1]) &&
                   is_digit(sentence[i + 1])) {
            out.push_back('.');
        } else if (std::ispunct(c)) {
            out.push_back(' ');
        } else {
            out.push_back(static_cast<char>(std::tolower(c)));
        }
    }
    return out;
}

}  // namespace detail

/**
 * Turn free text into sentences of concept tokens.
 *
 * Order: split sentences on . ? ! -> lowercase -> strip punctuation -> drop
 * pronouns, prepositions and noise verbs -> drop delete-list words ->
 * generalize through the thesaurus (and, in math-domain mode, numerals to
 * "number" and single letters to "variable"). A sentence that had words but
 * lost all of them to filtering is kept as an empty sentence; segments
 * without any word are dropped.
 */
inline std::vector<Sentence> preprocess(std::string_view text, const Lexicon& lexicon) {
    const std::string plain = corpus::strip_laughter(text);
    std::vector<Sentence> out;
    std::size_t begin = 0;
    auto flush = [&](std::size_t end) {
        const std::string norm = detail::normalize(std::string_view(plain).substr(begin, end - begin));
        const auto words = corpus::whitespace_tokens(norm);
        if (words.empty()) return;
        Sentence s;
        for (auto wv : words) {
            std::string w(wv);
            if (lexicon.is_noise(w) || lexicon.delete_list.contains(w)) continue;
            if (lexicon.math_domain) {
                if (detail::is_numeral(w)) {
                    s.emplace_back("number");
                    continue;
                }
                if (w.size() == 1 && std::isalpha(static_cast<unsigned char>(w[0]))) {
                    s.emplace_back("variable");
                    continue;
                }
            }
            s.push_back(lexicon.generalize(w));
        }
        out.push_back(std::move(s));
    };
    for (std::size_t i = 0; i < plain.size(); ++i) {
        if (detail::is_terminator(plain, i)) {
            flush(i);
            begin = i + 1;
        }
    }
    flush(plain.size());
    return out;
}

}  // namespace dyadconv::conceptnet
