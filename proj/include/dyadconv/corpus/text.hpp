#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace dyadconv::corpus {

/// Inline annotation marking one laughter event in transcript text.
inline constexpr std::string_view kLaughterMarker = "[laughter]";

inline bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

/// Whitespace-separated tokens.
inline std::vector<std::string_view> whitespace_tokens(std::string_view text) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && is_space(text[i])) ++i;
        const std::size_t b = i;
        while (i < text.size() && !is_space(text[i])) ++i;
        if (i > b) out.push_back(text.substr(b, i - b));
    }
    return out;
}

inline int count_laughter_markers(std::string_view text) {
    int n = 0;
    for (std::size_t pos = text.find(kLaughterMarker); pos != std::string_view::npos;
         pos = text.find(kLaughterMarker, pos + kLaughterMarker.size())) {
        ++n;
    }
    return n;
}

/// Text with every laughter marker replaced by a space.
inline std::string strip_laughter(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t hit = text.find(kLaughterMarker, pos);
        if (hit == std::string_view::npos) {
            out.append(text.substr(pos));
            break;
        }
        out.append(text.substr(pos, hit - pos));
        out.push_back(' ');
        pos = hit + kLaughterMarker.size();
    }
    return out;
}

/// Spoken words: whitespace tokens, laughter markers excluded.
inline int word_count(std::string_view text) {
    return static_cast<int>(whitespace_tokens(strip_laughter(text)).size());
}

/// Non-whitespace characters (UTF-8 code points), laughter markers excluded.
inline int character_count(std::string_view text) {
    int n = 0;
    for (unsigned char c : strip_laughter(text)) {
        if (is_space(static_cast<char>(c))) continue;
        if ((c & 0xC0u) == 0x80u) continue;  // UTF-8 continuation byte
        ++n;
    }
    return n;
}

/**
 * Approximate count of independent clauses: maximal segments delimited by
 * '.', '?', '!' or ';' that contain at least one token.
 */
inline int clause_count_heuristic(std::string_view text) {
    const std::string plain = strip_laughter(text);
    int n = 0;
    bool has_token = false;
    for (char c : plain) {
        if (c == '.' || c == '?' || c == '!' || c == ';') {
            if (has_token) ++n;
            has_token = false;
        } else if (!is_space(c)) {
            has_token = true;
        }
    }
    if (has_token) ++n;
    return n;
}

}  // namespace dyadconv::corpus
