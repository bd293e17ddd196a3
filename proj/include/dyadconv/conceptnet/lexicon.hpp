#pragma once

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "dyadconv/error.hpp"

namespace dyadconv::conceptnet {

/// One generalization rule: `pattern` is an exact word, or a prefix when it ends in '*'.
struct ThesaurusEntry {
    std::string pattern;
    std::string label;

    [[nodiscard]] bool is_prefix() const { return !pattern.empty() && pattern.back() == '*'; }
    [[nodiscard]] std::string_view stem() const {
        return is_prefix() ? std::string_view(pattern).substr(0, pattern.size() - 1) : std::string_view(pattern);
    }
    bool operator==(const ThesaurusEntry&) const = default;
};

struct Lexicon {
    std::set<std::string> pronouns;
    std::set<std::string> prepositions;
    std::set<std::string> noise_verbs;
    std::set<std::string> delete_list;
    std::vector<ThesaurusEntry> thesaurus;
    /// Map numerals to "number" and single letters to "variable".
    bool math_domain = false;

    [[nodiscard]] bool is_noise(const std::string& w) const {
        return pronouns.contains(w) || prepositions.contains(w) || noise_verbs.contains(w);
    }

    /// Concept label for a word: exact rule, else longest matching prefix rule, else the word itself.
    [[nodiscard]] std::string generalize(const std::string& w) const {
        const ThesaurusEntry* best = nullptr;
        for (const auto& e : thesaurus) {
            if (!e.is_prefix()) {
                if (e.pattern == w) return e.label;
                continue;
            }
            const auto stem = e.stem();
            if (w.size() >= stem.size() && std::string_view(w).substr(0, stem.size()) == stem) {
                if (!best || stem.size() > best->stem().size()) best = &e;
            }
        }
        return best ? best->label : w;
    }

    bool operator==(const Lexicon&) const = default;

    static Lexicon defaults();
    static Lexicon load(const std::filesystem::path& directory, bool math_domain = false);
};

namespace detail {

inline std::vector<std::string> data_lines(std::string_view text) {
    std::vector<std::string> out;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto b = line.find_first_not_of(" \t");
        if (b == std::string::npos || line[b] == '#') continue;
        const auto e = line.find_last_not_of(" \t");
        out.push_back(line.substr(b, e - b + 1));
    }
    return out;
}

inline std::set<std::string> parse_word_list(std::string_view text) {
    std::set<std::string> out;
    for (auto& w : data_lines(text)) {
        std::transform(w.begin(), w.end(), w.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        out.insert(std::move(w));
    }
    return out;
}

inline std::vector<ThesaurusEntry> parse_thesaurus(std::string_view text) {
    std::vector<ThesaurusEntry> out;
    std::size_t line_no = 0;
    for (const auto& line : data_lines(text)) {
        ++line_no;
        std::istringstream fields(line);
        ThesaurusEntry e;
        std::string extra;
        if (!(fields >> e.pattern >> e.label) || (fields >> extra)) {
            throw SchemaError("thesaurus entry " + std::to_string(line_no) + ": expected 'pattern label'");
        }
        out.push_back(std::move(e));
    }
    return out;
}

inline std::string read_text(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw Error("cannot open lexicon file " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Built-in copies of data/lexicon/*.txt.
inline constexpr std::string_view kPronouns =
    "i\nme\nmy\nmine\nmyself\nyou\nyour\nyours\nyourself\nyourselves\nhe\nhim\nhis\nhimself\nshe\nher\nhers\n"
    "herself\nit\nits\nitself\nwe\nus\nour\nours\nourselves\nthey\nthem\ntheir\ntheirs\nthemselves\nthis\nthat\n"
    "these\nthose\nwho\nwhom\nwhose\nwhich\nwhat\n";
inline constexpr std::string_view kPrepositions =
    "on\nbut\ntill\nin\nat\nby\nfor\nfrom\nof\nto\nwith\nabout\nabove\nacross\nafter\nagainst\nalong\namong\n"
    "around\nbefore\nbehind\nbelow\nbeneath\nbeside\nbetween\nbeyond\ndown\nduring\nexcept\ninside\ninto\nnear\n"
    "off\nonto\nout\noutside\nover\npast\nsince\nthrough\nthroughout\ntoward\ntowards\nunder\nuntil\nup\nupon\n"
    "within\nwithout\n";
inline constexpr std::string_view kNoiseVerbs = "is\nam\nare\nwas\nwere\nbe\nbeen\nbeing\ndo\ndoes\ndid\nhave\nhas\nhad\n";
inline constexpr std::string_view kDeleteList =
    "a\nan\nthe\nand\nor\nso\nthen\nyeah\nyes\nokay\nok\njust\num\nuh\nhmm\nmm\noh\nwell\nlike\nno\nnot\nright\n"
    "alright\nreally\nvery\nalso\ntoo\nnow\nhere\nthere\ncan\nwill\nwould\ncould\nshould\ngonna\nwanna\ngot\nget\n"
    "let\nlets\nim\nthats\ndont\nits\n";
inline constexpr std::string_view kThesaurus =
    "add add\nadds add\nadding add\nadded add\naddition add\nsubtract* subtract\ndivid* divide\ndivision divide\n"
    "multipl* multiply\ntimes multiply\nnumber number\nnumbers number\nvariable variable\nvariables variable\n"
    "equation* equation\n";

}  // namespace detail

inline Lexicon Lexicon::defaults() {
    Lexicon lex;
    lex.pronouns = detail::parse_word_list(detail::kPronouns);
    lex.prepositions = detail::parse_word_list(detail::kPrepositions);
    lex.noise_verbs = detail::parse_word_list(detail::kNoiseVerbs);
    lex.delete_list = detail::parse_word_list(detail::kDeleteList);
    lex.thesaurus = detail::parse_thesaurus(detail::kThesaurus);
    return lex;
}

/// Load pronouns.txt, prepositions.txt, noise_verbs.txt, delete_list.txt and thesaurus.txt from a directory.
inline Lexicon Lexicon::load(const std::filesystem::path& directory, bool math_domain) {
    Lexicon lex;
    lex.pronouns = detail::parse_word_list(detail::read_text(directory / "pronouns.txt"));
    lex.prepositions = detail::parse_word_list(detail::read_text(directory / "prepositions.txt"));
    lex.noise_verbs = detail::parse_word_list(detail::read_text(directory / "noise_verbs.txt"));
    lex.delete_list = detail::parse_word_list(detail::read_text(directory / "delete_list.txt"));
    lex.thesaurus = detail::parse_thesaurus(detail::read_text(directory / "thesaurus.txt"));
    lex.math_domain = math_domain;
    return lex;
}

}  // namespace dyadconv::conceptnet
