#include <gtest/gtest.h>

#include <filesystem>

#include "dyadconv/conceptnet/betweenness.hpp"
#include "dyadconv/random.hpp"
#include "support/oracles.hpp"

namespace cn = dyadconv::conceptnet;
using Sentences = std::vector<cn::Sentence>;

namespace {

cn::Lexicon math_lexicon() {
    auto lex = cn::Lexicon::defaults();
    lex.math_domain = true;
    return lex;
}

cn::ConceptMap graph(std::set<std::string> nodes, std::vector<std::pair<std::string, std::string>> arcs) {
    cn::ConceptMap m;
    m.nodes = std::move(nodes);
    for (auto& a : arcs) m.edges[a] = 1;
    return m;
}

}  // namespace

TEST(Preprocess, GeneralizesOperationsAndNumbers) {
    EXPECT_EQ(cn::preprocess("He adds the numbers.", cn::Lexicon::defaults()), (Sentences{{"add", "number"}}));
    for (const char* w : {"adds", "adding", "added", "add"}) {
        EXPECT_EQ(cn::Lexicon::defaults().generalize(w), "add") << w;
    }
}

TEST(Preprocess, AllDeletedGivesEmptySentence) {
    EXPECT_EQ(cn::preprocess("Yeah okay just...", cn::Lexicon::defaults()), (Sentences{{}}));
    EXPECT_TRUE(cn::preprocess("", cn::Lexicon::defaults()).empty());
}

TEST(Preprocess, MathDomainSymbols) {
    EXPECT_EQ(cn::preprocess("Divide x by 3. Then subtract 5.", math_lexicon()),
              (Sentences{{"divide", "variable", "number"}, {"subtract", "number"}}));
    // without math-domain mode, numerals and letters are kept as words
    EXPECT_EQ(cn::preprocess("Divide x by 3.", cn::Lexicon::defaults()), (Sentences{{"divide", "x", "3"}}));
    EXPECT_EQ(cn::preprocess("x equals 2.5 now", math_lexicon()), (Sentences{{"variable", "equals", "number"}}));
}

TEST(Preprocess, LongestPrefixRuleWins) {
    cn::Lexicon lex;
    lex.thesaurus = {{"mult*", "short"}, {"multipl*", "multiply"}, {"multiple", "exact"}};
    EXPECT_EQ(lex.generalize("multiplying"), "multiply");
    EXPECT_EQ(lex.generalize("multiple"), "exact");
    EXPECT_EQ(lex.generalize("multi"), "short");
    EXPECT_EQ(lex.generalize("other"), "other");
}

TEST(Lexicon, ShippedFilesMatchBuiltInDefaults) {
    const auto loaded = cn::Lexicon::load(DYADCONV_LEXICON_DIR);
    EXPECT_EQ(loaded, cn::Lexicon::defaults());
    EXPECT_THROW(cn::Lexicon::load("/nonexistent/lexicon"), dyadconv::Error);
}

TEST(BuildMap, ForwardLinksOnly) {
    const auto m = cn::build_map(Sentences{{"add", "number"}});
    EXPECT_EQ(m.weight("add", "number"), 1);
    EXPECT_EQ(m.weight("number", "add"), 0);
    EXPECT_EQ(m.edges.size(), 1u);
}

TEST(BuildMap, WindowBound) {
    cn::Sentence s{"first"};
    for (int i = 0; i < 10; ++i) s.push_back("filler");
    s.push_back("far");  // 11 positions after "first"
    const auto m = cn::build_map(Sentences{s});
    EXPECT_EQ(m.weight("first", "far"), 0);
    EXPECT_EQ(m.weight("first", "filler"), 1);
    EXPECT_EQ(m.weight("filler", "far"), 10);
}

TEST(BuildMap, ThreeSentenceExampleMatchesEnumeration) {
    const Sentences s{{"add", "number", "variable"}, {"add", "number"}, {"divide", "number", "add"}};
    const auto m = cn::build_map(s);
    EXPECT_EQ(m.edges, oracle::window_pairs(s, 10, 10));
    EXPECT_EQ(m.weight("number", "add"), 3);
    EXPECT_EQ(m.weight("add", "number"), 2);
    EXPECT_EQ(m.nodes, (std::set<std::string>{"add", "divide", "number", "variable"}));
}

TEST(BuildMap, BlocksAreHardBoundaries) {
    Sentences s(10, cn::Sentence{});
    s[9] = {"left"};
    s.push_back({"right"});
    const auto m = cn::build_map(s);
    EXPECT_TRUE(m.edges.empty());
    EXPECT_EQ(m.nodes.size(), 2u);
    EXPECT_EQ(cn::build_map(s, {10, 11}).weight("left", "right"), 1);
    EXPECT_THROW(cn::build_map(s, {0, 10}), std::invalid_argument);
}

TEST(BuildMap, EdgeMassUpperBound) {
    dyadconv::Rng rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        Sentences s(1 + rng.below(25));
        for (auto& sent : s) {
            sent.resize(rng.below(6));
            for (auto& t : sent) t = std::string(1, static_cast<char>('a' + rng.below(5)));
        }
        const auto m = cn::build_map(s);
        long long bound = 0;
        for (std::size_t b = 0; b < s.size(); b += 10) {
            std::size_t tokens = 0;
            for (std::size_t k = b; k < std::min(s.size(), b + 10); ++k) tokens += s[k].size();
            for (std::size_t k = 0; k < tokens; ++k) bound += static_cast<long long>(std::min<std::size_t>(10, tokens - k - 1));
        }
        EXPECT_LE(m.total_weight(), bound);
        for (const auto& [e, w] : m.edges) {
            EXPECT_NE(e.first, e.second);
            EXPECT_GE(w, 1);
        }
    }
}

TEST(Intersect, Examples) {
    const auto a = cn::build_map(Sentences{{"x", "y", "z"}, {"x", "y"}});
    EXPECT_EQ(cn::intersect(a, a), a);

    cn::ConceptMap ij = graph({"i", "j"}, {{"i", "j"}});
    cn::ConceptMap ji = graph({"i", "j"}, {{"j", "i"}});
    const auto shared = cn::intersect(ij, ji);
    EXPECT_TRUE(shared.edges.empty());
    EXPECT_EQ(shared.nodes, (std::set<std::string>{"i", "j"}));

    ij.edges[{"i", "j"}] = 3;
    cn::ConceptMap ij5 = ij;
    ij5.edges[{"i", "j"}] = 5;
    EXPECT_EQ(cn::intersect(ij, ij5).weight("i", "j"), 3);
}

TEST(MapStats, Examples) {
    const auto empty = cn::map_stats(cn::ConceptMap{});
    EXPECT_EQ(empty.shared_concepts, 0);
    EXPECT_EQ(empty.shared_links, 0);
    EXPECT_EQ(empty.mean_betweenness, 0.0);

    const auto path = cn::map_stats(graph({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}));
    EXPECT_DOUBLE_EQ(path.mean_betweenness, 1.0 / 3.0);
    EXPECT_EQ(cn::betweenness(graph({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}})).at("b"), 1.0);

    const auto star_map = graph({"c", "i1", "i2", "o1", "o2"}, {{"i1", "c"}, {"i2", "c"}, {"c", "o1"}, {"c", "o2"}});
    EXPECT_DOUBLE_EQ(cn::betweenness(star_map).at("c"), 4.0);
    EXPECT_DOUBLE_EQ(cn::map_stats(star_map).mean_betweenness, 4.0 / 5.0);

    auto with_isolated = graph({"a", "b", "lonely"}, {{"a", "b"}});
    with_isolated.edges[{"a", "b"}] = 4;
    const auto st = cn::map_stats(with_isolated);
    EXPECT_EQ(st.shared_concepts, 3);
    EXPECT_EQ(st.isolated_shared_concepts, 1);
    EXPECT_EQ(st.non_isolated_shared_concepts, 2);
    EXPECT_EQ(st.shared_links, 4);
    EXPECT_EQ(st.shared_link_edges, 1);
}

TEST(Betweenness, MatchesPathEnumerationOnSmallDigraphs) {
    dyadconv::Rng rng(13);
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t n = 1 + rng.below(6);
        std::set<std::pair<std::size_t, std::size_t>> arcs;
        cn::ConceptMap m;
        for (std::size_t v = 0; v < n; ++v) m.nodes.insert(std::string(1, static_cast<char>('a' + v)));
        for (std::size_t u = 0; u < n; ++u) {
            for (std::size_t v = 0; v < n; ++v) {
                if (u != v && rng.uniform() < 0.35) {
                    arcs.insert({u, v});
                    m.edges[{std::string(1, static_cast<char>('a' + u)), std::string(1, static_cast<char>('a' + v))}] = 1;
                }
            }
        }
        const auto ref = oracle::betweenness_brute_force(n, arcs);
        const auto got = cn::betweenness(m);
        for (std::size_t v = 0; v < n; ++v) {
            EXPECT_NEAR(got.at(std::string(1, static_cast<char>('a' + v))), ref[v], 1e-9);
        }
    }
}

TEST(WorksheetOverlap, Examples) {
    const auto lex = math_lexicon();
    const auto dialog = cn::build_map(cn::preprocess("Add 3 to both sides. Then divide by x. Simplify the terms.", lex));
    EXPECT_EQ(cn::worksheet_overlap(dialog, dialog).shared_links, cn::map_stats(cn::intersect(dialog, dialog)).shared_links);
    EXPECT_EQ(cn::worksheet_overlap(dialog, dialog).shared_concepts, static_cast<long long>(dialog.nodes.size()));

    const auto other = cn::build_map(cn::preprocess("Pizza tastes great. Football tonight.", lex));
    const auto zero = cn::worksheet_overlap(dialog, other);
    EXPECT_EQ(zero.shared_concepts, 0);
    EXPECT_EQ(zero.shared_links, 0);

    const auto sheet = cn::build_map(cn::preprocess("Divide both sides. Simplify terms.", lex));
    const auto st = cn::worksheet_overlap(dialog, sheet);
    const auto composed = cn::map_stats(cn::intersect(dialog, sheet));
    EXPECT_EQ(st.shared_concepts, composed.shared_concepts);
    EXPECT_EQ(st.shared_links, composed.shared_links);
    EXPECT_EQ(st.mean_betweenness, composed.mean_betweenness);
    std::vector<std::string> common;
    std::set_intersection(dialog.nodes.begin(), dialog.nodes.end(), sheet.nodes.begin(), sheet.nodes.end(),
                          std::back_inserter(common));
    EXPECT_EQ(st.shared_concepts, static_cast<long long>(common.size()));
    EXPECT_GE(st.shared_concepts, 3);
}
