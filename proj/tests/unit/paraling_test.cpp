#include <gtest/gtest.h>

#include "dyadconv/paraling/features.hpp"
#include "dyadconv/random.hpp"
#include "dyadconv/synth/generators.hpp"
#include "support/oracles.hpp"

namespace dc = dyadconv::corpus;
namespace pl = dyadconv::paraling;

namespace {

dc::Session make_session(double duration, std::vector<dc::Utterance> utts) {
    dc::Session s;
    s.dyad_id = "d";
    s.speakers = {dc::Speaker{"A", "f"}, dc::Speaker{"B", "m"}};
    s.duration = duration;
    std::stable_sort(utts.begin(), utts.end(), [](const auto& a, const auto& b) { return a.start < b.start; });
    s.utterances = std::move(utts);
    dc::validate(s);
    return s;
}

dc::Utterance utt(std::string who, double start, double end, std::string text, std::optional<int> clauses = {},
                  int laughter = -1) {
    dc::Utterance u;
    u.speaker = std::move(who);
    u.start = start;
    u.end = end;
    u.text = std::move(text);
    u.clause_count = clauses;
    u.laughter_count = laughter >= 0 ? laughter : dc::count_laughter_markers(u.text);
    return u;
}

const dc::Slice kFirst{0, 0.0, 30.0};

}  // namespace

TEST(WordCount, Examples) {
    const auto s = make_session(60, {utt("A", 1, 3, "hello world")});
    EXPECT_EQ(pl::word_count(s, kFirst, "A"), 2);
    EXPECT_EQ(pl::word_count(s, kFirst, "B"), 0);
    EXPECT_EQ(pl::word_count(s, dc::Slice{1, 30, 60}, "A"), 0);

    // ten words over [20, 40): half the duration lies in each slice
    const auto straddle = make_session(60, {utt("A", 20, 40, "a b c d e f g h i j")});
    EXPECT_EQ(pl::word_count(straddle, kFirst, "A"), 5);
    EXPECT_EQ(pl::word_count(straddle, dc::Slice{1, 30, 60}, "A"), 5);
}

TEST(MessageDensity, Examples) {
    const auto s = make_session(30, {utt("A", 0, 2, "one.", 1), utt("A", 20, 22, "two. three.", 2)});
    EXPECT_DOUBLE_EQ(pl::message_density(s, kFirst, "A"), 0.15);

    const auto single = make_session(30, {utt("A", 3, 5, "one. two.")});
    EXPECT_EQ(pl::message_density(single, kFirst, "A"), 0.0);

    const auto four = make_session(30, {utt("A", 2, 4, "a. b.", 2), utt("A", 27, 29, "c; d", 2)});
    EXPECT_DOUBLE_EQ(pl::message_density(four, kFirst, "A"), 0.16);
}

TEST(ContentDensity, Examples) {
    EXPECT_DOUBLE_EQ(pl::content_density(make_session(30, {utt("A", 0, 1, "go now.")}), kFirst, "A"), 6.0);
    EXPECT_EQ(pl::content_density(make_session(30, {utt("A", 0, 1, "hm", 0)}), kFirst, "A"), 0.0);
    EXPECT_DOUBLE_EQ(
        pl::content_density(make_session(30, {utt("A", 0, 1, "abcdefghij abcdefghij abcdefghij", 3)}), kFirst, "A"),
        10.0);
    // markers are not characters
    EXPECT_DOUBLE_EQ(pl::content_density(make_session(30, {utt("A", 0, 1, "go now. [laughter]")}), kFirst, "A"), 6.0);
}

TEST(OverlapCount, Examples) {
    EXPECT_EQ(pl::overlap_count(make_session(30, {utt("A", 0, 5, "x"), utt("B", 3, 8, "y")}), kFirst), 1);
    EXPECT_EQ(pl::overlap_count(make_session(30, {utt("A", 0, 5, "x"), utt("B", 5, 8, "y")}), kFirst), 0);
    EXPECT_EQ(pl::overlap_count(
                  make_session(30, {utt("A", 0, 10, "x"), utt("B", 2, 4, "y"), utt("B", 6, 8, "z")}), kFirst),
              oracle::overlap_runs({{0, 10}}, {{2, 4}, {6, 8}}, 0, 30));
    EXPECT_EQ(pl::overlap_count(
                  make_session(30, {utt("A", 0, 10, "x"), utt("B", 2, 4, "y"), utt("B", 6, 8, "z")}), kFirst),
              2);
}

TEST(OverlapCount, MatchesGridOracleAndIsSymmetric) {
    dyadconv::Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<dc::Utterance> u;
        std::vector<std::pair<double, double>> ia, ib;
        const int k = 1 + static_cast<int>(rng.below(6));
        for (int i = 0; i < k; ++i) {
            // integer endpoints keep the grid oracle exact
            const double s = static_cast<double>(rng.below(40));
            const double e = std::min(60.0, s + 1 + static_cast<double>(rng.below(12)));
            const bool a = rng.uniform() < 0.5;
            u.push_back(utt(a ? "A" : "B", s, e, "w"));
            (a ? ia : ib).emplace_back(s, e);
        }
        const auto s = make_session(60, u);
        for (const auto& slice : dc::segment(s)) {
            auto clip = [&](const std::vector<std::pair<double, double>>& v) {
                std::vector<std::pair<double, double>> out;
                for (auto [lo, hi] : v) out.emplace_back(std::max(lo, slice.begin), std::min(hi, slice.end));
                return out;
            };
            EXPECT_EQ(pl::overlap_count(s, slice), oracle::overlap_runs(clip(ia), clip(ib), slice.begin, slice.end));
        }
        // relabel A <-> B
        auto swapped = s;
        std::swap(swapped.speakers[0], swapped.speakers[1]);
        for (const auto& slice : dc::segment(s)) EXPECT_EQ(pl::overlap_count(s, slice), pl::overlap_count(swapped, slice));
    }
}

TEST(LaughterCount, Examples) {
    EXPECT_EQ(pl::laughter_count(make_session(30, {utt("A", 0, 1, "ha [laughter]")}), kFirst, "A"), 1);
    EXPECT_EQ(pl::laughter_count(make_session(30, {utt("A", 0, 1, "ha")}), kFirst, "A"), 0);
    EXPECT_EQ(pl::laughter_count(make_session(30, {utt("A", 0, 1, "x", {}, 1), utt("A", 2, 3, "y", {}, 2)}), kFirst, "A"),
              3);
    // attributed to the slice holding the onset only
    const auto s = make_session(60, {utt("A", 25, 40, "long [laughter]")});
    EXPECT_EQ(pl::laughter_count(s, kFirst, "A"), 1);
    EXPECT_EQ(pl::laughter_count(s, dc::Slice{1, 30, 60}, "A"), 0);
}

TEST(ExtractSeries, ShapesAndEmptySession) {
    dyadconv::synth::SessionSpec spec;
    spec.series.n_slices = 120;
    const auto s = dyadconv::synth::gen_session(spec);
    const auto f = pl::extract_series(s);
    EXPECT_EQ(f.series.size(), 10u);
    for (const auto& [key, series] : f.series) EXPECT_EQ(series.values.size(), 120u);

    const auto empty = make_session(0, {});
    const auto fe = pl::extract_series(empty);
    EXPECT_EQ(fe.series.size(), 10u);
    for (const auto& [key, series] : fe.series) EXPECT_TRUE(series.values.empty());
}

TEST(ExtractSeries, HandBuiltThreeSliceSession) {
    // slice 0: A 2 utterances, B 1; slice 1: A straddles into slice 2; slice 2 is partial (75 s)
    const auto s = make_session(75, {utt("A", 0, 4, "one two. three", 2), utt("A", 10, 12, "four five.", 1),
                                     utt("B", 3, 6, "yes [laughter]"), utt("A", 50, 70, "a b c d e f g h i j k l."),
                                     utt("B", 55, 75, "p q.")});
    const auto f = pl::extract_series(s);
    ASSERT_EQ(f.slices.size(), 3u);
    const auto& words_a = f.get("A", pl::FeatureKind::words).values;
    // A: 5 words in slice 0; the 12-word utterance [50,70) is 10/20 in slice 1 and 10/20 in slice 2
    EXPECT_EQ(words_a, (std::vector<double>{5, 6, 6}));
    const auto& words_b = f.get("B", pl::FeatureKind::words).values;
    // B's 2-word utterance [55,75): 5/20 -> cumulative round(0.5)=1 in slice 1, the remaining 1 in slice 2
    EXPECT_EQ(words_b, (std::vector<double>{1, 1, 1}));
    EXPECT_DOUBLE_EQ(f.get("A", pl::FeatureKind::message_density).values[0], 3.0 / 10.0);
    EXPECT_DOUBLE_EQ(f.get("A", pl::FeatureKind::content_density).values[0], 21.0 / 3.0);
    EXPECT_EQ(f.get("A", pl::FeatureKind::overlaps).values, (std::vector<double>{1, 1, 1}));
    EXPECT_EQ(f.get("B", pl::FeatureKind::overlaps).values, (std::vector<double>{1, 1, 1}));
    EXPECT_EQ(f.get("B", pl::FeatureKind::laughter).values, (std::vector<double>{1, 0, 0}));
    for (std::size_t i = 0; i < 3; ++i) {
        const auto v = pl::features(s, f.slices[i], "A");
        EXPECT_EQ(v.words, words_a[i]);
        EXPECT_EQ(v.message_density, f.get("A", pl::FeatureKind::message_density).values[i]);
    }
}

TEST(Features, NonNegativeAndConserveWords) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        dyadconv::synth::SessionSpec spec;
        spec.series.seed = seed;
        spec.series.n_slices = 30;
        const auto s = dyadconv::synth::gen_session(spec);
        const auto f = pl::extract_series(s);
        for (const auto& [key, series] : f.series) {
            for (double v : series.values) EXPECT_GE(v, 0.0);
        }
        for (const auto& sp : s.speakers) {
            long long total = 0;
            for (const auto& u : s.utterances) {
                if (u.speaker == sp.id) total += dc::word_count(u.text);
            }
            double sum = 0;
            for (double v : f.get(sp.id, pl::FeatureKind::words).values) sum += v;
            EXPECT_EQ(static_cast<long long>(sum), total);
        }
    }
}
