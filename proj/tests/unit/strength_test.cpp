#include <gtest/gtest.h>

#include <string>

#include "dyadconv/paraling/features.hpp"
#include "dyadconv/tsa/strength.hpp"

namespace tsa = dyadconv::tsa;
using dyadconv::paraling::FeatureKind;

using Stats = std::map<std::pair<FeatureKind, std::string>, double>;

TEST(ConvergenceStrength, EndpointsAfterNegation) {
    const Stats s{{{FeatureKind::words, "s1"}, -5.0}, {{FeatureKind::words, "s2"}, -1.0},
                  {{FeatureKind::words, "s3"}, -3.0}};
    const auto out = tsa::convergence_strength(s);
    EXPECT_DOUBLE_EQ(out.at("s1").scaled.at(FeatureKind::words), 1.0);  // most negative
    EXPECT_DOUBLE_EQ(out.at("s2").scaled.at(FeatureKind::words), 0.0);
    EXPECT_DOUBLE_EQ(out.at("s3").scaled.at(FeatureKind::words), 0.5);
}

TEST(ConvergenceStrength, CompositeIsMeanOfPresentFeatures) {
    // s1: words scaled 0.2, laughter scaled 0.8; the other sessions pin the ranges
    const Stats s{{{FeatureKind::words, "s1"}, -2.0}, {{FeatureKind::words, "lo"}, 0.0},
                  {{FeatureKind::words, "hi"}, -10.0}, {{FeatureKind::laughter, "s1"}, -8.0},
                  {{FeatureKind::laughter, "lo"}, 0.0}, {{FeatureKind::laughter, "hi"}, -10.0}};
    const auto out = tsa::convergence_strength(s);
    EXPECT_NEAR(out.at("s1").scaled.at(FeatureKind::words), 0.2, 1e-12);
    EXPECT_NEAR(out.at("s1").scaled.at(FeatureKind::laughter), 0.8, 1e-12);
    EXPECT_NEAR(out.at("s1").composite, 0.5, 1e-12);
    for (const auto& [k, v] : out) {
        EXPECT_GE(v.composite, 0.0);
        EXPECT_LE(v.composite, 1.0);
    }
}

TEST(ConvergenceStrength, InvariantUnderPositiveAffineRescalingPerFeature) {
    Stats s;
    const std::vector<double> w{-4.1, -2.2, -0.5, -3.3}, m{-1.0, -6.0, -2.5, -2.0};
    for (std::size_t i = 0; i < w.size(); ++i) {
        s[{FeatureKind::words, "s" + std::to_string(i)}] = w[i];
        s[{FeatureKind::message_density, "s" + std::to_string(i)}] = m[i];
    }
    const auto base = tsa::convergence_strength(s);
    Stats rescaled = s;
    for (auto& [k, v] : rescaled) {
        if (k.first == FeatureKind::words) v = 2.5 * v - 7.0;
    }
    const auto out = tsa::convergence_strength(rescaled);
    for (const auto& [session, score] : base) EXPECT_NEAR(out.at(session).composite, score.composite, 1e-12);
}

TEST(ConvergenceStrength, ZeroRangeIsAnError) {
    const Stats s{{{FeatureKind::overlaps, "s1"}, -2.0}, {{FeatureKind::overlaps, "s2"}, -2.0}};
    try {
        tsa::convergence_strength(s);
        FAIL();
    } catch (const dyadconv::DegenerateSeriesError& e) {
        EXPECT_NE(std::string(e.what()).find("overlaps"), std::string::npos);
    }
}
