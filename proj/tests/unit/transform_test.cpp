#include <gtest/gtest.h>

#include <numeric>

#include "dyadconv/random.hpp"
#include "dyadconv/tsa/transform.hpp"

namespace tsa = dyadconv::tsa;

TEST(Difference, Examples) {
    const std::vector<double> a{1, 2, 3};
    EXPECT_EQ(tsa::difference(a, a, 0).values, (std::vector<double>{0, 0, 0}));
    EXPECT_EQ(tsa::difference(a, std::vector<double>{0, 1, 2}, 0).values, (std::vector<double>{1, 1, 1}));
    // lag 1: [a1 - b0, a2 - b1] = [2 - 9, 3 - 1]
    const auto lagged = tsa::difference(a, std::vector<double>{9, 1, 2}, 1);
    EXPECT_EQ(lagged.values, (std::vector<double>{-7, 2}));
    EXPECT_EQ(lagged.lag, 1u);
    EXPECT_EQ(tsa::difference(a, std::vector<double>{0, 0, 0}, 2).values.size(), 1u);
    EXPECT_THROW(tsa::difference(a, std::vector<double>{1, 2}, 0), std::invalid_argument);
    EXPECT_THROW(tsa::difference(a, a, 3), std::invalid_argument);
}

TEST(Detrend, Examples) {
    for (double v : tsa::detrend(std::vector<double>{1, 2, 3})) EXPECT_NEAR(v, 0.0, 1e-12);
    for (double v : tsa::detrend(std::vector<double>{4, 4, 4, 4})) EXPECT_NEAR(v, 0.0, 1e-12);
    // fit through (0,0), (1,0), (2,3): slope 1.5, intercept -0.5
    const auto r = tsa::detrend(std::vector<double>{0, 0, 3});
    EXPECT_NEAR(r[0], 0.5, 1e-12);
    EXPECT_NEAR(r[1], -1.0, 1e-12);
    EXPECT_NEAR(r[2], 0.5, 1e-12);
    EXPECT_THROW(tsa::detrend(std::vector<double>{1, 2}), std::invalid_argument);
}

TEST(Detrend, ResidualsOrthogonalToTimeAndMeanFree) {
    dyadconv::Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> y(3 + rng.below(100));
        for (std::size_t t = 0; t < y.size(); ++t) y[t] = 5.0 + 0.3 * static_cast<double>(t) + rng.normal();
        const auto r = tsa::detrend(y);
        double mean = 0.0, cov = 0.0;
        for (std::size_t t = 0; t < r.size(); ++t) {
            mean += r[t];
            cov += r[t] * static_cast<double>(t);
        }
        EXPECT_NEAR(mean / static_cast<double>(r.size()), 0.0, 1e-9);
        EXPECT_NEAR(cov / static_cast<double>(r.size()), 0.0, 1e-9);
    }
}

TEST(Smooth, Examples) {
    const std::vector<double> c{2, 2, 2, 2, 2};
    EXPECT_EQ(tsa::smooth(c, 3), c);
    EXPECT_EQ(tsa::smooth(std::vector<double>{0, 3, 0}, 3), (std::vector<double>{1.5, 1.0, 1.5}));
    const std::vector<double> x{1, -4, 9, 2.5};
    EXPECT_EQ(tsa::smooth(x, 1), x);
    EXPECT_EQ(tsa::smooth(x, 5).size(), x.size());
    EXPECT_THROW(tsa::smooth(x, 2), std::invalid_argument);
    EXPECT_THROW(tsa::smooth(x, 0), std::invalid_argument);
}
