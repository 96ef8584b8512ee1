#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "pm25/random.hpp"
#include "pm25/stats.hpp"

using namespace pm25;

TEST_CASE("RunningStats small cases", "[stats]") {
    RunningStats s;
    CHECK_FALSE(s.mean());
    CHECK_FALSE(s.stddev());
    s.add(10.0);
    CHECK(s.mean() == 10.0);
    CHECK_FALSE(s.stddev(StdKind::Sample));
    CHECK(s.stddev(StdKind::Population) == 0.0);
    s.add(20.0);
    CHECK(s.mean() == 15.0);
    CHECK_THAT(*s.stddev(), Catch::Matchers::WithinRel(7.0710678118654755, 1e-15));
    CHECK(*s.stddev(StdKind::Population) == 5.0);
    CHECK(s.min() == 10.0);
    CHECK(s.max() == 20.0);
}

TEST_CASE("Welford matches two-pass moments", "[stats][property]") {
    Rng rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        const auto n = 2 + rng.below(5000);
        const double offset = rng.uniform(-1000, 1000);
        std::vector<double> v;
        RunningStats s;
        for (std::uint64_t i = 0; i < n; ++i) {
            v.push_back(offset + rng.uniform(0, 100));
            s.add(v.back());
        }
        const auto m = oracle::moments(v);
        REQUIRE(oracle::rel_close(*s.mean(), m.mean, 1e-10));
        REQUIRE(oracle::rel_close(*s.stddev(), *m.sample_std, 1e-10));
    }
}

TEST_CASE("pearson closed-form example", "[stats][pearson]") {
    const std::vector<double> x{1, 2, 3};
    CHECK(pearson(x, x) == 1.0);
    CHECK(pearson(x, std::vector<double>{3, 2, 1}) == -1.0);
    // 3 / sqrt(2 * 14/3)
    CHECK_THAT(*pearson(x, std::vector<double>{1, 2, 4}), Catch::Matchers::WithinRel(3.0 / std::sqrt(28.0 / 3.0), 1e-15));
    CHECK_THAT(*pearson(x, std::vector<double>{1, 2, 4}), Catch::Matchers::WithinAbs(0.98198, 1e-5));
    CHECK_FALSE(pearson(x, std::vector<double>{5, 5, 5}));
    CHECK_FALSE(pearson(std::vector<double>{1}, std::vector<double>{2}));
    CHECK_THROWS_AS(pearson(x, std::vector<double>{1, 2}), std::invalid_argument);
}

TEST_CASE("pearson affine behaviour", "[stats][pearson][property]") {
    Rng rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> a, b;
        for (int i = 0; i < 100; ++i) {
            a.push_back(rng.uniform(0, 10));
            b.push_back(a.back() + rng.uniform(-5, 5));
        }
        const double r = *pearson(a, b);
        const double k = rng.uniform(0.1, 10), c = rng.uniform(-50, 50);
        std::vector<double> pos, neg;
        for (double v : b) {
            pos.push_back(k * v + c);
            neg.push_back(-k * v + c);
        }
        REQUIRE_THAT(*pearson(a, pos), Catch::Matchers::WithinAbs(r, 1e-12));
        REQUIRE_THAT(*pearson(a, neg), Catch::Matchers::WithinAbs(-r, 1e-12));
    }
}
