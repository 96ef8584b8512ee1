#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "pm25/analytics.hpp"
#include "pm25/random.hpp"

using namespace pm25;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const Timestamp kStart = Timestamp::from_civil(2023, 3, 1, 10);  // 12:00 local

TimeSeries minutes(const std::vector<double>& values, Timestamp start = kStart) {
    std::vector<Point> pts;
    for (std::size_t i = 0; i < values.size(); ++i) {
        pts.push_back({start + std::chrono::minutes{static_cast<long>(i)}, values[i]});
    }
    return TimeSeries::build(pts, Resolution::Minute).series;
}

TimeSeries daily(const std::vector<double>& values, Timestamp start = Timestamp::from_civil(2023, 1, 1)) {
    std::vector<Point> pts;
    for (std::size_t i = 0; i < values.size(); ++i) {
        pts.push_back({start + std::chrono::days{static_cast<long>(i)}, values[i]});
    }
    return TimeSeries::build(pts, Resolution::Day).series;
}

}  // namespace

TEST_CASE("resample to hours", "[analytics][resample]") {
    const auto flat = resample(minutes(std::vector<double>(60, 10.0)), Resolution::Hour);
    REQUIRE(flat.size() == 1);
    CHECK(flat[0].value == 10.0);
    CHECK(flat[0].time == kStart);
    CHECK(flat.resolution() == Resolution::Hour);

    std::vector<double> ramp;
    for (int i = 1; i <= 60; ++i) ramp.push_back(i);
    CHECK(resample(minutes(ramp), Resolution::Hour)[0].value == 30.5);

    CHECK(resample(minutes(std::vector<double>(30, 1.0)), Resolution::Hour).empty());
    CHECK(resample(minutes(std::vector<double>(45, 1.0)), Resolution::Hour).size() == 1);
    CHECK(resample(minutes(std::vector<double>(44, 1.0)), Resolution::Hour).empty());

    AggConfig lax;
    lax.hour_completeness = 0.5;
    CHECK(resample(minutes(std::vector<double>(30, 1.0)), Resolution::Hour, lax).size() == 1);
}

TEST_CASE("resample to local days", "[analytics][resample]") {
    // 24 hourly values starting at local midnight (22:00 UTC the day before).
    std::vector<Point> pts;
    const auto local_midnight = Timestamp::from_civil(2023, 2, 28, 22);
    for (int h = 0; h < 24; ++h) pts.push_back({local_midnight + std::chrono::hours{h}, double(h)});
    const auto hourly = TimeSeries::build(pts, Resolution::Hour).series;
    const auto d = resample(hourly, Resolution::Day);
    REQUIRE(d.size() == 1);
    CHECK(d[0].time == local_midnight);
    CHECK(d[0].value == 11.5);
    CHECK(civil_date(d[0].time, 2) == std::chrono::year_month_day{std::chrono::year{2023}, std::chrono::March, std::chrono::day{1}});
}

TEST_CASE("resample preconditions", "[analytics][resample]") {
    const auto d = daily({1, 2});
    CHECK_THROWS_AS(resample(d, Resolution::Hour), std::invalid_argument);
    CHECK_THROWS_AS(resample(d, Resolution::Day), std::invalid_argument);
    AggConfig bad;
    bad.hour_completeness = 0.0;
    CHECK_THROWS_AS(resample(minutes({1}), Resolution::Hour, bad), std::invalid_argument);
    CHECK(resample(TimeSeries{}, Resolution::Hour).empty());
}

TEST_CASE("resample matches a brute-force group-by", "[analytics][resample][property]") {
    Rng rng(101);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Point> pts;
        const auto n = 1 + rng.below(10000);
        const std::int64_t t0 = 1'660'000'000 + static_cast<std::int64_t>(rng.below(100000)) * 60;
        std::int64_t t = t0;
        for (std::uint64_t i = 0; i < n; ++i) {
            t += 60 * static_cast<std::int64_t>(1 + (rng.below(10) == 0 ? rng.below(5) : 0));
            pts.push_back({Timestamp::from_epoch_seconds(t), rng.uniform(0, 200)});
        }
        const auto ts = TimeSeries::build(pts, Resolution::Minute).series;
        for (auto target : {Resolution::Hour, Resolution::Day}) {
            AggConfig cfg;
            const auto got = resample(ts, target, cfg);
            const std::int64_t bucket = target == Resolution::Hour ? 3600 : 86400;
            const std::int64_t offset = target == Resolution::Day ? 7200 : 0;
            const double completeness = target == Resolution::Hour ? cfg.hour_completeness : cfg.day_completeness;
            const auto want = oracle::resample(ts, bucket, offset, completeness, 60);
            REQUIRE(got.size() == want.size());
            std::size_t i = 0;
            for (const auto& [start, mean] : want) {
                REQUIRE(got[i].time.epoch_seconds() == start);
                REQUIRE(oracle::rel_close(got[i].value, mean, 1e-12));
                ++i;
            }
        }
    }
}

TEST_CASE("aggregate means stay inside their bucket range", "[analytics][resample][property]") {
    Rng rng(5);
    std::vector<double> v;
    for (int i = 0; i < 6000; ++i) v.push_back(rng.uniform(0, 100));
    const auto ts = minutes(v);
    const auto hourly = resample(ts, Resolution::Hour);
    for (const auto& p : hourly.points()) {
        double lo = 1e300, hi = -1e300;
        for (const auto& q : ts.points()) {
            if (q.time >= p.time && q.time < p.time + std::chrono::hours{1}) {
                lo = std::min(lo, q.value);
                hi = std::max(hi, q.value);
            }
        }
        REQUIRE(p.value >= lo);
        REQUIRE(p.value <= hi);
    }
}

TEST_CASE("diurnal_profile examples", "[analytics][diurnal]") {
    std::vector<Point> pts;
    const auto t0 = Timestamp::from_civil(2023, 3, 1, 0);
    for (int h = 0; h < 72; ++h) pts.push_back({t0 + std::chrono::hours{h}, 12.0});
    const auto constant = diurnal_profile(TimeSeries::build(pts, Resolution::Hour).series);
    for (const auto& h : constant.hours) {
        CHECK(h.mean == 12.0);
        CHECK(h.std == 0.0);
        CHECK(h.count == 3);
    }

    // 06:00 UTC is 08:00 local.
    std::vector<Point> eight;
    eight.push_back({Timestamp::from_civil(2023, 3, 1, 6), 10.0});
    eight.push_back({Timestamp::from_civil(2023, 3, 2, 6), 20.0});
    const auto p = diurnal_profile(TimeSeries::build(eight, Resolution::Hour).series);
    for (std::size_t h = 0; h < 24; ++h) {
        if (h == 8) continue;
        CHECK(p.hours[h].count == 0);
        CHECK_FALSE(p.hours[h].mean);
    }
    CHECK(p.hours[8].count == 2);
    CHECK(p.hours[8].mean == 15.0);
    CHECK_THAT(*p.hours[8].std, WithinAbs(7.0711, 1e-4));

    AggConfig pop;
    pop.std_kind = StdKind::Population;
    CHECK(diurnal_profile(TimeSeries::build(eight, Resolution::Hour).series, pop).hours[8].std == 5.0);

    const auto empty = diurnal_profile(TimeSeries::build({}, Resolution::Hour).series);
    for (const auto& h : empty.hours) CHECK(h.count == 0);

    CHECK_THROWS_AS(diurnal_profile(minutes({1.0})), std::invalid_argument);
}

TEST_CASE("diurnal_profile matches a brute-force group-by", "[analytics][diurnal][property]") {
    Rng rng(55);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Point> pts;
        const auto n = 1 + rng.below(3000);
        for (std::uint64_t i = 0; i < n; ++i) {
            pts.push_back({Timestamp::from_epoch_seconds(1'650'000'000 + static_cast<std::int64_t>(rng.below(20000)) * 3600),
                           rng.uniform(0, 90)});
        }
        const auto ts = TimeSeries::build(pts, Resolution::Hour).series;
        const auto got = diurnal_profile(ts);
        const auto want = oracle::diurnal(ts, 2);
        for (std::size_t h = 0; h < 24; ++h) {
            REQUIRE(got.hours[h].count == want[h].n);
            if (want[h].n == 0) continue;
            REQUIRE(oracle::rel_close(*got.hours[h].mean, want[h].mean, 1e-12));
            if (want[h].sample_std) REQUIRE(oracle::rel_close(*got.hours[h].std, *want[h].sample_std, 1e-10));
        }
    }
}

TEST_CASE("seasonal_summary examples", "[analytics][seasonal]") {
    std::vector<double> july(31, 40.0);
    const auto s = seasonal_summary(daily(july, Timestamp::from_civil(2023, 6, 30, 22)));
    CHECK(s[Season::LongDry].count == 31);
    CHECK(s[Season::ShortWet].count == 0);
    CHECK(s[Season::ShortDry].count == 0);
    CHECK(s[Season::LongWet].count == 0);

    const auto year = seasonal_summary(daily(std::vector<double>(365, 20.0), Timestamp::from_civil(2022, 12, 31, 22)));
    std::size_t total = 0;
    for (auto season : {Season::LongDry, Season::ShortWet, Season::ShortDry, Season::LongWet}) {
        CHECK(year[season].mean == 20.0);
        total += year[season].count;
    }
    CHECK(total == 365);

    std::vector<Point> mixed = {
        {Timestamp::from_civil(2023, 7, 1, 22), 30.0},
        {Timestamp::from_civil(2023, 7, 2, 22), 40.0},
        {Timestamp::from_civil(2023, 4, 1, 22), 10.0},
        {Timestamp::from_civil(2023, 4, 2, 22), 20.0},
    };
    const auto m = seasonal_summary(TimeSeries::build(mixed, Resolution::Day).series);
    CHECK(m[Season::LongDry].mean == 35.0);
    CHECK(m[Season::LongWet].mean == 15.0);
}

TEST_CASE("seasonal_summary matches a brute-force group-by", "[analytics][seasonal][property]") {
    Rng rng(77);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Point> pts;
        const auto n = 1 + rng.below(1500);
        for (std::uint64_t i = 0; i < n; ++i) {
            const auto day_index = static_cast<std::int64_t>(rng.below(1500));
            pts.push_back({Timestamp::from_epoch_seconds(1'640'000'000 + day_index * 86400 - 7200), rng.uniform(0, 90)});
        }
        const auto ts = TimeSeries::build(pts, Resolution::Day).series;
        const auto got = seasonal_summary(ts);
        const auto want = oracle::seasonal(ts, 2);
        std::size_t total = 0;
        for (std::size_t s = 0; s < 4; ++s) {
            total += got.seasons[s].count;
            REQUIRE(got.seasons[s].count == want[s].n);
            if (want[s].n) REQUIRE(oracle::rel_close(*got.seasons[s].mean, want[s].mean, 1e-12));
        }
        REQUIRE(total == ts.size());
    }
}

TEST_CASE("monthly_means groups by local month", "[analytics][monthly]") {
    const auto m = monthly_means(daily({10, 20, 30}, Timestamp::from_civil(2023, 1, 29, 22)));
    REQUIRE(m.size() == 2);
    CHECK(m[0].month == 1);
    CHECK(m[0].mean == 15.0);
    CHECK(m[1].month == 2);
    CHECK(m[1].mean == 30.0);
    CHECK_FALSE(m[1].std);
}

TEST_CASE("annual_mean", "[analytics][annual]") {
    const auto a = annual_mean(daily(std::vector<double>(365, 28.3)));
    CHECK_THAT(a.mean, WithinRel(28.3, 1e-12));
    CHECK(a.coverage == 1.0);

    const auto one = annual_mean(daily({42.0}));
    CHECK(one.mean == 42.0);
    CHECK(one.coverage == 1.0);

    CHECK(annual_mean(daily({10, 30})).mean == 20.0);
    CHECK(annual_mean(daily({10, 30})).coverage == 1.0);

    std::vector<Point> gappy = {{Timestamp::from_civil(2023, 1, 1), 10.0}, {Timestamp::from_civil(2023, 1, 4), 20.0}};
    CHECK(annual_mean(TimeSeries::build(gappy, Resolution::Day).series).coverage == 0.5);

    CHECK_THROWS_AS(annual_mean(daily({})), std::invalid_argument);
}

TEST_CASE("exceedance is strict", "[analytics][exceedance]") {
    CHECK(exceedance(daily({30, 30, 30})).fraction == 1.0);
    CHECK(exceedance(daily({25, 25})).days_over == 0);
    const auto r = exceedance(daily({20, 26, 30}), 25.0);
    CHECK(r.days_over == 2);
    CHECK(r.days_total == 3);
    CHECK(r.fraction == 2.0 / 3.0);
    CHECK(exceedance(daily({})).fraction == 0.0);
    CHECK_THROWS_AS(exceedance(daily({1}), 0.0), std::invalid_argument);
}

TEST_CASE("pearson on aligned pairs", "[analytics][pearson]") {
    AlignedPair p;
    p.timestamps = {Timestamp::from_epoch_seconds(0), Timestamp::from_epoch_seconds(1), Timestamp::from_epoch_seconds(2)};
    p.a_values = {1, 2, 3};
    p.b_values = {1, 2, 3};
    CHECK(pearson(p) == 1.0);
    p.b_values = {3, 2, 1};
    CHECK(pearson(p) == -1.0);
    p.b_values = {1, 2, 4};
    CHECK_THAT(*pearson(p), WithinAbs(0.98198, 1e-5));
    p.b_values = {2, 2, 2};
    CHECK_FALSE(pearson(p));
}

TEST_CASE("correlation_matrix", "[analytics][correlation]") {
    const auto a = daily({1, 5, 2, 8, 3});
    std::vector<double> lin;
    for (const auto& p : a.points()) lin.push_back(2 * p.value + 1);
    const auto b = daily(lin);
    const auto far = daily({1, 2, 3}, Timestamp::from_civil(2030, 1, 1));

    const auto m = correlation_matrix({{"a", a}, {"b", b}, {"far", far}});
    REQUIRE(m.size() == 3);
    CHECK(m.labels == std::vector<std::string>{"a", "b", "far"});
    CHECK(m.r[0][1] == 1.0);
    CHECK(m.r[1][0] == 1.0);
    CHECK_FALSE(m.r[0][2]);
    CHECK_FALSE(m.r[2][1]);
    CHECK(m.r[2][2] == 1.0);
    CHECK(m.overlap[0][1] == 5);
    CHECK(m.overlap[0][2] == 0);

    const auto same = correlation_matrix({{"x", a}, {"y", a}});
    CHECK(same.r[0][1] == 1.0);

    CHECK_THROWS_AS(correlation_matrix({{"solo", a}}), std::invalid_argument);
}
