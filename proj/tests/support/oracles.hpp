#pragma once

// Brute-force reference computations. These deliberately avoid the library's
// streaming accumulators and bucket walkers: everything is grouped into maps
// and reduced with long double two-pass sums.

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "pm25/timeseries.hpp"

namespace oracle {

struct Moments {
    double mean = 0.0;
    std::optional<double> sample_std;
    std::size_t n = 0;
};

inline Moments moments(const std::vector<double>& v) {
    Moments m;
    m.n = v.size();
    if (v.empty()) return m;
    long double s = 0.0L;
    for (double x : v) s += x;
    const long double mean = s / static_cast<long double>(v.size());
    m.mean = static_cast<double>(mean);
    if (v.size() >= 2) {
        long double ss = 0.0L;
        for (double x : v) ss += (x - mean) * (x - mean);
        m.sample_std = static_cast<double>(std::sqrt(ss / static_cast<long double>(v.size() - 1)));
    }
    return m;
}

inline std::int64_t div_floor(std::int64_t a, std::int64_t b) {
    return static_cast<std::int64_t>(std::floor(static_cast<long double>(a) / static_cast<long double>(b)));
}

/// Group-by-bucket means with the completeness rule; returns bucket start
/// (UTC epoch seconds) -> mean.
inline std::map<std::int64_t, double> resample(const pm25::TimeSeries& ts, std::int64_t bucket_seconds,
                                               std::int64_t offset_seconds, double completeness,
                                               std::int64_t source_seconds) {
    std::map<std::int64_t, std::vector<double>> groups;
    for (const auto& p : ts.points()) {
        groups[div_floor(p.time.epoch_seconds() + offset_seconds, bucket_seconds)].push_back(p.value);
    }
    const double expected = static_cast<double>(bucket_seconds / source_seconds);
    std::map<std::int64_t, double> out;
    for (const auto& [key, vals] : groups) {
        if (static_cast<double>(vals.size()) + 1e-9 >= completeness * expected) {
            out[key * bucket_seconds - offset_seconds] = moments(vals).mean;
        }
    }
    return out;
}

/// Local hour of day by integer arithmetic on epoch seconds.
inline int local_hour(std::int64_t epoch_seconds, int offset_hours) {
    const std::int64_t local = epoch_seconds + std::int64_t{offset_hours} * 3600;
    const std::int64_t sod = ((local % 86400) + 86400) % 86400;
    return static_cast<int>(sod / 3600);
}

inline std::vector<Moments> diurnal(const pm25::TimeSeries& hourly, int offset_hours) {
    std::map<int, std::vector<double>> groups;
    for (const auto& p : hourly.points()) groups[local_hour(p.time.epoch_seconds(), offset_hours)].push_back(p.value);
    std::vector<Moments> out(24);
    for (int h = 0; h < 24; ++h) out[h] = moments(groups[h]);
    return out;
}

/// Season by explicit day-of-year ranges on the local civil date.
inline int season_index(std::int64_t epoch_seconds, int offset_hours) {
    using namespace std::chrono;
    const sys_days d = floor<days>(sys_seconds{seconds{epoch_seconds + std::int64_t{offset_hours} * 3600}});
    const year_month_day ymd{d};
    const int md = static_cast<int>(static_cast<unsigned>(ymd.month())) * 100 + static_cast<int>(static_cast<unsigned>(ymd.day()));
    if (md >= 601 && md <= 831) return 0;                 // long dry
    if (md >= 901 || md <= 114) return 1;                 // short wet
    if (md >= 115 && md <= 214) return 2;                 // short dry
    return 3;                                             // long wet
}

inline std::vector<Moments> seasonal(const pm25::TimeSeries& daily, int offset_hours) {
    std::map<int, std::vector<double>> groups;
    for (const auto& p : daily.points()) groups[season_index(p.time.epoch_seconds(), offset_hours)].push_back(p.value);
    std::vector<Moments> out(4);
    for (int s = 0; s < 4; ++s) out[s] = moments(groups[s]);
    return out;
}

/// Pearson r from long double two-pass sums.
inline std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = x.size();
    if (n < 2 || y.size() != n) return std::nullopt;
    long double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const long double mx = sx / n, my = sy / n;
    long double sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0 || syy == 0) return std::nullopt;
    return static_cast<double>(sxy / std::sqrt(sxx * syy));
}

/// Pearson over timestamps present in both series, found by map lookup.
inline std::optional<double> pearson_by_time(const pm25::TimeSeries& a, const pm25::TimeSeries& b) {
    std::map<std::int64_t, double> bm;
    for (const auto& p : b.points()) bm[p.time.epoch_seconds()] = p.value;
    std::vector<double> xa, xb;
    for (const auto& p : a.points()) {
        auto it = bm.find(p.time.epoch_seconds());
        if (it != bm.end()) {
            xa.push_back(p.value);
            xb.push_back(it->second);
        }
    }
    return pearson(xa, xb);
}

inline double rmse(const std::vector<double>& y, const std::vector<double>& yhat) {
    long double s = 0;
    for (std::size_t i = 0; i < y.size(); ++i) s += (static_cast<long double>(y[i]) - yhat[i]) * (static_cast<long double>(y[i]) - yhat[i]);
    return static_cast<double>(std::sqrt(s / y.size()));
}

inline double mae(const std::vector<double>& y, const std::vector<double>& yhat) {
    long double s = 0;
    for (std::size_t i = 0; i < y.size(); ++i) s += std::fabs(static_cast<long double>(y[i]) - yhat[i]);
    return static_cast<double>(s / y.size());
}

inline bool rel_close(double a, double b, double rel, double abs_floor = 0.0) {
    return std::abs(a - b) <= std::max(rel * std::max(std::abs(a), std::abs(b)), abs_floor);
}

}  // namespace oracle
