#include "pm25/analytics.hpp"

#include <cmath>
#include <stdexcept>

namespace pm25 {

namespace {

using namespace std::chrono;

void require_resolution(const TimeSeries& ts, Resolution r, const char* what) {
    if (ts.resolution() != r) {
        throw std::invalid_argument(std::string(what) + " requires a " + std::string(to_string(r)) +
                                    " series, got " + std::string(to_string(ts.resolution())));
    }
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

void AggConfig::validate() const {
    auto ok = [](double f) { return f > 0.0 && f <= 1.0; };
    if (!ok(hour_completeness) || !ok(day_completeness)) {
        throw std::invalid_argument("completeness fractions must lie in (0, 1]");
    }
}

TimeSeries resample(const TimeSeries& ts, Resolution target, const AggConfig& cfg) {
    cfg.validate();
    const auto src = duration_of(ts.resolution()).count();
    const auto dst = duration_of(target).count();
    if (src >= dst) {
        throw std::invalid_argument("resample target must be coarser than the source resolution");
    }
    const double expected = static_cast<double>(dst / src);
    const double completeness = target == Resolution::Day ? cfg.day_completeness : cfg.hour_completeness;
    const double needed = completeness * expected - 1e-9;
    const std::int64_t offset = target == Resolution::Day ? std::int64_t{cfg.utc_offset_hours} * 3600 : 0;

    std::vector<Point> out;
    RunningStats acc;
    std::int64_t key = 0;
    auto flush = [&] {
        if (acc.count() > 0 && static_cast<double>(acc.count()) >= needed) {
            out.push_back({Timestamp::from_epoch_seconds(key * dst - offset), *acc.mean()});
        }
        acc = RunningStats{};
    };
    for (const auto& p : ts.points()) {
        const auto k = floor_div(p.time.epoch_seconds() + offset, dst);
        if (acc.count() > 0 && k != key) flush();
        key = k;
        acc.add(p.value);
    }
    flush();
    return TimeSeries::build(std::move(out), target, ts.unit()).series;
}

DiurnalProfile diurnal_profile(const TimeSeries& hourly, const AggConfig& cfg) {
    require_resolution(hourly, Resolution::Hour, "diurnal_profile");
    std::array<RunningStats, 24> acc;
    for (const auto& p : hourly.points()) acc[hour_of_day(p.time, cfg.utc_offset_hours)].add(p.value);

    DiurnalProfile out;
    out.std_kind = cfg.std_kind;
    for (std::size_t h = 0; h < 24; ++h) {
        out.hours[h] = {acc[h].mean(), acc[h].stddev(cfg.std_kind), acc[h].count()};
    }
    return out;
}

SeasonalSummary seasonal_summary(const TimeSeries& daily, const AggConfig& cfg) {
    require_resolution(daily, Resolution::Day, "seasonal_summary");
    std::array<RunningStats, kSeasonCount> acc;
    for (const auto& p : daily.points()) acc[index_of(season_of(p.time, cfg.utc_offset_hours))].add(p.value);

    SeasonalSummary out;
    for (std::size_t s = 0; s < kSeasonCount; ++s) {
        out.seasons[s] = {acc[s].mean(), acc[s].stddev(cfg.std_kind), acc[s].count()};
    }
    return out;
}

std::vector<MonthlyStats> monthly_means(const TimeSeries& daily, const AggConfig& cfg) {
    require_resolution(daily, Resolution::Day, "monthly_means");
    std::vector<MonthlyStats> out;
    RunningStats acc;
    year_month current{};
    auto flush = [&] {
        if (acc.count() == 0) return;
        out.push_back({static_cast<int>(current.year()), static_cast<unsigned>(current.month()), *acc.mean(),
                       acc.stddev(cfg.std_kind), acc.count()});
        acc = RunningStats{};
    };
    for (const auto& p : daily.points()) {
        const auto ymd = civil_date(p.time, cfg.utc_offset_hours);
        const year_month ym{ymd.year(), ymd.month()};
        if (acc.count() > 0 && ym != current) flush();
        current = ym;
        acc.add(p.value);
    }
    flush();
    return out;
}

AnnualMean annual_mean(const TimeSeries& daily) {
    require_resolution(daily, Resolution::Day, "annual_mean");
    if (daily.empty()) throw std::invalid_argument("annual_mean of an empty series");
    RunningStats acc;
    for (const auto& p : daily.points()) acc.add(p.value);
    const auto span = daily.points().back().time - daily.points().front().time;
    const auto span_days = duration_cast<days>(span).count() + 1;
    return {*acc.mean(), static_cast<double>(daily.size()) / static_cast<double>(span_days)};
}

ExceedanceReport exceedance(const TimeSeries& daily, double guideline) {
    require_resolution(daily, Resolution::Day, "exceedance");
    if (!(guideline > 0.0)) throw std::invalid_argument("guideline must be positive");
    ExceedanceReport out;
    out.guideline = guideline;
    out.days_total = daily.size();
    for (const auto& p : daily.points()) {
        if (p.value > guideline) ++out.days_over;
    }
    if (out.days_total > 0) {
        out.fraction = static_cast<double>(out.days_over) / static_cast<double>(out.days_total);
    }
    return out;
}

std::optional<double> pearson(const AlignedPair& pair) { return pearson(pair.a_values, pair.b_values); }

CorrelationMatrix correlation_matrix(const std::map<std::string, TimeSeries>& sites) {
    if (sites.size() < 2) throw std::invalid_argument("correlation matrix needs at least two sites");
    CorrelationMatrix m;
    std::vector<const TimeSeries*> series;
    for (const auto& [label, ts] : sites) {
        m.labels.push_back(label);
        series.push_back(&ts);
    }
    const auto n = series.size();
    m.r.assign(n, std::vector<std::optional<double>>(n));
    m.overlap.assign(n, std::vector<std::size_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        m.r[i][i] = 1.0;
        m.overlap[i][i] = series[i]->size();
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto pair = align(*series[i], *series[j]);
            m.overlap[i][j] = m.overlap[j][i] = pair.size();
            m.r[i][j] = m.r[j][i] = pearson(pair);
        }
    }
    return m;
}

}  // namespace pm25
