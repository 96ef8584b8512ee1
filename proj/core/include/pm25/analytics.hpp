#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pm25/stats.hpp"
#include "pm25/timeseries.hpp"

namespace pm25 {

struct AggConfig {
    double hour_completeness = 0.75;
    double day_completeness = 0.75;
    StdKind std_kind = StdKind::Sample;
    /// Local offset used for day buckets, hour-of-day and season keys.
    int utc_offset_hours = 2;

    /// Throws std::invalid_argument unless both fractions are in (0, 1].
    void validate() const;
};

/// Bucket means at `target` resolution. Hour buckets start on the hour; day
/// buckets start at local midnight and are stamped with that instant in UTC.
/// A bucket is kept only if it holds at least completeness * expected
/// samples, where expected = target span / source span. Throws
/// std::invalid_argument unless the source resolution is strictly finer.
TimeSeries resample(const TimeSeries& ts, Resolution target, const AggConfig& cfg = {});

struct HourStats {
    std::optional<double> mean;
    std::optional<double> std;  // undefined below two samples (sample kind)
    std::size_t count = 0;
};

struct DiurnalProfile {
    std::array<HourStats, 24> hours{};
    StdKind std_kind = StdKind::Sample;
};

/// Mean, spread and count per local hour of day. Requires an hourly series.
DiurnalProfile diurnal_profile(const TimeSeries& hourly, const AggConfig& cfg = {});

struct SeasonStats {
    std::optional<double> mean;
    std::optional<double> std;
    std::size_t count = 0;
};

struct SeasonalSummary {
    std::array<SeasonStats, kSeasonCount> seasons{};

    const SeasonStats& operator[](Season s) const { return seasons[index_of(s)]; }
};

/// Groups daily values by the season of their local date. Requires a daily series.
SeasonalSummary seasonal_summary(const TimeSeries& daily, const AggConfig& cfg = {});

struct MonthlyStats {
    int year = 0;
    unsigned month = 0;
    double mean = 0.0;
    std::optional<double> std;
    std::size_t count = 0;
};

/// Mean of daily values per local calendar month, in chronological order.
std::vector<MonthlyStats> monthly_means(const TimeSeries& daily, const AggConfig& cfg = {});

struct AnnualMean {
    double mean = 0.0;
    double coverage = 0.0;  // available days / days spanned (inclusive)
};

/// Throws std::invalid_argument for an empty or non-daily series.
AnnualMean annual_mean(const TimeSeries& daily);

inline constexpr double kWhoDailyGuideline = 25.0;

struct ExceedanceReport {
    double guideline = kWhoDailyGuideline;
    std::size_t days_over = 0;
    std::size_t days_total = 0;
    double fraction = 0.0;  // 0 for an empty series
};

/// Counts days strictly above the guideline. Throws std::invalid_argument
/// unless guideline > 0.
ExceedanceReport exceedance(const TimeSeries& daily, double guideline = kWhoDailyGuideline);

/// Sample Pearson r of an aligned pair; undefined below two points or for a
/// constant side.
std::optional<double> pearson(const AlignedPair& pair);

struct CorrelationMatrix {
    std::vector<std::string> labels;
    std::vector<std::vector<std::optional<double>>> r;
    std::vector<std::vector<std::size_t>> overlap;

    std::size_t size() const { return labels.size(); }
};

/// Pairwise Pearson over pairwise-aligned series, unit diagonal. Sites are
/// ordered by label. Throws std::invalid_argument for fewer than two sites.
CorrelationMatrix correlation_matrix(const std::map<std::string, TimeSeries>& sites);

}  // namespace pm25
