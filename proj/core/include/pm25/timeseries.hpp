#pragma once

#include <chrono>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pm25 {

/// A UTC instant with one-second precision.
///
/// Local (Central Africa Time) values only appear at ingestion and when
/// computing presentation keys such as hour-of-day; everything stored is UTC.
class Timestamp {
public:
    using Seconds = std::chrono::sys_seconds;

    constexpr Timestamp() = default;
    constexpr explicit Timestamp(Seconds tp) : tp_(tp) {}

    static constexpr Timestamp from_epoch_seconds(std::int64_t s) {
        return Timestamp{Seconds{std::chrono::seconds{s}}};
    }

    /// Builds a UTC instant from civil fields. Throws std::invalid_argument
    /// on an impossible date or time of day.
    static Timestamp from_civil(int year, unsigned month, unsigned day,
                                unsigned hour = 0, unsigned minute = 0,
                                unsigned second = 0);

    /// Parses "YYYY-MM-DD[(T| )HH:MM[:SS]][Z]". '/' is accepted as the date
    /// separator (PurpleAir SD-card logs use it). A trailing 'Z'/'z' marks
    /// UTC; without it the value is local time and `utc_offset_hours` is
    /// subtracted. Returns nullopt if the text does not parse.
    static std::optional<Timestamp> parse(std::string_view text,
                                          int utc_offset_hours = 0);

    constexpr std::int64_t epoch_seconds() const { return tp_.time_since_epoch().count(); }
    constexpr Seconds time_point() const { return tp_; }

    /// ISO-8601 UTC, e.g. "2023-07-15T08:00:00Z".
    std::string to_iso() const;

    constexpr Timestamp operator+(std::chrono::seconds d) const { return Timestamp{tp_ + d}; }
    constexpr Timestamp operator-(std::chrono::seconds d) const { return Timestamp{tp_ - d}; }
    constexpr std::chrono::seconds operator-(Timestamp other) const { return tp_ - other.tp_; }

    constexpr auto operator<=>(const Timestamp&) const = default;

private:
    Seconds tp_{};
};

/// Civil date of `ts` after shifting by a fixed offset.
std::chrono::year_month_day civil_date(Timestamp ts, int utc_offset_hours = 0);

/// Hour of day 0..23 after shifting by a fixed offset.
unsigned hour_of_day(Timestamp ts, int utc_offset_hours = 0);

enum class Resolution { Minute, Hour, Day };

std::chrono::seconds duration_of(Resolution r);
std::string_view to_string(Resolution r);
std::optional<Resolution> parse_resolution(std::string_view text);

/// Bujumbura season calendar.
enum class Season { LongDry, ShortWet, ShortDry, LongWet };

inline constexpr std::size_t kSeasonCount = 4;

std::string_view to_string(Season s);
constexpr std::size_t index_of(Season s) { return static_cast<std::size_t>(s); }

/// Jun 1-Aug 31 long dry, Sep 1-Jan 14 short wet, Jan 15-Feb 14 short dry,
/// Feb 15-May 31 long wet. The date is taken after applying the offset.
Season season_of(Timestamp ts, int utc_offset_hours = 0);
Season season_of(std::chrono::month_day md);

struct Point {
    Timestamp time;
    double value = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

struct SeriesBuild;

/// Immutable, strictly increasing, finite-valued series.
class TimeSeries {
public:
    TimeSeries() = default;

    /// Sorts, drops non-finite values and keeps the first of any duplicate
    /// timestamps (input order breaks ties).
    static SeriesBuild build(std::vector<Point> points, Resolution resolution,
                             std::string unit = "ug/m3");

    std::span<const Point> points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }
    const Point& operator[](std::size_t i) const { return points_[i]; }
    Resolution resolution() const { return resolution_; }
    const std::string& unit() const { return unit_; }

    std::vector<double> values() const;
    std::vector<Timestamp> timestamps() const;

    /// Value at an exact timestamp, if present.
    std::optional<double> at(Timestamp t) const;

    friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

private:
    std::vector<Point> points_;
    Resolution resolution_ = Resolution::Minute;
    std::string unit_ = "ug/m3";
};

struct SeriesBuild {
    TimeSeries series;
    std::size_t dropped_nonfinite = 0;
    std::size_t deduplicated = 0;
};

/// Convenience wrapper over TimeSeries::build.
inline SeriesBuild ts_new(std::vector<Point> points, Resolution resolution) {
    return TimeSeries::build(std::move(points), resolution);
}

/// Two series restricted to their common timestamps.
struct AlignedPair {
    std::vector<Timestamp> timestamps;
    std::vector<double> a_values;
    std::vector<double> b_values;

    std::size_t size() const { return timestamps.size(); }
};

/// Intersects timestamps. Throws std::invalid_argument when the declared
/// resolutions differ.
AlignedPair align(const TimeSeries& a, const TimeSeries& b);

}  // namespace pm25
