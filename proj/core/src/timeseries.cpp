#include "pm25/timeseries.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace pm25 {

namespace {

using namespace std::chrono;

// Reads exactly `width` digits starting at `pos`.
std::optional<unsigned> read_digits(std::string_view s, std::size_t& pos, std::size_t width) {
    if (pos + width > s.size()) {
        return std::nullopt;
    }
    unsigned v = 0;
    auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + pos + width, v);
    if (ec != std::errc{} || ptr != s.data() + pos + width) {
        return std::nullopt;
    }
    pos += width;
    return v;
}

bool expect(std::string_view s, std::size_t& pos, std::string_view accepted) {
    if (pos < s.size() && accepted.find(s[pos]) != std::string_view::npos) {
        ++pos;
        return true;
    }
    return false;
}

}  // namespace

Timestamp Timestamp::from_civil(int y, unsigned mo, unsigned d, unsigned h, unsigned mi, unsigned s) {
    const year_month_day ymd{year{y}, month{mo}, day{d}};
    if (!ymd.ok() || h > 23 || mi > 59 || s > 59) {
        throw std::invalid_argument("invalid civil time");
    }
    const auto tp = sys_days{ymd} + hours{h} + minutes{mi} + seconds{s};
    return Timestamp{time_point_cast<seconds>(tp)};
}

std::optional<Timestamp> Timestamp::parse(std::string_view text, int utc_offset_hours) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '"')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '"' || text.back() == '\r')) {
        text.remove_suffix(1);
    }

    std::size_t pos = 0;
    bool utc = false;
    if (!text.empty() && (text.back() == 'Z' || text.back() == 'z')) {
        utc = true;
        text.remove_suffix(1);
    }

    auto y = read_digits(text, pos, 4);
    if (!y || !expect(text, pos, "-/")) return std::nullopt;
    auto mo = read_digits(text, pos, 2);
    if (!mo || !expect(text, pos, "-/")) return std::nullopt;
    auto d = read_digits(text, pos, 2);
    if (!d) return std::nullopt;

    unsigned h = 0, mi = 0, s = 0;
    if (pos < text.size()) {
        if (!expect(text, pos, "T ")) return std::nullopt;
        auto hh = read_digits(text, pos, 2);
        if (!hh || !expect(text, pos, ":")) return std::nullopt;
        auto mm = read_digits(text, pos, 2);
        if (!mm) return std::nullopt;
        h = *hh;
        mi = *mm;
        if (pos < text.size()) {
            if (!expect(text, pos, ":")) return std::nullopt;
            auto ss = read_digits(text, pos, 2);
            if (!ss) return std::nullopt;
            s = *ss;
        }
    }
    if (pos != text.size()) return std::nullopt;

    const year_month_day ymd{year{static_cast<int>(*y)}, month{*mo}, day{*d}};
    if (!ymd.ok() || h > 23 || mi > 59 || s > 59) return std::nullopt;
    auto ts = Timestamp::from_civil(static_cast<int>(*y), *mo, *d, h, mi, s);
    if (!utc) {
        ts = ts - hours{utc_offset_hours};
    }
    return ts;
}

std::string Timestamp::to_iso() const {
    const auto day_tp = floor<days>(tp_);
    const year_month_day ymd{day_tp};
    const hh_mm_ss hms{tp_ - day_tp};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                  static_cast<int>(hms.seconds().count()));
    return buf;
}

year_month_day civil_date(Timestamp ts, int utc_offset_hours) {
    return year_month_day{floor<days>(ts.time_point() + hours{utc_offset_hours})};
}

unsigned hour_of_day(Timestamp ts, int utc_offset_hours) {
    const auto local = ts.time_point() + hours{utc_offset_hours};
    const auto since_midnight = local - floor<days>(local);
    return static_cast<unsigned>(duration_cast<hours>(since_midnight).count());
}

seconds duration_of(Resolution r) {
    switch (r) {
        case Resolution::Minute: return minutes{1};
        case Resolution::Hour: return hours{1};
        case Resolution::Day: return days{1};
    }
    return seconds{0};
}

std::string_view to_string(Resolution r) {
    switch (r) {
        case Resolution::Minute: return "minute";
        case Resolution::Hour: return "hour";
        case Resolution::Day: return "day";
    }
    return "?";
}

std::optional<Resolution> parse_resolution(std::string_view text) {
    if (text == "minute") return Resolution::Minute;
    if (text == "hour") return Resolution::Hour;
    if (text == "day") return Resolution::Day;
    return std::nullopt;
}

std::string_view to_string(Season s) {
    switch (s) {
        case Season::LongDry: return "long_dry";
        case Season::ShortWet: return "short_wet";
        case Season::ShortDry: return "short_dry";
        case Season::LongWet: return "long_wet";
    }
    return "?";
}

Season season_of(month_day md) {
    const unsigned m = static_cast<unsigned>(md.month());
    const unsigned d = static_cast<unsigned>(md.day());
    if (m >= 6 && m <= 8) return Season::LongDry;
    if (m >= 9) return Season::ShortWet;
    if (m == 1) return d < 15 ? Season::ShortWet : Season::ShortDry;
    if (m == 2) return d < 15 ? Season::ShortDry : Season::LongWet;
    return Season::LongWet;  // March-May
}

Season season_of(Timestamp ts, int utc_offset_hours) {
    const auto ymd = civil_date(ts, utc_offset_hours);
    return season_of(month_day{ymd.month(), ymd.day()});
}

SeriesBuild TimeSeries::build(std::vector<Point> points, Resolution resolution, std::string unit) {
    SeriesBuild out;
    const auto before = points.size();
    std::erase_if(points, [](const Point& p) { return !std::isfinite(p.value); });
    out.dropped_nonfinite = before - points.size();

    std::stable_sort(points.begin(), points.end(),
                     [](const Point& a, const Point& b) { return a.time < b.time; });
    const auto last = std::unique(points.begin(), points.end(),
                                  [](const Point& a, const Point& b) { return a.time == b.time; });
    out.deduplicated = static_cast<std::size_t>(points.end() - last);
    points.erase(last, points.end());

    out.series.points_ = std::move(points);
    out.series.resolution_ = resolution;
    out.series.unit_ = std::move(unit);
    return out;
}

std::vector<double> TimeSeries::values() const {
    std::vector<double> v;
    v.reserve(points_.size());
    for (const auto& p : points_) v.push_back(p.value);
    return v;
}

std::vector<Timestamp> TimeSeries::timestamps() const {
    std::vector<Timestamp> v;
    v.reserve(points_.size());
    for (const auto& p : points_) v.push_back(p.time);
    return v;
}

std::optional<double> TimeSeries::at(Timestamp t) const {
    auto it = std::lower_bound(points_.begin(), points_.end(), t,
                               [](const Point& p, Timestamp key) { return p.time < key; });
    if (it == points_.end() || it->time != t) return std::nullopt;
    return it->value;
}

AlignedPair align(const TimeSeries& a, const TimeSeries& b) {
    if (a.resolution() != b.resolution()) {
        throw std::invalid_argument("cannot align series of different resolution");
    }
    AlignedPair out;
    auto pa = a.points();
    auto pb = b.points();
    std::size_t i = 0, j = 0;
    while (i < pa.size() && j < pb.size()) {
        if (pa[i].time < pb[j].time) {
            ++i;
        } else if (pb[j].time < pa[i].time) {
            ++j;
        } else {
            out.timestamps.push_back(pa[i].time);
            out.a_values.push_back(pa[i].value);
            out.b_values.push_back(pb[j].value);
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace pm25
