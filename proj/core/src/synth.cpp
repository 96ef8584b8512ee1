#include "pm25/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pm25/number_format.hpp"
#include "pm25/random.hpp"

namespace pm25::synth {

namespace {

constexpr double kGt2_5PerZ = 0.25;  // coarse tail relative to the z bin
constexpr double kTailDecay = 0.3;   // each coarser channel keeps this share

double bump(double hour, double peak_hour, double width) {
    const double centre = peak_hour + 0.5;
    double d = std::abs(hour - centre);
    d = std::min(d, 24.0 - d);
    return std::exp(-d * d / (2.0 * width * width));
}

}  // namespace

void SiteProfile::validate() const {
    if (!(base_level > 0.0)) throw std::invalid_argument("base_level must be positive");
    auto hour_ok = [](double h) { return h >= 0.0 && h <= 23.0; };
    if (!hour_ok(morning_peak_hour) || !hour_ok(evening_peak_hour)) {
        throw std::invalid_argument("peak hours must lie in [0, 23]");
    }
    if (!(noise_std >= 0.0)) throw std::invalid_argument("noise_std must be non-negative");
    if (!(dry_multiplier >= 1.0)) throw std::invalid_argument("dry_multiplier must be at least 1");
    if (!(peak_width_hours > 0.0)) throw std::invalid_argument("peak width must be positive");
}

double clean_signal(const SiteProfile& p, Timestamp t) {
    const auto local = t.time_point() + std::chrono::hours{p.utc_offset_hours};
    const auto since_midnight = local - std::chrono::floor<std::chrono::days>(local);
    const double hour = static_cast<double>(since_midnight.count()) / 3600.0;
    const double diurnal = p.base_level + p.peak_amplitude * (bump(hour, p.morning_peak_hour, p.peak_width_hours) +
                                                              bump(hour, p.evening_peak_hour, p.peak_width_hours));
    const Season s = season_of(t, p.utc_offset_hours);
    const double mult = (s == Season::LongDry || s == Season::ShortDry) ? p.dry_multiplier : 1.0;
    return mult * diurnal;
}

RawRecord record_for_mass(Timestamp t, double mass, const CorrectionParams& params) {
    const double per_cf = mass / params.cf;
    const double x = kMassShareX * per_cf / params.bins[0].coefficient;
    const double y = kMassShareY * per_cf / params.bins[1].coefficient;
    const double z = kMassShareZ * per_cf / params.bins[2].coefficient;

    RawRecord r;
    r.time = t;
    const double gt2_5 = kGt2_5PerZ * z;
    const double gt5_0 = kTailDecay * gt2_5;
    r.counts_gt[static_cast<std::size_t>(CountChannel::Gt2_5)] = gt2_5;
    r.counts_gt[static_cast<std::size_t>(CountChannel::Gt5_0)] = gt5_0;
    r.counts_gt[static_cast<std::size_t>(CountChannel::Gt1_0)] = gt2_5 + z;
    r.counts_gt[static_cast<std::size_t>(CountChannel::Gt0_5)] = gt2_5 + z + y;
    r.counts_gt[static_cast<std::size_t>(CountChannel::Gt0_3)] = gt2_5 + z + y + x;
    r.count_gt10 = kTailDecay * gt5_0;
    return r;
}

std::vector<RawRecord> generate(const SiteProfile& profile, Timestamp start, Timestamp end) {
    profile.validate();
    if (!(start < end)) throw std::invalid_argument("synthetic range needs end > start");

    const auto params = CorrectionParams::standard();
    Rng rng(profile.seed);
    const auto minutes = (end - start).count() / 60 + ((end - start).count() % 60 != 0 ? 1 : 0);
    std::vector<RawRecord> out;
    out.reserve(static_cast<std::size_t>(minutes));

    for (Timestamp t = start; t < end; t = t + std::chrono::minutes{1}) {
        double mass = clean_signal(profile, t);
        if (profile.noise_std > 0.0) mass += profile.noise_std * rng.normal();
        mass = std::max(0.0, mass);

        RawRecord r = record_for_mass(t, mass, params);
        const double recovered = alt_cf3(difference_bins(r).bins, params);
        r.pm25_cf1 = 2.0 * recovered;
        r.pm25_atm = r.pm25_cf1;

        const auto local_hour = static_cast<double>(hour_of_day(t, profile.utc_offset_hours));
        const double phase = 2.0 * std::numbers::pi * (local_hour - 9.0) / 24.0;
        r.temperature_c = 24.0 + 4.0 * std::sin(phase);
        r.humidity_pct = 65.0 - 15.0 * std::sin(phase);
        r.pressure_hpa = 925.0;
        out.push_back(r);
    }
    return out;
}

void write_csv(std::ostream& out, std::span<const RawRecord> records, const CsvSchema& schema) {
    for (std::size_t f = 0; f < kFieldCount; ++f) {
        if (f) out << ',';
        out << schema.columns[f];
    }
    out << '\n';
    auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
    for (const auto& r : records) {
        out << r.time.to_iso();
        for (double c : r.counts_gt) out << ',' << format_double(c);
        out << ',' << opt(r.count_gt10) << ',' << format_double(r.pm25_cf1) << ',' << opt(r.pm25_atm) << ','
            << opt(r.temperature_c) << ',' << opt(r.humidity_pct) << ',' << opt(r.pressure_hpa) << '\n';
    }
}

}  // namespace pm25::synth
