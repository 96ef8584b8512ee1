#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "pm25/correction.hpp"
#include "pm25/ingest.hpp"
#include "pm25/timeseries.hpp"

namespace pm25::synth {

/// Shape of one synthetic site's PM2.5 signal.
struct SiteProfile {
    double base_level = 25.0;        // ug/m3
    double morning_peak_hour = 7;    // local hour whose bucket holds the peak
    double evening_peak_hour = 19;
    double peak_amplitude = 15.0;    // ug/m3 added at each peak centre
    double peak_width_hours = 1.5;   // Gaussian sigma
    double dry_multiplier = 1.0;     // applied in both dry seasons
    double noise_std = 0.0;          // ug/m3 per minute sample
    std::uint64_t seed = 1;
    int utc_offset_hours = 2;

    /// Throws std::invalid_argument on base_level <= 0, a peak hour outside
    /// [0, 23], negative noise or a multiplier below 1.
    void validate() const;
};

/// Fraction of the signal mass carried by the x, y and z bins.
inline constexpr double kMassShareX = 0.3;
inline constexpr double kMassShareY = 0.3;
inline constexpr double kMassShareZ = 0.4;

/// Noise-free signal at `t` (before clamping), in ug/m3.
double clean_signal(const SiteProfile& profile, Timestamp t);

/// Cumulative channels whose differenced bins carry `mass` ug/m3 under
/// `params`.
RawRecord record_for_mass(Timestamp t, double mass, const CorrectionParams& params);

/// Minute records on [start, end). Each record's counts encode
/// max(0, clean + noise); pm25_cf1 (and pm25_atm) is exactly twice the mass
/// recovered by alt_cf3 from those counts under the standard parameters.
/// Throws std::invalid_argument unless end > start.
std::vector<RawRecord> generate(const SiteProfile& profile, Timestamp start, Timestamp end);

/// The injected truth carried by a synthetic record.
inline double truth_of(const RawRecord& r) { return r.pm25_cf1 / 2.0; }

/// Writes records in the column layout of `schema`.
void write_csv(std::ostream& out, std::span<const RawRecord> records,
               const CsvSchema& schema = CsvSchema::purpleair());

}  // namespace pm25::synth
