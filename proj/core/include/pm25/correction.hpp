#pragma once

#include <array>
#include <optional>
#include <span>

#include "pm25/ingest.hpp"
#include "pm25/timeseries.hpp"

namespace pm25 {

/// How a bin's representative diameter is taken from its bounds.
enum class DiameterRule { GeometricMean, Midpoint };

/// Mass of one particle per deciliter, expressed as ug/m3, for a size bin.
struct BinCoefficient {
    double lower_um = 0.0;
    double upper_um = 0.0;
    double d_um = 0.0;
    double coefficient = 0.0;
};

/// Spherical-particle mass coefficient for [lower, upper] um at `density`
/// g/cm3. Throws std::invalid_argument unless 0 < lower < upper and
/// density > 0.
BinCoefficient bin_mass_coefficient(double lower_um, double upper_um, double density_g_cm3 = 1.0,
                                    DiameterRule rule = DiameterRule::GeometricMean);

struct CorrectionParams {
    double cf = 3.0;
    double density = 1.0;
    DiameterRule rule = DiameterRule::GeometricMean;
    std::array<BinCoefficient, 3> bins{};

    /// Coefficients computed from bin edges (4 ascending values).
    static CorrectionParams from_edges(std::array<double, 4> edges_um, double cf = 3.0,
                                       double density = 1.0,
                                       DiameterRule rule = DiameterRule::GeometricMean);
    /// 0.3 / 0.5 / 1.0 / 2.5 um edges, cf 3, unit density, geometric mean.
    static CorrectionParams standard();

    /// Throws std::invalid_argument on cf <= 0, density <= 0 or unordered bins.
    void validate() const;
};

/// cf * (alpha*x + beta*y + gamma*z), in ug/m3.
double alt_cf3(const SizeBinCounts& bins, const CorrectionParams& params);

/// One point per record, timestamps unchanged. Duplicate timestamps keep the
/// first record, matching TimeSeries::build.
TimeSeries correct_series(std::span<const BinnedRecord> records, const CorrectionParams& params,
                          Resolution resolution = Resolution::Minute);

/// The vendor CF1 channel of the same records as a series.
TimeSeries cf1_series(std::span<const BinnedRecord> records, Resolution resolution = Resolution::Minute);

struct ComparisonStats {
    std::optional<double> pearson_r;   // undefined when either side is constant
    std::optional<double> mean_ratio;  // mean(CF1)/mean(ALT); undefined when mean(ALT) == 0
    std::optional<double> ols_slope;   // CF1 = slope * ALT + intercept
    std::optional<double> ols_intercept;
    std::size_t n = 0;
};

/// Compares the two algorithms on their common timestamps. Throws
/// std::invalid_argument on fewer than two overlapping points or when the
/// resolutions differ.
ComparisonStats compare_algorithms(const TimeSeries& alt, const TimeSeries& cf1);

}  // namespace pm25
