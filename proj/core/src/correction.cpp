#include "pm25/correction.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pm25/stats.hpp"

namespace pm25 {

namespace {

constexpr double kCmPerUm = 1.0e-4;
constexpr double kUgPerG = 1.0e6;
constexpr double kDlPerM3 = 1.0e4;

}  // namespace

BinCoefficient bin_mass_coefficient(double lower_um, double upper_um, double density, DiameterRule rule) {
    if (!(lower_um > 0.0) || !(upper_um > lower_um)) {
        throw std::invalid_argument("bin bounds must satisfy 0 < lower < upper");
    }
    if (!(density > 0.0)) {
        throw std::invalid_argument("density must be positive");
    }
    BinCoefficient out;
    out.lower_um = lower_um;
    out.upper_um = upper_um;
    out.d_um = rule == DiameterRule::GeometricMean ? std::sqrt(lower_um * upper_um)
                                                   : 0.5 * (lower_um + upper_um);
    const double r_cm = 0.5 * out.d_um * kCmPerUm;
    const double volume_cm3 = 4.0 / 3.0 * std::numbers::pi * r_cm * r_cm * r_cm;
    // g per particle -> ug per particle; per dL -> per m3.
    out.coefficient = density * volume_cm3 * kUgPerG * kDlPerM3;
    return out;
}

CorrectionParams CorrectionParams::from_edges(std::array<double, 4> e, double cf, double density,
                                              DiameterRule rule) {
    CorrectionParams p;
    p.cf = cf;
    p.density = density;
    p.rule = rule;
    for (std::size_t i = 0; i < 3; ++i) {
        p.bins[i] = bin_mass_coefficient(e[i], e[i + 1], density, rule);
    }
    p.validate();
    return p;
}

CorrectionParams CorrectionParams::standard() { return from_edges({0.3, 0.5, 1.0, 2.5}); }

void CorrectionParams::validate() const {
    if (!(cf > 0.0)) throw std::invalid_argument("calibration factor must be positive");
    if (!(density > 0.0)) throw std::invalid_argument("density must be positive");
    for (std::size_t i = 0; i < bins.size(); ++i) {
        if (!(bins[i].coefficient > 0.0)) throw std::invalid_argument("bin coefficient must be positive");
        if (i > 0 && !(bins[i - 1].lower_um < bins[i].lower_um)) {
            throw std::invalid_argument("bins must be ordered by lower bound");
        }
    }
}

double alt_cf3(const SizeBinCounts& b, const CorrectionParams& p) {
    return p.cf * (p.bins[0].coefficient * b.x + p.bins[1].coefficient * b.y + p.bins[2].coefficient * b.z);
}

TimeSeries correct_series(std::span<const BinnedRecord> records, const CorrectionParams& params,
                          Resolution resolution) {
    std::vector<Point> pts;
    pts.reserve(records.size());
    for (const auto& r : records) pts.push_back({r.time, alt_cf3(r.bins, params)});
    return TimeSeries::build(std::move(pts), resolution).series;
}

TimeSeries cf1_series(std::span<const BinnedRecord> records, Resolution resolution) {
    std::vector<Point> pts;
    pts.reserve(records.size());
    for (const auto& r : records) pts.push_back({r.time, r.pm25_cf1});
    return TimeSeries::build(std::move(pts), resolution).series;
}

ComparisonStats compare_algorithms(const TimeSeries& alt, const TimeSeries& cf1) {
    const auto pair = align(alt, cf1);
    if (pair.size() < 2) {
        throw std::invalid_argument("comparison needs at least two overlapping points");
    }
    ComparisonStats out;
    out.n = pair.size();

    const auto m = PairMoments::compute(pair.a_values, pair.b_values);
    if (m.mean_x != 0.0) out.mean_ratio = m.mean_y / m.mean_x;
    out.pearson_r = m.correlation();
    if (m.sxx > 0.0) {
        out.ols_slope = m.sxy / m.sxx;
        out.ols_intercept = m.mean_y - *out.ols_slope * m.mean_x;
    }
    return out;
}

}  // namespace pm25
