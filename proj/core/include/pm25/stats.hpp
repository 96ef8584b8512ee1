#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>

namespace pm25 {

enum class StdKind { Sample, Population };

/// Single-pass mean and variance (Welford).
class RunningStats {
public:
    void add(double x) {
        ++n_;
        const double delta = x - mean_;
        mean_ += delta / static_cast<double>(n_);
        m2_ += delta * (x - mean_);
        if (x < min_) min_ = x;
        if (x > max_) max_ = x;
    }

    std::size_t count() const { return n_; }
    /// Undefined for an empty accumulator.
    std::optional<double> mean() const;
    /// Sample variance needs n >= 2, population variance n >= 1.
    std::optional<double> variance(StdKind kind = StdKind::Sample) const;
    std::optional<double> stddev(StdKind kind = StdKind::Sample) const;
    double min() const { return min_; }
    double max() const { return max_; }

private:
    std::size_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
    double min_ = std::numeric_limits<double>::infinity();
    double max_ = -std::numeric_limits<double>::infinity();
};

/// Two-pass centred moments of a paired sample.
struct PairMoments {
    std::size_t n = 0;
    double mean_x = 0.0;
    double mean_y = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    double sxy = 0.0;

    /// Requires equal lengths; throws std::invalid_argument otherwise.
    static PairMoments compute(std::span<const double> x, std::span<const double> y);

    /// Sample Pearson r, clamped to [-1, 1]; undefined when n < 2 or either
    /// side has zero variance.
    std::optional<double> correlation() const;
};

std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

}  // namespace pm25
