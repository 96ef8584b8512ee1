#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "pm25/timeseries.hpp"

namespace pm25::forecast {

/// Min-max scaler fitted on training values only.
class Scaler {
public:
    /// Throws std::invalid_argument unless max > min (both finite).
    Scaler(double min, double max);

    /// Throws std::invalid_argument on empty or constant input.
    static Scaler fit(std::span<const double> values);

    double transform(double v) const { return (v - min_) / (max_ - min_); }
    double invert(double s) const { return min_ + s * (max_ - min_); }
    double min() const { return min_; }
    double max() const { return max_; }

    friend bool operator==(const Scaler&, const Scaler&) = default;

private:
    double min_;
    double max_;
};

/// Sliding one-step-ahead windows, stored row-major.
struct WindowDataset {
    std::size_t window = 0;
    std::vector<double> inputs;  // size() * window values
    std::vector<double> targets;
    std::vector<Timestamp> target_times;

    std::size_t size() const { return targets.size(); }
    bool empty() const { return targets.empty(); }
    std::span<const double> input(std::size_t i) const {
        return std::span<const double>(inputs).subspan(i * window, window);
    }
    /// Most recent observation before the target (the persistence forecast).
    double last_input(std::size_t i) const { return inputs[i * window + window - 1]; }
};

/// Every window of `window` consecutive points followed by a target one
/// step later, with no gap anywhere inside. Requires an hourly series and
/// horizon == 1 (std::invalid_argument otherwise). A run of R contiguous
/// points yields max(0, R - window) windows.
WindowDataset make_windows(const TimeSeries& hourly, std::size_t window, std::size_t horizon = 1);

/// Applies the scaler to inputs and targets.
WindowDataset scaled(const WindowDataset& ds, const Scaler& scaler);

/// First floor(n * fraction) points and the remainder.
std::pair<TimeSeries, TimeSeries> chronological_split(const TimeSeries& ts, double fraction);

struct PreparedData {
    Scaler scaler;
    WindowDataset train;  // scaled
    WindowDataset test;   // scaled
};

/// Splits chronologically, fits the scaler on the training part and windows
/// each part separately so no window straddles the split.
PreparedData prepare(const TimeSeries& hourly, std::size_t window, double split_fraction);

/// Longest run of consecutive points one resolution step apart.
std::size_t longest_contiguous_run(const TimeSeries& ts);

}  // namespace pm25::forecast
