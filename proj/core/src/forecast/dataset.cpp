#include "pm25/forecast/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pm25::forecast {

Scaler::Scaler(double min, double max) : min_(min), max_(max) {
    if (!std::isfinite(min) || !std::isfinite(max) || !(max > min)) {
        throw std::invalid_argument("scaler requires finite max > min");
    }
}

Scaler Scaler::fit(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("cannot fit a scaler on no data");
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    if (!(*hi > *lo)) throw std::invalid_argument("cannot fit a scaler on constant data");
    return Scaler{*lo, *hi};
}

WindowDataset make_windows(const TimeSeries& hourly, std::size_t window, std::size_t horizon) {
    if (hourly.resolution() != Resolution::Hour) {
        throw std::invalid_argument("make_windows requires an hourly series");
    }
    if (window == 0) throw std::invalid_argument("window length must be at least 1");
    if (horizon != 1) throw std::invalid_argument("only a one-step horizon is supported");

    WindowDataset ds;
    ds.window = window;
    const auto step = duration_of(Resolution::Hour);
    const auto pts = hourly.points();

    std::size_t run_start = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i > 0 && pts[i].time - pts[i - 1].time != step) run_start = i;
        // pts[i] is a target once `window` contiguous points precede it.
        if (i - run_start >= window) {
            for (std::size_t k = i - window; k < i; ++k) ds.inputs.push_back(pts[k].value);
            ds.targets.push_back(pts[i].value);
            ds.target_times.push_back(pts[i].time);
        }
    }
    return ds;
}

WindowDataset scaled(const WindowDataset& ds, const Scaler& scaler) {
    WindowDataset out = ds;
    for (auto& v : out.inputs) v = scaler.transform(v);
    for (auto& v : out.targets) v = scaler.transform(v);
    return out;
}

std::pair<TimeSeries, TimeSeries> chronological_split(const TimeSeries& ts, double fraction) {
    if (!(fraction > 0.0 && fraction < 1.0)) throw std::invalid_argument("split fraction must lie in (0, 1)");
    const auto pts = ts.points();
    const auto cut = static_cast<std::size_t>(std::floor(static_cast<double>(pts.size()) * fraction));
    std::vector<Point> head(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(cut));
    std::vector<Point> tail(pts.begin() + static_cast<std::ptrdiff_t>(cut), pts.end());
    return {TimeSeries::build(std::move(head), ts.resolution(), ts.unit()).series,
            TimeSeries::build(std::move(tail), ts.resolution(), ts.unit()).series};
}

PreparedData prepare(const TimeSeries& hourly, std::size_t window, double split_fraction) {
    auto [train_ts, test_ts] = chronological_split(hourly, split_fraction);
    const auto train_values = train_ts.values();
    Scaler scaler = Scaler::fit(train_values);
    return {scaler, scaled(make_windows(train_ts, window), scaler), scaled(make_windows(test_ts, window), scaler)};
}

std::size_t longest_contiguous_run(const TimeSeries& ts) {
    const auto pts = ts.points();
    if (pts.empty()) return 0;
    const auto step = duration_of(ts.resolution());
    std::size_t best = 1, run = 1;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        run = (pts[i].time - pts[i - 1].time == step) ? run + 1 : 1;
        best = std::max(best, run);
    }
    return best;
}

}  // namespace pm25::forecast
