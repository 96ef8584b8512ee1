#include "pm25/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pm25 {

std::optional<double> RunningStats::mean() const {
    if (n_ == 0) return std::nullopt;
    return mean_;
}

std::optional<double> RunningStats::variance(StdKind kind) const {
    const std::size_t dof = kind == StdKind::Sample ? 1 : 0;
    if (n_ <= dof) return std::nullopt;
    return std::max(0.0, m2_ / static_cast<double>(n_ - dof));
}

std::optional<double> RunningStats::stddev(StdKind kind) const {
    auto v = variance(kind);
    if (!v) return std::nullopt;
    return std::sqrt(*v);
}

PairMoments PairMoments::compute(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("paired sample lengths differ");
    PairMoments m;
    m.n = x.size();
    if (m.n == 0) return m;
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < m.n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    m.mean_x = sx / static_cast<double>(m.n);
    m.mean_y = sy / static_cast<double>(m.n);
    for (std::size_t i = 0; i < m.n; ++i) {
        const double dx = x[i] - m.mean_x;
        const double dy = y[i] - m.mean_y;
        m.sxx += dx * dx;
        m.syy += dy * dy;
        m.sxy += dx * dy;
    }
    return m;
}

std::optional<double> PairMoments::correlation() const {
    if (n < 2 || !(sxx > 0.0) || !(syy > 0.0)) return std::nullopt;
    const double r = sxy / std::sqrt(sxx * syy);
    return std::clamp(r, -1.0, 1.0);
}

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
    return PairMoments::compute(x, y).correlation();
}

}  // namespace pm25
