#include "pm25/forecast/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "pm25/stats.hpp"

namespace pm25::forecast {

namespace {

void check(std::span<const double> y, std::span<const double> yhat) {
    if (y.size() != yhat.size()) throw std::invalid_argument("metric inputs differ in length");
    if (y.empty()) throw std::invalid_argument("metric of an empty sample");
}

}  // namespace

double rmse(std::span<const double> y, std::span<const double> yhat) {
    check(y, yhat);
    double acc = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double d = y[i] - yhat[i];
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(y.size()));
}

double mae(std::span<const double> y, std::span<const double> yhat) {
    check(y, yhat);
    double acc = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) acc += std::abs(y[i] - yhat[i]);
    return acc / static_cast<double>(y.size());
}

std::optional<double> r_squared(std::span<const double> y, std::span<const double> yhat) {
    if (y.size() != yhat.size()) throw std::invalid_argument("metric inputs differ in length");
    auto r = pearson(y, yhat);
    if (!r) return std::nullopt;
    return *r * *r;
}

std::optional<double> coefficient_of_determination(std::span<const double> y, std::span<const double> yhat) {
    if (y.size() != yhat.size()) throw std::invalid_argument("metric inputs differ in length");
    if (y.size() < 2) return std::nullopt;
    double mean = 0.0;
    for (double v : y) mean += v;
    mean /= static_cast<double>(y.size());
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        ss_res += (y[i] - yhat[i]) * (y[i] - yhat[i]);
        ss_tot += (y[i] - mean) * (y[i] - mean);
    }
    if (!(ss_tot > 0.0)) return std::nullopt;
    return 1.0 - ss_res / ss_tot;
}

}  // namespace pm25::forecast
