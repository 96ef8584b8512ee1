#pragma once

#include <optional>
#include <span>

namespace pm25::forecast {

/// sqrt(mean((y - yhat)^2)). Throws std::invalid_argument on a length
/// mismatch or empty input.
double rmse(std::span<const double> y, std::span<const double> yhat);

/// mean(|y - yhat|). Same preconditions as rmse.
double mae(std::span<const double> y, std::span<const double> yhat);

/// Squared sample Pearson correlation between y and yhat. Undefined below
/// two points or when either side is constant.
std::optional<double> r_squared(std::span<const double> y, std::span<const double> yhat);

/// 1 - SS_res / SS_tot. Undefined below two points or for constant y.
std::optional<double> coefficient_of_determination(std::span<const double> y, std::span<const double> yhat);

}  // namespace pm25::forecast
