#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "pm25/forecast/dataset.hpp"
#include "pm25/forecast/trainer.hpp"

namespace pm25::forecast {

struct EvalReport {
    double rmse = 0.0;
    double mae = 0.0;
    std::optional<double> r2;                // squared Pearson
    std::optional<double> r2_determination;  // 1 - SS_res/SS_tot
    double baseline_rmse = 0.0;              // persistence
    double baseline_mae = 0.0;
    std::size_t n_test = 0;
};

/// Observed and forecast values in ug/m3, aligned by target time.
struct ForecastTrace {
    std::vector<Timestamp> times;
    std::vector<double> observed;
    std::vector<double> predicted;
    std::vector<double> persistence;
};

struct Evaluation {
    EvalReport report;
    ForecastTrace trace;
};

/// Scaled window in, scaled prediction out.
using Predictor = std::function<double(std::span<const double>)>;

/// Inverts predictions and targets to ug/m3 before scoring; the persistence
/// baseline predicts the last input of each window. Throws
/// std::invalid_argument for an empty test set.
Evaluation evaluate(const Predictor& predict, const WindowDataset& test_scaled, const Scaler& scaler);
Evaluation evaluate(const ForecastModel& model, const WindowDataset& test_scaled);

}  // namespace pm25::forecast
