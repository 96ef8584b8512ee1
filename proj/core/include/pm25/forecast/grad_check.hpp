#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "pm25/forecast/cells.hpp"
#include "pm25/forecast/dataset.hpp"

namespace pm25::forecast {

struct GradCheckResult {
    double max_rel_error = 0.0;
    std::size_t worst_index = 0;
    std::size_t checked = 0;
};

using LossFn = std::function<double(std::span<const double>)>;
using GradFn = std::function<std::vector<double>(std::span<const double>)>;

/// Compares every analytic partial against a central difference with step
/// `epsilon`. The relative error of one partial is
/// |a - n| / max(|a|, |n|, floor); `floor` keeps partials that are zero in
/// both forms from dividing by zero.
GradCheckResult grad_check(std::span<const double> params, const LossFn& loss, const GradFn& grad,
                           double epsilon = 1e-5, double floor = 1e-8);

/// Batch-loss gradient checks for the two cell kinds.
GradCheckResult grad_check(const RnnParams& p, const WindowDataset& ds, std::span<const std::size_t> batch,
                           double epsilon = 1e-5);
GradCheckResult grad_check(const LstmParams& p, const WindowDataset& ds, std::span<const std::size_t> batch,
                           double epsilon = 1e-5);

}  // namespace pm25::forecast
