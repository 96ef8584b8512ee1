#pragma once

#include <cstddef>
#include <span>

#include "pm25/forecast/cells.hpp"
#include "pm25/forecast/dataset.hpp"

namespace pm25::forecast {

/// Forward pass over one window from a zero state; returns the read-out at
/// the last step.
double rnn_predict(const RnnParams& p, std::span<const double> window);
double lstm_predict(const LstmParams& p, std::span<const double> window);

/// Mean squared error of the last-step prediction over the windows listed in
/// `batch`. When `grad` is non-null it is overwritten with the full
/// backpropagation-through-time gradient of that loss; it must have the
/// same hidden size as `p`.
double rnn_loss(const RnnParams& p, const WindowDataset& ds, std::span<const std::size_t> batch,
                RnnParams* grad = nullptr);
double lstm_loss(const LstmParams& p, const WindowDataset& ds, std::span<const std::size_t> batch,
                 LstmParams* grad = nullptr);

}  // namespace pm25::forecast
