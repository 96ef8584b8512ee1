#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <variant>
#include <vector>

#include "pm25/forecast/cells.hpp"
#include "pm25/forecast/dataset.hpp"
#include "pm25/random.hpp"

namespace pm25::forecast {

enum class CellKind { Rnn, Lstm };

std::string_view to_string(CellKind k);
std::optional<CellKind> parse_cell_kind(std::string_view text);

struct TrainConfig {
    CellKind cell = CellKind::Lstm;
    std::size_t window = 24;
    std::size_t horizon = 1;
    std::size_t hidden = 32;
    std::size_t epochs = 50;
    std::size_t batch_size = 32;
    double learning_rate = 1e-3;
    double split = 0.8;
    double clip_norm = 5.0;
    std::uint64_t seed = 42;

    /// Throws std::invalid_argument on a non-positive field, split outside
    /// (0, 1) or horizon != 1.
    void validate() const;

    friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

using NetworkParams = std::variant<RnnParams, LstmParams>;

/// A trained network with the scaler it was trained under. Immutable.
class ForecastModel {
public:
    ForecastModel(TrainConfig config, Scaler scaler, NetworkParams params);

    const TrainConfig& config() const { return config_; }
    const Scaler& scaler() const { return scaler_; }
    const NetworkParams& params() const { return params_; }
    CellKind cell() const;
    std::size_t hidden() const;
    std::span<const double> flat() const;

    /// Scaled window in, scaled next value out.
    double predict_scaled(std::span<const double> window) const;
    /// Raw ug/m3 window in, ug/m3 out.
    double predict(std::span<const double> window) const;

    friend bool operator==(const ForecastModel&, const ForecastModel&) = default;

private:
    TrainConfig config_;
    Scaler scaler_;
    NetworkParams params_;
};

class TrainingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct TrainResult {
    ForecastModel model;
    double initial_loss = 0.0;         // full training-set MSE before the first update
    std::vector<double> loss_history;  // mean per-sample MSE seen during each epoch
};

/// Weights and biases uniform in +-1/sqrt(hidden).
NetworkParams init_params(CellKind cell, std::size_t hidden, Rng& rng);

/// Adam: beta1 0.9, beta2 0.999, eps 1e-8.
class Adam {
public:
    Adam(std::size_t n, double learning_rate);
    void step(std::span<double> params, std::span<const double> grad);

private:
    double lr_;
    std::vector<double> m_;
    std::vector<double> v_;
    std::uint64_t t_ = 0;
};

/// Scales `grad` in place so its L2 norm is at most max_norm. Returns the
/// norm before clipping.
double clip_global_norm(std::span<double> grad, double max_norm);

/// Mean squared error and gradient over `batch` for either network kind.
double loss_and_grad(const NetworkParams& p, const WindowDataset& ds, std::span<const std::size_t> batch,
                     NetworkParams* grad);

/// Minibatch training with shuffling, Adam and global-norm clipping. The
/// seed alone drives initialization and shuffling, so equal inputs give a
/// bit-identical loss history. Throws std::invalid_argument for an empty
/// dataset and TrainingError naming the epoch if the loss stops being finite.
TrainResult train(const WindowDataset& train_scaled, const Scaler& scaler, const TrainConfig& cfg);

}  // namespace pm25::forecast
