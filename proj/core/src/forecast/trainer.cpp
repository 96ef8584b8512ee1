#include "pm25/forecast/trainer.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "pm25/forecast/bptt.hpp"

namespace pm25::forecast {

std::string_view to_string(CellKind k) { return k == CellKind::Rnn ? "rnn" : "lstm"; }

std::optional<CellKind> parse_cell_kind(std::string_view text) {
    if (text == "rnn") return CellKind::Rnn;
    if (text == "lstm") return CellKind::Lstm;
    return std::nullopt;
}

void TrainConfig::validate() const {
    if (window == 0 || hidden == 0 || epochs == 0 || batch_size == 0) {
        throw std::invalid_argument("window, hidden, epochs and batch_size must be positive");
    }
    if (horizon != 1) throw std::invalid_argument("only a one-step horizon is supported");
    if (!(learning_rate > 0.0) || !(clip_norm > 0.0)) {
        throw std::invalid_argument("learning_rate and clip_norm must be positive");
    }
    if (!(split > 0.0 && split < 1.0)) throw std::invalid_argument("split must lie in (0, 1)");
}

ForecastModel::ForecastModel(TrainConfig config, Scaler scaler, NetworkParams params)
    : config_(config), scaler_(scaler), params_(std::move(params)) {
    config_.cell = cell();
    config_.hidden = hidden();
}

CellKind ForecastModel::cell() const {
    return std::holds_alternative<RnnParams>(params_) ? CellKind::Rnn : CellKind::Lstm;
}

std::size_t ForecastModel::hidden() const {
    return std::visit([](const auto& p) { return p.hidden(); }, params_);
}

std::span<const double> ForecastModel::flat() const {
    return std::visit([](const auto& p) { return p.flat(); }, params_);
}

double ForecastModel::predict_scaled(std::span<const double> window) const {
    if (const auto* r = std::get_if<RnnParams>(&params_)) return rnn_predict(*r, window);
    return lstm_predict(std::get<LstmParams>(params_), window);
}

double ForecastModel::predict(std::span<const double> window) const {
    std::vector<double> s(window.size());
    for (std::size_t i = 0; i < window.size(); ++i) s[i] = scaler_.transform(window[i]);
    return scaler_.invert(predict_scaled(s));
}

NetworkParams init_params(CellKind cell, std::size_t hidden, Rng& rng) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(hidden));
    auto fill = [&](auto params) {
        for (auto& v : params.flat()) v = rng.uniform(-bound, bound);
        return NetworkParams{std::move(params)};
    };
    if (cell == CellKind::Rnn) return fill(RnnParams{hidden});
    return fill(LstmParams{hidden});
}

Adam::Adam(std::size_t n, double learning_rate) : lr_(learning_rate), m_(n, 0.0), v_(n, 0.0) {}

void Adam::step(std::span<double> params, std::span<const double> grad) {
    constexpr double beta1 = 0.9;
    constexpr double beta2 = 0.999;
    constexpr double eps = 1e-8;
    ++t_;
    const double c1 = 1.0 - std::pow(beta1, static_cast<double>(t_));
    const double c2 = 1.0 - std::pow(beta2, static_cast<double>(t_));
    for (std::size_t i = 0; i < params.size(); ++i) {
        m_[i] = beta1 * m_[i] + (1.0 - beta1) * grad[i];
        v_[i] = beta2 * v_[i] + (1.0 - beta2) * grad[i] * grad[i];
        const double m_hat = m_[i] / c1;
        const double v_hat = v_[i] / c2;
        params[i] -= lr_ * m_hat / (std::sqrt(v_hat) + eps);
    }
}

double clip_global_norm(std::span<double> grad, double max_norm) {
    double sq = 0.0;
    for (double g : grad) sq += g * g;
    const double norm = std::sqrt(sq);
    if (norm > max_norm) {
        const double s = max_norm / norm;
        for (auto& g : grad) g *= s;
    }
    return norm;
}

double loss_and_grad(const NetworkParams& p, const WindowDataset& ds, std::span<const std::size_t> batch,
                     NetworkParams* grad) {
    if (const auto* r = std::get_if<RnnParams>(&p)) {
        return rnn_loss(*r, ds, batch, grad ? &std::get<RnnParams>(*grad) : nullptr);
    }
    return lstm_loss(std::get<LstmParams>(p), ds, batch, grad ? &std::get<LstmParams>(*grad) : nullptr);
}

TrainResult train(const WindowDataset& ds, const Scaler& scaler, const TrainConfig& cfg) {
    cfg.validate();
    if (ds.empty()) throw std::invalid_argument("cannot train on an empty dataset");
    if (ds.window != cfg.window) throw std::invalid_argument("dataset window differs from the configured window");

    Rng rng(cfg.seed);
    NetworkParams params = init_params(cfg.cell, cfg.hidden, rng);
    NetworkParams grad = params;
    auto flat = [](NetworkParams& p) { return std::visit([](auto& q) { return q.flat(); }, p); };

    std::vector<std::size_t> order(ds.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    const double initial_loss = loss_and_grad(params, ds, order, nullptr);
    if (!std::isfinite(initial_loss)) throw TrainingError("non-finite loss before training");

    Adam adam(flat(params).size(), cfg.learning_rate);
    std::vector<double> history;
    history.reserve(cfg.epochs);

    for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
        for (std::size_t i = order.size(); i > 1; --i) {
            std::swap(order[i - 1], order[rng.below(i)]);
        }
        double epoch_loss = 0.0;
        for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
            const auto len = std::min(cfg.batch_size, order.size() - start);
            const std::span<const std::size_t> batch(order.data() + start, len);
            const double loss = loss_and_grad(params, ds, batch, &grad);
            if (!std::isfinite(loss)) {
                throw TrainingError("training diverged at epoch " + std::to_string(epoch));
            }
            epoch_loss += loss * static_cast<double>(len);
            auto g = flat(grad);
            clip_global_norm(g, cfg.clip_norm);
            adam.step(flat(params), g);
        }
        epoch_loss /= static_cast<double>(order.size());
        if (!std::isfinite(epoch_loss)) throw TrainingError("training diverged at epoch " + std::to_string(epoch));
        history.push_back(epoch_loss);
    }

    return {ForecastModel{cfg, scaler, std::move(params)}, initial_loss, std::move(history)};
}

}  // namespace pm25::forecast
