#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace pm25::forecast {

/// Elman recurrent cell with a linear read-out, scalar input.
///
/// Flat layout (this order is also the serialized order):
///   w_x[m]        input -> hidden
///   w_h[m*m]      hidden -> hidden, row i holds the weights into unit i
///   b_h[m]        hidden bias
///   w_y[m]        hidden -> output
///   b_y           output bias
class RnnParams {
public:
    explicit RnnParams(std::size_t hidden = 1);

    static std::size_t count_for(std::size_t hidden) { return hidden * hidden + 3 * hidden + 1; }

    std::size_t hidden() const { return hidden_; }
    std::size_t size() const { return values_.size(); }

    std::span<double> flat() { return values_; }
    std::span<const double> flat() const { return values_; }

    std::span<double> w_x() { return flat().subspan(0, hidden_); }
    std::span<double> w_h() { return flat().subspan(hidden_, hidden_ * hidden_); }
    std::span<double> b_h() { return flat().subspan(hidden_ + hidden_ * hidden_, hidden_); }
    std::span<double> w_y() { return flat().subspan(2 * hidden_ + hidden_ * hidden_, hidden_); }
    double& b_y() { return values_.back(); }

    std::span<const double> w_x() const { return flat().subspan(0, hidden_); }
    std::span<const double> w_h() const { return flat().subspan(hidden_, hidden_ * hidden_); }
    std::span<const double> b_h() const { return flat().subspan(hidden_ + hidden_ * hidden_, hidden_); }
    std::span<const double> w_y() const { return flat().subspan(2 * hidden_ + hidden_ * hidden_, hidden_); }
    double b_y() const { return values_.back(); }

    friend bool operator==(const RnnParams&, const RnnParams&) = default;

private:
    std::size_t hidden_;
    std::vector<double> values_;
};

/// Four-gate LSTM with logistic input/forget/output gates and a tanh
/// candidate, followed by a linear read-out.
///
/// Flat layout: for each gate in Gate order, w_x[m], w_h[m*m] (row i feeds
/// unit i), b[m]; then w_y[m] and b_y.
class LstmParams {
public:
    enum Gate : std::size_t { Input = 0, Forget = 1, Candidate = 2, Output = 3 };
    static constexpr std::size_t kGates = 4;

    explicit LstmParams(std::size_t hidden = 1);

    static std::size_t gate_block(std::size_t hidden) { return hidden * hidden + 2 * hidden; }
    static std::size_t count_for(std::size_t hidden) { return kGates * gate_block(hidden) + hidden + 1; }

    std::size_t hidden() const { return hidden_; }
    std::size_t size() const { return values_.size(); }

    std::span<double> flat() { return values_; }
    std::span<const double> flat() const { return values_; }

    std::span<double> w_x(Gate g) { return flat().subspan(g * gate_block(hidden_), hidden_); }
    std::span<double> w_h(Gate g) { return flat().subspan(g * gate_block(hidden_) + hidden_, hidden_ * hidden_); }
    std::span<double> bias(Gate g) {
        return flat().subspan(g * gate_block(hidden_) + hidden_ + hidden_ * hidden_, hidden_);
    }
    std::span<double> w_y() { return flat().subspan(kGates * gate_block(hidden_), hidden_); }
    double& b_y() { return values_.back(); }

    std::span<const double> w_x(Gate g) const { return flat().subspan(g * gate_block(hidden_), hidden_); }
    std::span<const double> w_h(Gate g) const {
        return flat().subspan(g * gate_block(hidden_) + hidden_, hidden_ * hidden_);
    }
    std::span<const double> bias(Gate g) const {
        return flat().subspan(g * gate_block(hidden_) + hidden_ + hidden_ * hidden_, hidden_);
    }
    std::span<const double> w_y() const { return flat().subspan(kGates * gate_block(hidden_), hidden_); }
    double b_y() const { return values_.back(); }

    friend bool operator==(const LstmParams&, const LstmParams&) = default;

private:
    std::size_t hidden_;
    std::vector<double> values_;
};

double logistic(double z);

struct RnnStep {
    std::vector<double> h;
    double y = 0.0;
};

/// h_t = tanh(w_x x_t + W_h h_prev + b_h), y_t = w_y . h_t + b_y.
RnnStep rnn_cell(double x, std::span<const double> h_prev, const RnnParams& p);

/// Allocation-free form of the hidden update used by training.
void rnn_hidden_into(double x, std::span<const double> h_prev, const RnnParams& p, std::span<double> h_out);

struct LstmStep {
    std::vector<double> h;
    std::vector<double> c;
    std::array<std::vector<double>, LstmParams::kGates> gates;  // post-activation, Gate order
};

/// c_t = f*c_prev + i*g, h_t = o*tanh(c_t).
LstmStep lstm_cell(double x, std::span<const double> h_prev, std::span<const double> c_prev,
                   const LstmParams& p);

/// Allocation-free form. `gates_out` holds kGates*m activations in Gate order.
/// When `tanh_c_out` is non-empty it receives tanh(c_t) for reuse in the
/// backward pass.
void lstm_step_into(double x, std::span<const double> h_prev, std::span<const double> c_prev,
                    const LstmParams& p, std::span<double> gates_out, std::span<double> c_out,
                    std::span<double> h_out, std::span<double> tanh_c_out = {});

/// Linear read-out w_y . h + b_y.
double readout(std::span<const double> w_y, double b_y, std::span<const double> h);

}  // namespace pm25::forecast
