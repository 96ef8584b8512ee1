#include "pm25/forecast/cells.hpp"

#include <cmath>

namespace pm25::forecast {

namespace {

/// Dot product with four interleaved partial sums, which breaks the add
/// dependency chain. The summation order is fixed, so results stay
/// bit-reproducible.
double dot(const double* a, const double* b, std::size_t n) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        s0 += a[j] * b[j];
        s1 += a[j + 1] * b[j + 1];
        s2 += a[j + 2] * b[j + 2];
        s3 += a[j + 3] * b[j + 3];
    }
    for (; j < n; ++j) s0 += a[j] * b[j];
    return (s0 + s1) + (s2 + s3);
}

}  // namespace

RnnParams::RnnParams(std::size_t hidden) : hidden_(hidden), values_(count_for(hidden), 0.0) {}

LstmParams::LstmParams(std::size_t hidden) : hidden_(hidden), values_(count_for(hidden), 0.0) {}

double logistic(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

double readout(std::span<const double> w_y, double b_y, std::span<const double> h) {
    double y = b_y;
    for (std::size_t i = 0; i < h.size(); ++i) y += w_y[i] * h[i];
    return y;
}

void rnn_hidden_into(double x, std::span<const double> h_prev, const RnnParams& p, std::span<double> h_out) {
    const std::size_t m = p.hidden();
    const auto wx = p.w_x();
    const auto wh = p.w_h();
    const auto bh = p.b_h();
    for (std::size_t i = 0; i < m; ++i) {
        const double a = wx[i] * x + bh[i] + dot(wh.data() + i * m, h_prev.data(), m);
        h_out[i] = std::tanh(a);
    }
}

RnnStep rnn_cell(double x, std::span<const double> h_prev, const RnnParams& p) {
    RnnStep out;
    out.h.resize(p.hidden());
    rnn_hidden_into(x, h_prev, p, out.h);
    out.y = readout(p.w_y(), p.b_y(), out.h);
    return out;
}

void lstm_step_into(double x, std::span<const double> h_prev, std::span<const double> c_prev,
                    const LstmParams& p, std::span<double> gates_out, std::span<double> c_out,
                    std::span<double> h_out, std::span<double> tanh_c_out) {
    const std::size_t m = p.hidden();
    for (std::size_t g = 0; g < LstmParams::kGates; ++g) {
        const auto gate = static_cast<LstmParams::Gate>(g);
        const auto wx = p.w_x(gate);
        const auto wh = p.w_h(gate);
        const auto b = p.bias(gate);
        double* act = gates_out.data() + g * m;
        for (std::size_t i = 0; i < m; ++i) {
            const double z = wx[i] * x + b[i] + dot(wh.data() + i * m, h_prev.data(), m);
            act[i] = gate == LstmParams::Candidate ? std::tanh(z) : logistic(z);
        }
    }
    const double* in = gates_out.data();
    const double* fg = in + m;
    const double* cand = in + 2 * m;
    const double* og = in + 3 * m;
    for (std::size_t i = 0; i < m; ++i) {
        c_out[i] = fg[i] * c_prev[i] + in[i] * cand[i];
        const double tc = std::tanh(c_out[i]);
        h_out[i] = og[i] * tc;
        if (!tanh_c_out.empty()) tanh_c_out[i] = tc;
    }
}

LstmStep lstm_cell(double x, std::span<const double> h_prev, std::span<const double> c_prev, const LstmParams& p) {
    const std::size_t m = p.hidden();
    std::vector<double> gates(LstmParams::kGates * m);
    LstmStep out;
    out.h.resize(m);
    out.c.resize(m);
    lstm_step_into(x, h_prev, c_prev, p, gates, out.c, out.h);
    for (std::size_t g = 0; g < LstmParams::kGates; ++g) {
        out.gates[g].assign(gates.begin() + static_cast<std::ptrdiff_t>(g * m),
                            gates.begin() + static_cast<std::ptrdiff_t>((g + 1) * m));
    }
    return out;
}

}  // namespace pm25::forecast
