#include "pm25/forecast/bptt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace pm25::forecast {

namespace {

void check_grad_shape(std::size_t hidden, std::size_t grad_hidden) {
    if (hidden != grad_hidden) throw std::invalid_argument("gradient buffer has the wrong hidden size");
}

/// One row of the recurrent backward pass: g_row += d * h_prev and
/// dh_prev += d * w_row. The buffers never overlap, which lets the compiler
/// vectorize both updates.
void accumulate_outer_row(double d, const double* __restrict__ h_prev, const double* __restrict__ w_row,
                          double* __restrict__ g_row, double* __restrict__ dh_prev, std::size_t m) {
    for (std::size_t j = 0; j < m; ++j) {
        g_row[j] += d * h_prev[j];
        dh_prev[j] += w_row[j] * d;
    }
}

}  // namespace

double rnn_predict(const RnnParams& p, std::span<const double> window) {
    const std::size_t m = p.hidden();
    std::vector<double> h(m, 0.0), next(m);
    for (double x : window) {
        rnn_hidden_into(x, h, p, next);
        h.swap(next);
    }
    return readout(p.w_y(), p.b_y(), h);
}

double lstm_predict(const LstmParams& p, std::span<const double> window) {
    const std::size_t m = p.hidden();
    std::vector<double> h(m, 0.0), c(m, 0.0), h_next(m), c_next(m), gates(LstmParams::kGates * m);
    for (double x : window) {
        lstm_step_into(x, h, c, p, gates, c_next, h_next);
        h.swap(h_next);
        c.swap(c_next);
    }
    return readout(p.w_y(), p.b_y(), h);
}

double rnn_loss(const RnnParams& p, const WindowDataset& ds, std::span<const std::size_t> batch, RnnParams* grad) {
    if (batch.empty()) throw std::invalid_argument("empty batch");
    const std::size_t m = p.hidden();
    const std::size_t T = ds.window;
    if (grad) {
        check_grad_shape(m, grad->hidden());
        std::fill(grad->flat().begin(), grad->flat().end(), 0.0);
    }

    // hs[t] is the state after step t; hs[0] is the zero initial state.
    std::vector<double> hs((T + 1) * m);
    std::vector<double> dh(m), dh_prev(m), da(m);
    const auto wh = p.w_h();
    const auto wy = p.w_y();
    const double inv_b = 1.0 / static_cast<double>(batch.size());
    double loss = 0.0;

    for (const std::size_t idx : batch) {
        const auto x = ds.input(idx);
        std::fill(hs.begin(), hs.begin() + static_cast<std::ptrdiff_t>(m), 0.0);
        for (std::size_t t = 0; t < T; ++t) {
            rnn_hidden_into(x[t], std::span<const double>(hs).subspan(t * m, m), p,
                            std::span<double>(hs).subspan((t + 1) * m, m));
        }
        const std::span<const double> h_last(hs.data() + T * m, m);
        const double err = readout(wy, p.b_y(), h_last) - ds.targets[idx];
        loss += err * err * inv_b;
        if (!grad) continue;

        const double dy = 2.0 * err * inv_b;
        auto g_wx = grad->w_x();
        auto g_wh = grad->w_h();
        auto g_bh = grad->b_h();
        auto g_wy = grad->w_y();
        for (std::size_t i = 0; i < m; ++i) {
            g_wy[i] += dy * h_last[i];
            dh[i] = dy * wy[i];
        }
        grad->b_y() += dy;

        for (std::size_t t = T; t-- > 0;) {
            const double* h_t = hs.data() + (t + 1) * m;
            const double* h_prev = hs.data() + t * m;
            std::fill(dh_prev.begin(), dh_prev.end(), 0.0);
            for (std::size_t i = 0; i < m; ++i) {
                da[i] = dh[i] * (1.0 - h_t[i] * h_t[i]);
                g_wx[i] += da[i] * x[t];
                g_bh[i] += da[i];
                accumulate_outer_row(da[i], h_prev, wh.data() + i * m, g_wh.data() + i * m, dh_prev.data(), m);
            }
            dh.swap(dh_prev);
        }
    }
    return loss;
}

double lstm_loss(const LstmParams& p, const WindowDataset& ds, std::span<const std::size_t> batch,
                 LstmParams* grad) {
    if (batch.empty()) throw std::invalid_argument("empty batch");
    constexpr std::size_t G = LstmParams::kGates;
    const std::size_t m = p.hidden();
    const std::size_t T = ds.window;
    if (grad) {
        check_grad_shape(m, grad->hidden());
        std::fill(grad->flat().begin(), grad->flat().end(), 0.0);
    }

    // Index 0 of hs/cs is the zero initial state; gates[t] belongs to step t+1.
    std::vector<double> hs((T + 1) * m), cs((T + 1) * m), gates(T * G * m), tanh_cs(T * m);
    std::vector<double> dh(m), dc(m), dh_prev(m), dz(G * m);
    const auto wy = p.w_y();
    const double inv_b = 1.0 / static_cast<double>(batch.size());
    double loss = 0.0;

    for (const std::size_t idx : batch) {
        const auto x = ds.input(idx);
        std::fill(hs.begin(), hs.begin() + static_cast<std::ptrdiff_t>(m), 0.0);
        std::fill(cs.begin(), cs.begin() + static_cast<std::ptrdiff_t>(m), 0.0);
        for (std::size_t t = 0; t < T; ++t) {
            lstm_step_into(x[t], std::span<const double>(hs).subspan(t * m, m),
                           std::span<const double>(cs).subspan(t * m, m), p,
                           std::span<double>(gates).subspan(t * G * m, G * m),
                           std::span<double>(cs).subspan((t + 1) * m, m),
                           std::span<double>(hs).subspan((t + 1) * m, m),
                           std::span<double>(tanh_cs).subspan(t * m, m));
        }
        const std::span<const double> h_last(hs.data() + T * m, m);
        const double err = readout(wy, p.b_y(), h_last) - ds.targets[idx];
        loss += err * err * inv_b;
        if (!grad) continue;

        const double dy = 2.0 * err * inv_b;
        auto g_wy = grad->w_y();
        for (std::size_t i = 0; i < m; ++i) {
            g_wy[i] += dy * h_last[i];
            dh[i] = dy * wy[i];
            dc[i] = 0.0;
        }
        grad->b_y() += dy;

        for (std::size_t t = T; t-- > 0;) {
            const double* act = gates.data() + t * G * m;
            const double* ig = act;
            const double* fg = act + m;
            const double* cg = act + 2 * m;
            const double* og = act + 3 * m;
            const double* tanh_c = tanh_cs.data() + t * m;
            const double* c_prev = cs.data() + t * m;
            const double* h_prev = hs.data() + t * m;

            for (std::size_t i = 0; i < m; ++i) {
                const double tc = tanh_c[i];
                const double d_o = dh[i] * tc;
                const double d_c = dc[i] + dh[i] * og[i] * (1.0 - tc * tc);
                dz[LstmParams::Input * m + i] = d_c * cg[i] * ig[i] * (1.0 - ig[i]);
                dz[LstmParams::Forget * m + i] = d_c * c_prev[i] * fg[i] * (1.0 - fg[i]);
                dz[LstmParams::Candidate * m + i] = d_c * ig[i] * (1.0 - cg[i] * cg[i]);
                dz[LstmParams::Output * m + i] = d_o * og[i] * (1.0 - og[i]);
                dc[i] = d_c * fg[i];
            }

            std::fill(dh_prev.begin(), dh_prev.end(), 0.0);
            for (std::size_t g = 0; g < G; ++g) {
                const auto gate = static_cast<LstmParams::Gate>(g);
                const auto wh = p.w_h(gate);
                auto g_wx = grad->w_x(gate);
                auto g_wh = grad->w_h(gate);
                auto g_b = grad->bias(gate);
                for (std::size_t i = 0; i < m; ++i) {
                    const double d = dz[g * m + i];
                    g_wx[i] += d * x[t];
                    g_b[i] += d;
                    accumulate_outer_row(d, h_prev, wh.data() + i * m, g_wh.data() + i * m, dh_prev.data(), m);
                }
            }
            dh.swap(dh_prev);
        }
    }
    return loss;
}

}  // namespace pm25::forecast
