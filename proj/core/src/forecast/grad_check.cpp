#include "pm25/forecast/grad_check.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pm25/forecast/bptt.hpp"

namespace pm25::forecast {

GradCheckResult grad_check(std::span<const double> params, const LossFn& loss, const GradFn& grad, double epsilon,
                           double floor) {
    const auto analytic = grad(params);
    if (analytic.size() != params.size()) throw std::invalid_argument("gradient size differs from parameter count");

    std::vector<double> probe(params.begin(), params.end());
    GradCheckResult out;
    for (std::size_t i = 0; i < probe.size(); ++i) {
        const double saved = probe[i];
        probe[i] = saved + epsilon;
        const double up = loss(probe);
        probe[i] = saved - epsilon;
        const double down = loss(probe);
        probe[i] = saved;

        const double numeric = (up - down) / (2.0 * epsilon);
        const double denom = std::max({std::abs(analytic[i]), std::abs(numeric), floor});
        const double rel = std::abs(analytic[i] - numeric) / denom;
        if (rel > out.max_rel_error) {
            out.max_rel_error = rel;
            out.worst_index = i;
        }
        ++out.checked;
    }
    return out;
}

namespace {

template <class Params, class LossImpl>
GradCheckResult check_network(const Params& p, const WindowDataset& ds, std::span<const std::size_t> batch,
                              double epsilon, LossImpl impl) {
    const std::size_t m = p.hidden();
    auto with = [m](std::span<const double> flat) {
        Params q{m};
        std::copy(flat.begin(), flat.end(), q.flat().begin());
        return q;
    };
    LossFn loss = [&](std::span<const double> flat) { return impl(with(flat), ds, batch, nullptr); };
    GradFn grad = [&](std::span<const double> flat) {
        Params g{m};
        impl(with(flat), ds, batch, &g);
        return std::vector<double>(g.flat().begin(), g.flat().end());
    };
    return grad_check(p.flat(), loss, grad, epsilon);
}

}  // namespace

GradCheckResult grad_check(const RnnParams& p, const WindowDataset& ds, std::span<const std::size_t> batch,
                           double epsilon) {
    return check_network(p, ds, batch, epsilon,
                         [](const RnnParams& q, const WindowDataset& d, std::span<const std::size_t> b, RnnParams* g) {
                             return rnn_loss(q, d, b, g);
                         });
}

GradCheckResult grad_check(const LstmParams& p, const WindowDataset& ds, std::span<const std::size_t> batch,
                           double epsilon) {
    return check_network(p, ds, batch, epsilon,
                         [](const LstmParams& q, const WindowDataset& d, std::span<const std::size_t> b, LstmParams* g) {
                             return lstm_loss(q, d, b, g);
                         });
}

}  // namespace pm25::forecast
