#include "pm25/forecast/evaluate.hpp"

#include <stdexcept>

#include "pm25/forecast/metrics.hpp"

namespace pm25::forecast {

Evaluation evaluate(const Predictor& predict, const WindowDataset& ds, const Scaler& scaler) {
    if (ds.empty()) throw std::invalid_argument("cannot evaluate on an empty test set");
    Evaluation out;
    auto& tr = out.trace;
    tr.times = ds.target_times;
    tr.observed.reserve(ds.size());
    tr.predicted.reserve(ds.size());
    tr.persistence.reserve(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) {
        tr.observed.push_back(scaler.invert(ds.targets[i]));
        tr.predicted.push_back(scaler.invert(predict(ds.input(i))));
        tr.persistence.push_back(scaler.invert(ds.last_input(i)));
    }
    auto& r = out.report;
    r.n_test = ds.size();
    r.rmse = rmse(tr.observed, tr.predicted);
    r.mae = mae(tr.observed, tr.predicted);
    r.r2 = r_squared(tr.observed, tr.predicted);
    r.r2_determination = coefficient_of_determination(tr.observed, tr.predicted);
    r.baseline_rmse = rmse(tr.observed, tr.persistence);
    r.baseline_mae = mae(tr.observed, tr.persistence);
    return out;
}

Evaluation evaluate(const ForecastModel& model, const WindowDataset& ds) {
    return evaluate([&model](std::span<const double> w) { return model.predict_scaled(w); }, ds, model.scaler());
}

}  // namespace pm25::forecast
