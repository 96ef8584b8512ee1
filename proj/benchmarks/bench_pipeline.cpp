#include <benchmark/benchmark.h>

#include "pm25/analytics.hpp"
#include "pm25/correction.hpp"
#include "pm25/forecast/trainer.hpp"
#include "pm25/synth.hpp"

using namespace pm25;

namespace {

std::vector<BinnedRecord> month_of_minutes() {
    synth::SiteProfile p;
    p.noise_std = 5.0;
    const auto start = Timestamp::from_civil(2023, 1, 1);
    return to_binned(synth::generate(p, start, start + std::chrono::days{30}));
}

void BM_AltCf3Series(benchmark::State& state) {
    const auto records = month_of_minutes();
    const auto params = CorrectionParams::standard();
    for (auto _ : state) benchmark::DoNotOptimize(correct_series(records, params));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(records.size()));
}
BENCHMARK(BM_AltCf3Series)->Unit(benchmark::kMillisecond);

void BM_ResampleMinuteToHour(benchmark::State& state) {
    const auto alt = correct_series(month_of_minutes(), CorrectionParams::standard());
    for (auto _ : state) benchmark::DoNotOptimize(resample(alt, Resolution::Hour));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(alt.size()));
}
BENCHMARK(BM_ResampleMinuteToHour)->Unit(benchmark::kMillisecond);

void BM_LossAndGrad(benchmark::State& state) {
    const auto hidden = static_cast<std::size_t>(state.range(0));
    const auto cell = state.range(1) ? forecast::CellKind::Lstm : forecast::CellKind::Rnn;
    Rng rng(1);
    forecast::WindowDataset ds;
    ds.window = 24;
    for (int i = 0; i < 32; ++i) {
        for (int k = 0; k < 24; ++k) ds.inputs.push_back(rng.uniform());
        ds.targets.push_back(rng.uniform());
        ds.target_times.push_back(Timestamp::from_epoch_seconds(3600 * i));
    }
    std::vector<std::size_t> batch(32);
    for (std::size_t i = 0; i < batch.size(); ++i) batch[i] = i;
    const auto params = forecast::init_params(cell, hidden, rng);
    auto grad = params;
    for (auto _ : state) benchmark::DoNotOptimize(forecast::loss_and_grad(params, ds, batch, &grad));
}
BENCHMARK(BM_LossAndGrad)->Args({8, 0})->Args({32, 0})->Args({8, 1})->Args({32, 1})->Unit(benchmark::kMicrosecond);

void BM_CorrelationMatrix(benchmark::State& state) {
    std::map<std::string, TimeSeries> sites;
    for (int s = 0; s < 5; ++s) {
        Rng rng(static_cast<std::uint64_t>(s));
        std::vector<Point> pts;
        for (int d = 0; d < 365; ++d) pts.push_back({Timestamp::from_epoch_seconds(86400LL * d), rng.uniform(5, 80)});
        sites.emplace("site" + std::to_string(s), TimeSeries::build(pts, Resolution::Day).series);
    }
    for (auto _ : state) benchmark::DoNotOptimize(correlation_matrix(sites));
}
BENCHMARK(BM_CorrelationMatrix);

}  // namespace

BENCHMARK_MAIN();
