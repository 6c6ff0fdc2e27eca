#include <radonad/detectors.hpp>
#include <radonad/rng.hpp>
#include <radonad/sphering.hpp>

#include <benchmark/benchmark.h>

namespace {

using namespace radonad;

TimeSeries noise_series(Rng& rng, std::size_t length, std::size_t channels) {
  Matrix v(static_cast<Eigen::Index>(length), static_cast<Eigen::Index>(channels));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.normal();
  return TimeSeries(v);
}

std::vector<TimeSeries> noise_set(std::size_t n, std::size_t length, std::size_t channels, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<TimeSeries> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(noise_series(rng, length, channels));
  return out;
}

// Cumulative Radon features of one series, default 100 x 20 grid.
void BM_CrExtraction(benchmark::State& state) {
  const auto length = static_cast<std::size_t>(state.range(0));
  const auto train = noise_set(4, length, 3, 1);
  const auto det = fit_detector(train, WindowConfig{}, RadonConfig{}, DetectorConfig{});
  const auto query = noise_set(1, length, 3, 2)[0];
  for (auto _ : state) benchmark::DoNotOptimize(det.cr_features(query));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CrExtraction)->Arg(100)->Arg(1000)->Arg(10000);

// Sphering fit on N rows of the default D = 2000.
void BM_SpheringFit(benchmark::State& state) {
  Rng rng(3);
  Matrix rows(state.range(0), 2000);
  for (Eigen::Index i = 0; i < rows.size(); ++i) rows(i) = rng.uniform();
  for (auto _ : state) benchmark::DoNotOptimize(fit_sphering(rows));
}
BENCHMARK(BM_SpheringFit)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

// Mean-distance scoring of one series against a bank of N.
void BM_Scoring(benchmark::State& state) {
  const auto train = noise_set(static_cast<std::size_t>(state.range(0)), 200, 3, 4);
  const auto det = fit_detector(train, WindowConfig{}, RadonConfig{}, DetectorConfig{});
  const auto query = noise_set(1, 200, 3, 5)[0];
  for (auto _ : state) benchmark::DoNotOptimize(score_series(det, query));
}
BENCHMARK(BM_Scoring)->Arg(20)->Arg(200);

}  // namespace
BENCHMARK_MAIN();
