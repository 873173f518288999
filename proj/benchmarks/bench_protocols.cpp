#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "irc/af.hpp"
#include "irc/df.hpp"
#include "irc/ef.hpp"
#include "irc/random.hpp"
#include "irc/scenario.hpp"

namespace {

std::vector<irc::ChannelInstance> channels(std::size_t n) {
  std::mt19937_64 rng(1);
  std::vector<irc::ChannelInstance> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back(irc::random_channel(rng));
  return out;
}

void BM_AfOptimalGain(benchmark::State& state) {
  const auto chs = channels(256);
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(irc::af::optimal_gain(chs[k++ % chs.size()], irc::User::One));
  }
}
BENCHMARK(BM_AfOptimalGain);

void BM_AfSumRateGain(benchmark::State& state) {
  const auto chs = channels(64);
  std::size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(irc::af::sum_rate_gain(chs[k++ % chs.size()]));
}
BENCHMARK(BM_AfSumRateGain);

void BM_DfSearchUniform(benchmark::State& state) {
  const auto chs = channels(16);
  irc::df::SearchGrid grid;
  grid.tau_points = static_cast<std::size_t>(state.range(0));
  grid.fixed_nu = std::pair{0.5, 0.5};
  std::size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(irc::df::sum_rate_search(chs[k++ % chs.size()], grid));
}
BENCHMARK(BM_DfSearchUniform)->Arg(21)->Arg(101);

void BM_EfBiSearch(benchmark::State& state) {
  const auto chs = channels(16);
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(irc::ef::bi_sum_rate_search(chs[k++ % chs.size()], static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_EfBiSearch)->Arg(11)->Arg(21);

void BM_EfSingleLevel(benchmark::State& state) {
  const auto chs = channels(256);
  std::size_t k = 0;
  for (auto _ : state) {
    const auto& ch = chs[k++ % chs.size()];
    benchmark::DoNotOptimize(irc::ef::sl_rate(ch, irc::ef::sl_min_noise(ch)));
  }
}
BENCHMARK(BM_EfSingleLevel);

void BM_EvaluateCell(benchmark::State& state) {
  auto cfg = irc::scenario::default_config();
  if (state.range(0) == 1) cfg.pa_policy = irc::scenario::PaPolicy::Optimal;
  const auto ch = cfg.channel_at(0.5, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(irc::scenario::evaluate_cell(ch, cfg));
}
BENCHMARK(BM_EvaluateCell)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
