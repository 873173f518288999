#include "irc/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include <fmt/core.h>

#include "irc/errors.hpp"

namespace irc::scenario {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> axis_points(double lo, double hi, double step) {
  const auto n = static_cast<std::size_t>(std::llround((hi - lo) / step)) + 1;
  std::vector<double> xs(n);
  for (std::size_t k = 0; k < n; ++k) xs[k] = lo + static_cast<double>(k) * step;
  return xs;
}

// Runs body(k) for k in [0, n) on all hardware threads. Results must be
// written to per-index slots, so completion order never affects output.
template <typename Body>
void parallel_for(std::size_t n, Body&& body) {
  const std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 64);
  if (workers == 1 || n < 2) {
    for (std::size_t k = 0; k < n; ++k) body(k);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t k = w; k < n; k += workers) body(k);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

std::pair<double, double> uniform_split() { return {0.5, 0.5}; }

}  // namespace

std::string_view to_string(Protocol p) noexcept {
  switch (p) {
    case Protocol::AF: return "af";
    case Protocol::DF: return "df";
    case Protocol::EfBl: return "ef-bl";
    case Protocol::EfSl: return "ef-sl";
  }
  return "af";
}

Protocol parse_protocol(std::string_view text) {
  for (Protocol p : kAllProtocols) {
    if (text == to_string(p)) return p;
  }
  throw DomainError(fmt::format("unknown protocol '{}' (expected af, df, ef-bl or ef-sl)", text));
}

std::string_view to_string(PaPolicy p) noexcept { return p == PaPolicy::Uniform ? "uniform" : "optimal"; }

PaPolicy parse_pa_policy(std::string_view text) {
  if (text == "uniform") return PaPolicy::Uniform;
  if (text == "optimal") return PaPolicy::Optimal;
  throw DomainError(fmt::format("unknown power-allocation policy '{}' (expected uniform or optimal)", text));
}

std::vector<double> Sweep::xs() const { return axis_points(x_min, x_max, step); }
std::vector<double> Sweep::ys() const { return axis_points(y_min, y_max, step); }
std::vector<double> SliceSpec::xs() const { return axis_points(x_min, x_max, step); }

bool ScenarioConfig::enabled(Protocol p) const noexcept {
  return std::find(protocols.begin(), protocols.end(), p) != protocols.end();
}

ChannelInstance ScenarioConfig::channel_at(double x_d0, double y_d0) const {
  NodeLayout l = layout;
  l.relay = {x_d0 * layout.d0, y_d0 * layout.d0};
  return layout_to_channel(l, powers, noises);
}

ChannelInstance ScenarioConfig::channel() const {
  if (channel_override) return *channel_override;
  return layout_to_channel(layout, powers, noises);
}

ScenarioConfig default_config(PowerScenario powers) {
  ScenarioConfig c;
  c.layout = default_layout();
  c.powers = powers == PowerScenario::Symmetric ? Powers{10.0, 10.0, 10.0} : Powers{3.0, 10.0, 10.0};
  c.noises = {1.0, 1.0, 1.0};
  return c;
}

Protocol pick_winner(const std::array<double, 4>& sum) {
  Protocol winner = Protocol::AF;
  double best = -std::numeric_limits<double>::infinity();
  for (Protocol p : kAllProtocols) {
    const double v = sum[static_cast<std::size_t>(p)];
    if (!std::isnan(v) && v > best) {
      best = v;
      winner = p;
    }
  }
  return winner;
}

CellEvaluation evaluate_cell(const ChannelInstance& ch, const ScenarioConfig& config) {
  CellEvaluation e;
  e.sum.fill(kNaN);
  const auto slot = [](Protocol p) { return static_cast<std::size_t>(p); };
  const bool uniform = config.pa_policy == PaPolicy::Uniform;

  if (config.enabled(Protocol::AF)) {
    e.af = af::sum_rate_gain(ch, {config.optimizer.af_scan_points, config.optimizer.af_tolerance});
    e.sum[slot(Protocol::AF)] = e.af.rates.sum();
  }
  if (config.enabled(Protocol::DF)) {
    df::SearchGrid grid;
    grid.tau_points = config.optimizer.df_grid_points;
    grid.nu_points = config.optimizer.pa_grid_points;
    if (uniform) grid.fixed_nu = uniform_split();
    e.df = df::sum_rate_search(ch, grid);
    e.sum[slot(Protocol::DF)] = e.df.rates.sum();
  }
  if (config.enabled(Protocol::EfBl)) {
    const auto [nu1, nu2] = uniform_split();
    e.ef_bl = uniform ? ef::bi_at_min_noise(ch, nu1, nu2)
                      : ef::bi_sum_rate_search(ch, config.optimizer.pa_grid_points);
    e.sum[slot(Protocol::EfBl)] = e.ef_bl.rates.sum();
  }
  if (config.enabled(Protocol::EfSl)) {
    const ef::Options options{config.r0_exponent};
    try {
      e.ef_sl_nwz = ef::sl_min_noise(ch, options);
      e.ef_sl = ef::sl_rate(ch, e.ef_sl_nwz, options);
      e.sum[slot(Protocol::EfSl)] = e.ef_sl.sum();
    } catch (const InfeasibleError&) {
      e.ef_sl_nwz = std::numeric_limits<double>::infinity();
      e.ef_sl = {};
      e.infeasible[slot(Protocol::EfSl)] = true;
      e.sum[slot(Protocol::EfSl)] = 0.0;
    }
  }
  e.winner = pick_winner(e.sum);
  return e;
}

DominanceMap dominance_map(const ScenarioConfig& config) {
  config.validate();
  const std::vector<double> xs = config.map_sweep.xs();
  const std::vector<double> ys = config.map_sweep.ys();
  DominanceMap map;
  map.nx = xs.size();
  map.ny = ys.size();
  map.cells.resize(map.nx * map.ny);
  parallel_for(map.cells.size(), [&](std::size_t k) {
    MapCell& cell = map.cells[k];
    cell.xr = xs[k % map.nx];
    cell.yr = ys[k / map.nx];
    const CellEvaluation e = evaluate_cell(config.channel_at(cell.xr, cell.yr), config);
    cell.sum = e.sum;
    cell.infeasible = e.infeasible;
    cell.winner = e.winner;
    cell.af_gain = e.af.gain;
    cell.bl_scenario = config.enabled(Protocol::EfBl)
                           ? e.ef_bl.scenario
                           : ef::bi_scenario(config.channel_at(cell.xr, cell.yr), 0.5, 0.5);
  });
  return map;
}

std::vector<SliceRow> sum_rate_slice(const ScenarioConfig& config, double y_fixed) {
  config.validate();
  const std::vector<double> xs = config.slice.xs();
  std::vector<SliceRow> rows(xs.size());
  parallel_for(rows.size(), [&](std::size_t k) {
    const ChannelInstance ch = config.channel_at(xs[k], y_fixed);
    const CellEvaluation e = evaluate_cell(ch, config);
    rows[k].xr = xs[k];
    rows[k].sum = e.sum;
    rows[k].af_gain = e.af.gain;
    rows[k].bl_scenario = config.enabled(Protocol::EfBl) ? e.ef_bl.scenario : ef::bi_scenario(ch, 0.5, 0.5);
  });
  return rows;
}

SlBlMap sl_vs_bl_map(const ScenarioConfig& config) {
  config.validate();
  ScenarioConfig ef_only = config;
  ef_only.protocols = {Protocol::EfBl, Protocol::EfSl};

  const std::vector<double> xs = config.slmap_sweep.xs();
  const std::vector<double> ys = config.slmap_sweep.ys();
  SlBlMap map;
  map.nx = xs.size();
  map.ny = ys.size();
  map.cells.resize(map.nx * map.ny);
  parallel_for(map.cells.size(), [&](std::size_t k) {
    SlBlCell& cell = map.cells[k];
    cell.xr = xs[k % map.nx];
    cell.yr = ys[k / map.nx];
    const CellEvaluation e = evaluate_cell(config.channel_at(cell.xr, cell.yr), ef_only);
    cell.bl_sum = e.sum[static_cast<std::size_t>(Protocol::EfBl)];
    cell.sl_sum = e.sum[static_cast<std::size_t>(Protocol::EfSl)];
    cell.bl_scenario = e.ef_bl.scenario;
    cell.winner = cell.bl_sum >= cell.sl_sum ? Protocol::EfBl : Protocol::EfSl;
  });
  for (std::size_t iy = 0; iy < map.ny; ++iy) {
    for (std::size_t ix = 0; ix < map.nx; ++ix) {
      SlBlCell& cell = map.cells[iy * map.nx + ix];
      const bool right = ix + 1 < map.nx && map.cells[iy * map.nx + ix + 1].bl_scenario != cell.bl_scenario;
      const bool up = iy + 1 < map.ny && map.cells[(iy + 1) * map.nx + ix].bl_scenario != cell.bl_scenario;
      cell.frontier = right || up;
    }
  }
  return map;
}

std::vector<std::size_t> detect_jumps(std::span<const double> values, double factor) {
  if (values.size() < 2) return {};
  std::vector<double> diffs(values.size() - 1);
  for (std::size_t k = 0; k + 1 < values.size(); ++k) diffs[k] = std::abs(values[k + 1] - values[k]);
  std::vector<double> sorted = diffs;
  const std::size_t mid = sorted.size() / 2;
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(mid), sorted.end());
  double median = sorted[mid];
  if (sorted.size() % 2 == 0) {
    const double lower = *std::max_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(mid));
    median = 0.5 * (median + lower);
  }
  std::vector<std::size_t> jumps;
  for (std::size_t k = 0; k < diffs.size(); ++k) {
    if (diffs[k] > factor * median) jumps.push_back(k);
  }
  return jumps;
}

}  // namespace irc::scenario
