#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "irc/af.hpp"
#include "irc/channel.hpp"
#include "irc/df.hpp"
#include "irc/ef.hpp"

namespace irc::scenario {

/// Fixed order; earlier protocols win exact ties.
enum class Protocol { AF = 0, DF = 1, EfBl = 2, EfSl = 3 };
inline constexpr std::array<Protocol, 4> kAllProtocols{Protocol::AF, Protocol::DF, Protocol::EfBl,
                                                       Protocol::EfSl};

std::string_view to_string(Protocol p) noexcept;
Protocol parse_protocol(std::string_view text);

/// Relay power split for DF and bi-level EF: uniform fixes nu1 = nu2 = 1/2,
/// optimal searches the simplex for the best sum rate.
enum class PaPolicy { Uniform, Optimal };

std::string_view to_string(PaPolicy p) noexcept;
PaPolicy parse_pa_policy(std::string_view text);

enum class PowerScenario { Symmetric, Asymmetric };

/// Rectangular relay-position grid, all coordinates in units of d0.
struct Sweep {
  double x_min = -4.0;
  double x_max = 4.0;
  double y_min = -3.0;
  double y_max = 4.0;
  double step = 0.25;

  std::vector<double> xs() const;
  std::vector<double> ys() const;
};

/// One-dimensional sweep along x at fixed y (units of d0).
struct SliceSpec {
  double y = 0.5;
  double x_min = -4.0;
  double x_max = 4.0;
  double step = 0.0025;

  std::vector<double> xs() const;
};

struct OptimizerSettings {
  std::size_t af_scan_points = 10000;
  double af_tolerance = 1e-10;
  /// Points per tau axis for DF.
  std::size_t df_grid_points = 101;
  /// Points per nu axis when pa_policy is optimal (DF and bi-level EF).
  std::size_t pa_grid_points = 21;
};

struct ScenarioConfig {
  /// Node placement; layout.relay (meters) is the position used by
  /// single-channel commands.
  NodeLayout layout;
  Powers powers;
  Noises noises;
  Sweep map_sweep;
  Sweep slmap_sweep{-2.0, 3.0, -2.0, 3.0, 0.25};
  SliceSpec slice;
  PaPolicy pa_policy = PaPolicy::Uniform;
  OptimizerSettings optimizer;
  std::vector<Protocol> protocols{kAllProtocols.begin(), kAllProtocols.end()};
  ef::R0Exponent r0_exponent = ef::R0Exponent::Two;
  /// Explicit channel for single-channel commands; replaces the geometry.
  std::optional<ChannelInstance> channel_override;

  /// Throws ConfigError naming the offending field.
  void validate() const;
  bool enabled(Protocol p) const noexcept;
  /// Channel for a relay at (x, y) in units of d0.
  ChannelInstance channel_at(double x_d0, double y_d0) const;
  /// Channel used by single-channel commands.
  ChannelInstance channel() const;
};

/// Reference setup: default_layout(), N = 1, P_r = 10 and P1 = P2 = 10
/// (symmetric) or P1 = 3, P2 = 10 (asymmetric).
ScenarioConfig default_config(PowerScenario powers = PowerScenario::Symmetric);

/// JSON config I/O. Unknown keys are rejected; missing keys take defaults.
ScenarioConfig parse_config(std::string_view json_text);
ScenarioConfig load_config(const std::string& path);
std::string to_json(const ScenarioConfig& config);

/// Every protocol's optimised operating point for one channel.
struct CellEvaluation {
  af::SumRateResult af;
  df::SearchResult df;
  ef::BiSearchResult ef_bl;
  double ef_sl_nwz = 0.0;
  RatePair ef_sl;
  /// Sum rate per protocol (index by Protocol); NaN when disabled.
  std::array<double, 4> sum{};
  /// Set when the protocol had no admissible operating point (rate 0 recorded).
  std::array<bool, 4> infeasible{};
  Protocol winner = Protocol::AF;
};

CellEvaluation evaluate_cell(const ChannelInstance& ch, const ScenarioConfig& config);

/// First enabled protocol in fixed order attaining the largest sum rate.
Protocol pick_winner(const std::array<double, 4>& sum);

struct MapCell {
  double xr = 0.0;
  double yr = 0.0;
  std::array<double, 4> sum{};
  std::array<bool, 4> infeasible{};
  Protocol winner = Protocol::AF;
  ef::BiScenario bl_scenario = ef::BiScenario::D1Better;
  double af_gain = 0.0;
};

struct DominanceMap {
  std::size_t nx = 0;
  std::size_t ny = 0;
  /// Row-major: y outer (ascending), x inner (ascending).
  std::vector<MapCell> cells;
};

DominanceMap dominance_map(const ScenarioConfig& config);

struct SliceRow {
  double xr = 0.0;
  std::array<double, 4> sum{};
  ef::BiScenario bl_scenario = ef::BiScenario::D1Better;
  double af_gain = 0.0;
};

std::vector<SliceRow> sum_rate_slice(const ScenarioConfig& config, double y_fixed);

struct SlBlCell {
  double xr = 0.0;
  double yr = 0.0;
  double sl_sum = 0.0;
  double bl_sum = 0.0;
  ef::BiScenario bl_scenario = ef::BiScenario::D1Better;
  /// EfBl or EfSl; bi-level wins exact ties.
  Protocol winner = Protocol::EfBl;
  /// Scenario tag differs from the right or upper neighbour.
  bool frontier = false;
};

struct SlBlMap {
  std::size_t nx = 0;
  std::size_t ny = 0;
  std::vector<SlBlCell> cells;
};

SlBlMap sl_vs_bl_map(const ScenarioConfig& config);

/// Indices k such that |v[k+1] - v[k]| exceeds factor times the median
/// absolute adjacent difference.
std::vector<std::size_t> detect_jumps(std::span<const double> values, double factor = 10.0);

// CSV, 12 significant digits. Disabled protocols print as empty fields.
void write_map_csv(std::ostream& out, const DominanceMap& map);
DominanceMap read_map_csv(std::istream& in);
void write_slice_csv(std::ostream& out, const std::vector<SliceRow>& rows);
void write_slmap_csv(std::ostream& out, const SlBlMap& map);

inline constexpr std::string_view kMapCsvHeader = "xr,yr,af,df,ef_bl,ef_sl,winner,bl_scenario";

}  // namespace irc::scenario
