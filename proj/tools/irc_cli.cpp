#include "irc_cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <variant>

#include <fmt/core.h>

#include "CLI11.hpp"
#include "irc/af.hpp"
#include "irc/df.hpp"
#include "irc/discrete.hpp"
#include "irc/discrete_io.hpp"
#include "irc/ef.hpp"
#include "irc/errors.hpp"
#include "irc/random.hpp"
#include "irc/scenario.hpp"
#include "json.hpp"

namespace irc::cli {
namespace {

using nlohmann::ordered_json;
using scenario::Protocol;

struct CommonOptions {
  std::string config_path;
  std::string out_path;
  std::string power_scenario = "symmetric";
  std::string pa;
  int r0_exponent = 0;
  std::vector<std::string> protocols;
  double resolution = 0.0;
};

struct ChannelOptions {
  std::vector<double> relay;
  std::optional<std::uint64_t> seed;
};

struct RateOptions {
  std::optional<double> gain;
  std::optional<double> tau1, tau2, nu1, nu2;
  std::optional<double> nwz1, nwz2, nwz;
};

void add_common(CLI::App* cmd, CommonOptions& o, bool with_protocols, bool with_resolution) {
  cmd->add_option("--config", o.config_path, "Scenario config (JSON); defaults to the reference setup")
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", o.out_path, "Write results to this file instead of stdout");
  cmd->add_option("--power-scenario", o.power_scenario, "Reference powers when no config is given")
      ->check(CLI::IsMember({"symmetric", "asymmetric"}));
  cmd->add_option("--pa", o.pa, "Relay power split policy")->check(CLI::IsMember({"uniform", "optimal"}));
  cmd->add_option("--r0-exponent", o.r0_exponent, "Exponent e in 2^(e R0) - 1 for single-level EF")
      ->check(CLI::IsMember({1, 2}));
  if (with_protocols) {
    cmd->add_option("--protocol", o.protocols, "Protocols to evaluate (repeatable)")
        ->check(CLI::IsMember({"af", "df", "ef-bl", "ef-sl"}));
  }
  if (with_resolution) {
    cmd->add_option("--resolution", o.resolution, "Grid points per d0 (step = 1/N)")->check(CLI::PositiveNumber);
  }
}

void add_channel(CLI::App* cmd, ChannelOptions& o) {
  cmd->add_option("--relay", o.relay, "Relay position x,y in units of d0")->expected(2)->delimiter(',');
  cmd->add_option("--seed", o.seed, "Use a random channel instance drawn with this seed");
}

scenario::ScenarioConfig build_config(const CommonOptions& o) {
  scenario::ScenarioConfig c =
      o.config_path.empty()
          ? scenario::default_config(o.power_scenario == "asymmetric" ? scenario::PowerScenario::Asymmetric
                                                                      : scenario::PowerScenario::Symmetric)
          : scenario::load_config(o.config_path);
  if (!o.pa.empty()) c.pa_policy = scenario::parse_pa_policy(o.pa);
  if (o.r0_exponent != 0) c.r0_exponent = o.r0_exponent == 1 ? ef::R0Exponent::One : ef::R0Exponent::Two;
  if (!o.protocols.empty()) {
    c.protocols.clear();
    for (const std::string& p : o.protocols) {
      const Protocol parsed = scenario::parse_protocol(p);
      if (!c.enabled(parsed)) c.protocols.push_back(parsed);
    }
  }
  if (o.resolution > 0.0) {
    const double step = 1.0 / o.resolution;
    c.map_sweep.step = step;
    c.slmap_sweep.step = step;
    c.slice.step = step;
  }
  c.validate();
  return c;
}

ChannelInstance build_channel(const scenario::ScenarioConfig& c, const ChannelOptions& o) {
  if (o.seed) {
    std::mt19937_64 rng(*o.seed);
    return random_channel(rng);
  }
  if (!o.relay.empty()) return c.channel_at(o.relay[0], o.relay[1]);
  return c.channel();
}

ordered_json rates_json(const RatePair& r) { return {{"r1", r.r1}, {"r2", r.r2}, {"sum", r.sum()}}; }

ordered_json complex_json(Complex z) { return ordered_json::array({z.real(), z.imag()}); }

ordered_json channel_json(const ChannelInstance& ch) {
  return {{"h11", complex_json(ch.h11)}, {"h12", complex_json(ch.h12)}, {"h21", complex_json(ch.h21)},
          {"h22", complex_json(ch.h22)}, {"h1r", complex_json(ch.h1r)}, {"h2r", complex_json(ch.h2r)},
          {"hr1", complex_json(ch.hr1)}, {"hr2", complex_json(ch.hr2)},
          {"powers", {{"p1", ch.power.p1}, {"p2", ch.power.p2}, {"pr", ch.power.pr}}},
          {"noises", {{"n1", ch.noise.n1}, {"n2", ch.noise.n2}, {"nr", ch.noise.nr}}}};
}

// JSON has no infinity; an unbounded noise prints as null.
ordered_json noise_json(double v) { return std::isinf(v) ? ordered_json(nullptr) : ordered_json(v); }

std::pair<double, double> split_for(const scenario::ScenarioConfig& c, const RateOptions& r) {
  const double nu1 = r.nu1.value_or(0.5);
  const double nu2 = r.nu2.value_or(c.pa_policy == scenario::PaPolicy::Uniform ? 0.5 : 1.0 - nu1);
  return {nu1, nu2};
}

ordered_json rate_command(const scenario::ScenarioConfig& c, const ChannelInstance& ch, Protocol p,
                          const RateOptions& r) {
  ordered_json out;
  out["protocol"] = std::string(scenario::to_string(p));
  ordered_json params;
  RatePair rates;
  switch (p) {
    case Protocol::AF: {
      const double sat = af::saturation_gain(ch);
      const double gain = r.gain.value_or(sat);
      if (gain > sat * (1.0 + 1e-12)) {
        throw ConstraintViolation(fmt::format("gain <= {:.12g}", sat),
                                  fmt::format("gain {:.12g} exceeds the relay power limit {:.12g}", gain, sat));
      }
      params = {{"gain", gain}, {"saturation_gain", sat}};
      rates = {af::rate(ch, gain, User::One), af::rate(ch, gain, User::Two)};
      break;
    }
    case Protocol::DF: {
      const auto [nu1, nu2] = split_for(c, r);
      const df::Params dp{r.tau1.value_or(0.0), r.tau2.value_or(0.0), nu1, nu2};
      params = {{"tau1", dp.tau1}, {"tau2", dp.tau2}, {"nu1", dp.nu1}, {"nu2", dp.nu2}};
      rates = df::rates(ch, dp);
      break;
    }
    case Protocol::EfBl: {
      const auto [nu1, nu2] = split_for(c, r);
      const ef::BiScenario s = ef::bi_scenario(ch, nu1, nu2);
      const ef::NoisePair bound = ef::bi_noise_bounds(ch, nu1, nu2, s);
      const ef::BiParams bp{nu1, nu2, r.nwz1.value_or(bound.nwz1), r.nwz2.value_or(bound.nwz2)};
      rates = ef::bi_rate(ch, bp, s);
      params = {{"nu1", nu1},
                {"nu2", nu2},
                {"nwz1", noise_json(bp.nwz1)},
                {"nwz2", noise_json(bp.nwz2)},
                {"nwz1_bound", noise_json(bound.nwz1)},
                {"nwz2_bound", noise_json(bound.nwz2)},
                {"scenario", std::string(ef::to_string(s))}};
      break;
    }
    case Protocol::EfSl: {
      const ef::Options opts{c.r0_exponent};
      const double nwz = r.nwz ? *r.nwz : ef::sl_min_noise(ch, opts);
      rates = ef::sl_rate(ch, nwz, opts);
      params = {{"nwz", noise_json(nwz)},
                {"r0", ef::sl_bottleneck(ch)},
                {"r0_exponent", static_cast<int>(c.r0_exponent)}};
      break;
    }
  }
  out["parameters"] = params;
  out["rates"] = rates_json(rates);
  return out;
}

ordered_json optimize_command(const scenario::ScenarioConfig& c, const ChannelInstance& ch) {
  const scenario::CellEvaluation e = scenario::evaluate_cell(ch, c);
  ordered_json out;
  out["pa_policy"] = std::string(scenario::to_string(c.pa_policy));
  ordered_json protocols = ordered_json::object();
  for (Protocol p : scenario::kAllProtocols) {
    if (!c.enabled(p)) continue;
    ordered_json entry;
    switch (p) {
      case Protocol::AF: {
        ordered_json users = ordered_json::array();
        for (User u : {User::One, User::Two}) {
          const af::Analysis a = af::optimal_gain(ch, u);
          users.push_back({{"user", index_of(u) + 1},
                           {"optimal_gain", a.optimal_gain},
                           {"optimal_rate", a.optimal_rate},
                           {"case", std::string(af::to_string(a.branch))},
                           {"critical_points", a.critical_points},
                           {"asymptote", a.asymptote}});
        }
        entry["parameters"] = {{"gain", e.af.gain}, {"saturation_gain", af::saturation_gain(ch)}};
        entry["per_user"] = users;
        entry["rates"] = rates_json(e.af.rates);
        break;
      }
      case Protocol::DF:
        entry["parameters"] = {{"tau1", e.df.params.tau1},
                               {"tau2", e.df.params.tau2},
                               {"nu1", e.df.params.nu1},
                               {"nu2", e.df.params.nu2}};
        entry["rates"] = rates_json(e.df.rates);
        break;
      case Protocol::EfBl:
        entry["parameters"] = {{"nu1", e.ef_bl.params.nu1},
                               {"nu2", e.ef_bl.params.nu2},
                               {"nwz1", noise_json(e.ef_bl.params.nwz1)},
                               {"nwz2", noise_json(e.ef_bl.params.nwz2)},
                               {"scenario", std::string(ef::to_string(e.ef_bl.scenario))}};
        entry["rates"] = rates_json(e.ef_bl.rates);
        break;
      case Protocol::EfSl:
        entry["parameters"] = {{"nwz", noise_json(e.ef_sl_nwz)}, {"r0", ef::sl_bottleneck(ch)}};
        entry["rates"] = rates_json(e.ef_sl);
        break;
    }
    entry["infeasible"] = e.infeasible[static_cast<std::size_t>(p)];
    protocols[std::string(scenario::to_string(p))] = entry;
  }
  out["protocols"] = protocols;
  out["winner"] = std::string(scenario::to_string(e.winner));
  return out;
}

ordered_json discrete_command(const std::string& path) {
  const discrete::DiscreteInput input = discrete::load_discrete(path);
  ordered_json out;
  if (const auto* joint = std::get_if<discrete::JointInput>(&input)) {
    out["type"] = "joint";
    ordered_json results = ordered_json::array();
    for (const auto& q : joint->queries) {
      results.push_back({{"a", q.a},
                         {"b", q.b},
                         {"c", q.c},
                         {"bits", discrete::conditional_mutual_information(joint->pmf, q.a, q.b, q.c)}});
    }
    out["queries"] = results;
  } else if (const auto* bi = std::get_if<discrete::BiLevelFactorization>(&input)) {
    const auto b = discrete::bi_level_bounds(*bi);
    out["type"] = "bi_level";
    out["r1_cap"] = b.r1_cap;
    out["r2_cap"] = b.r2_cap;
    out["constraints"] = ordered_json::array({{{"lhs", b.lhs1}, {"rhs", b.rhs1}}, {{"lhs", b.lhs2}, {"rhs", b.rhs2}}});
    out["feasible"] = b.feasible;
  } else {
    const auto s = discrete::single_level_bounds(std::get<discrete::SingleLevelFactorization>(input));
    out["type"] = "single_level";
    out["r1_cap"] = s.r1_cap;
    out["r2_cap"] = s.r2_cap;
    out["constraints"] = ordered_json::array({{{"lhs", s.lhs}, {"rhs", s.rhs}}});
    out["feasible"] = s.feasible;
  }
  return out;
}

// Runs `body` against the --out file when one is given, otherwise `out`.
void emit(const std::string& path, std::ostream& out, const std::function<void(std::ostream&)>& body) {
  if (path.empty()) {
    body(out);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ConfigError("--out", fmt::format("cannot open output file '{}'", path));
  body(file);
  if (!file) throw ConfigError("--out", fmt::format("failed writing '{}'", path));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rate and relay-placement calculator for the two-user interference relay channel", "irc"};
  app.require_subcommand(1);

  CommonOptions common;
  ChannelOptions channel;
  RateOptions rate;
  std::string protocol;
  std::optional<double> slice_y;
  std::string pmf_path;

  CLI::App* defaults_cmd = app.add_subcommand("defaults", "Print the reference scenario config");
  defaults_cmd->add_option("--power-scenario", common.power_scenario, "symmetric or asymmetric")
      ->check(CLI::IsMember({"symmetric", "asymmetric"}));
  defaults_cmd->add_option("--out", common.out_path, "Write to this file instead of stdout");

  CLI::App* rate_cmd = app.add_subcommand("rate", "Rate pair of one protocol on one channel");
  add_common(rate_cmd, common, false, false);
  add_channel(rate_cmd, channel);
  rate_cmd->add_option("--protocol", protocol, "Protocol")
      ->required()
      ->check(CLI::IsMember({"af", "df", "ef-bl", "ef-sl"}));
  rate_cmd->add_option("--gain", rate.gain, "AF amplification gain (default: saturation gain)")
      ->check(CLI::NonNegativeNumber);
  rate_cmd->add_option("--tau1", rate.tau1, "DF cooperation degree of user 1");
  rate_cmd->add_option("--tau2", rate.tau2, "DF cooperation degree of user 2");
  rate_cmd->add_option("--nu1", rate.nu1, "Relay power share for user 1");
  rate_cmd->add_option("--nu2", rate.nu2, "Relay power share for user 2");
  rate_cmd->add_option("--nwz1", rate.nwz1, "Bi-level compression noise for receiver 1 (default: bound)");
  rate_cmd->add_option("--nwz2", rate.nwz2, "Bi-level compression noise for receiver 2 (default: bound)");
  rate_cmd->add_option("--nwz", rate.nwz, "Single-level compression noise (default: bound)");

  CLI::App* optimize_cmd = app.add_subcommand("optimize", "Optimise every protocol's parameters on one channel");
  add_common(optimize_cmd, common, true, false);
  add_channel(optimize_cmd, channel);

  CLI::App* map_cmd = app.add_subcommand("map", "Protocol dominance map over relay positions (CSV)");
  add_common(map_cmd, common, true, true);

  CLI::App* slice_cmd = app.add_subcommand("slice", "Sum rates along x at fixed y (CSV)");
  add_common(slice_cmd, common, true, true);
  slice_cmd->add_option("--y", slice_y, "Relay y coordinate in units of d0 (default from config)");

  CLI::App* slmap_cmd = app.add_subcommand("slmap", "Single-level vs bi-level EF map (CSV)");
  add_common(slmap_cmd, common, false, true);

  CLI::App* discrete_cmd = app.add_subcommand("discrete", "Information bounds for a finite-alphabet pmf file");
  discrete_cmd->add_option("pmf", pmf_path, "Pmf or factorisation file (JSON)")->required()->check(CLI::ExistingFile);
  discrete_cmd->add_option("--out", common.out_path, "Write to this file instead of stdout");

  std::vector<std::string> argv_storage{"irc"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (defaults_cmd->parsed()) {
      const auto c = scenario::default_config(common.power_scenario == "asymmetric"
                                                  ? scenario::PowerScenario::Asymmetric
                                                  : scenario::PowerScenario::Symmetric);
      emit(common.out_path, out, [&](std::ostream& s) { s << scenario::to_json(c) << '\n'; });
    } else if (rate_cmd->parsed()) {
      const auto c = build_config(common);
      const auto ch = build_channel(c, channel);
      ordered_json result = rate_command(c, ch, scenario::parse_protocol(protocol), rate);
      if (channel.seed) result["channel"] = channel_json(ch);
      emit(common.out_path, out, [&](std::ostream& s) { s << result.dump(2) << '\n'; });
    } else if (optimize_cmd->parsed()) {
      const auto c = build_config(common);
      const auto ch = build_channel(c, channel);
      ordered_json result = optimize_command(c, ch);
      if (channel.seed) result["channel"] = channel_json(ch);
      emit(common.out_path, out, [&](std::ostream& s) { s << result.dump(2) << '\n'; });
    } else if (map_cmd->parsed()) {
      const auto c = build_config(common);
      const auto map = scenario::dominance_map(c);
      emit(common.out_path, out, [&](std::ostream& s) { scenario::write_map_csv(s, map); });
    } else if (slice_cmd->parsed()) {
      const auto c = build_config(common);
      const auto rows = scenario::sum_rate_slice(c, slice_y.value_or(c.slice.y));
      emit(common.out_path, out, [&](std::ostream& s) { scenario::write_slice_csv(s, rows); });
    } else if (slmap_cmd->parsed()) {
      const auto c = build_config(common);
      const auto map = scenario::sl_vs_bl_map(c);
      emit(common.out_path, out, [&](std::ostream& s) { scenario::write_slmap_csv(s, map); });
    } else if (discrete_cmd->parsed()) {
      const ordered_json result = discrete_command(pmf_path);
      emit(common.out_path, out, [&](std::ostream& s) { s << result.dump(2) << '\n'; });
    }
  } catch (const ConfigError& e) {
    err << "irc: error: " << (e.field().empty() ? "" : "field '" + e.field() + "': ") << e.what() << '\n';
    return 1;
  } catch (const ConstraintViolation& e) {
    err << "irc: error: constraint " << e.bound() << " violated: " << e.what() << '\n';
    return 1;
  } catch (const InfeasibleError& e) {
    err << "irc: error: infeasible: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "irc: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace irc::cli
