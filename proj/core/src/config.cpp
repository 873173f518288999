#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <fmt/core.h>

#include "irc/errors.hpp"
#include "irc/scenario.hpp"
#include "json.hpp"

namespace irc::scenario {
namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<std::string_view> known) {
  if (!obj.is_object()) throw ConfigError(where, fmt::format("'{}' must be an object", where));
  for (const auto& [key, value] : obj.items()) {
    bool found = false;
    for (std::string_view k : known) found = found || key == k;
    if (!found) {
      const std::string field = where.empty() ? key : where + "." + key;
      throw ConfigError(field, fmt::format("unknown key '{}'", field));
    }
  }
}

std::string join(const std::string& where, std::string_view key) {
  return where.empty() ? std::string(key) : where + "." + std::string(key);
}

double read_number(const json& obj, const std::string& where, std::string_view key, double fallback) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number()) throw ConfigError(join(where, key), fmt::format("'{}' must be a number", join(where, key)));
  const double v = it->get<double>();
  if (!std::isfinite(v)) throw ConfigError(join(where, key), fmt::format("'{}' must be finite", join(where, key)));
  return v;
}

std::size_t read_count(const json& obj, const std::string& where, std::string_view key, std::size_t fallback) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number_unsigned()) {
    throw ConfigError(join(where, key), fmt::format("'{}' must be a nonnegative integer", join(where, key)));
  }
  return it->get<std::size_t>();
}

Point2 read_point(const json& obj, const std::string& where, std::string_view key, Point2 fallback) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  const std::string field = join(where, key);
  if (!it->is_array() || it->size() != 2 || !(*it)[0].is_number() || !(*it)[1].is_number()) {
    throw ConfigError(field, fmt::format("'{}' must be [x, y]", field));
  }
  return {(*it)[0].get<double>(), (*it)[1].get<double>()};
}

Complex read_complex(const json& value, const std::string& field) {
  if (value.is_number()) return {value.get<double>(), 0.0};
  if (value.is_array() && value.size() == 2 && value[0].is_number() && value[1].is_number()) {
    return {value[0].get<double>(), value[1].get<double>()};
  }
  throw ConfigError(field, fmt::format("'{}' must be a number or [re, im]", field));
}

Sweep read_sweep(const json& root, std::string_view key, Sweep s) {
  const auto it = root.find(key);
  if (it == root.end()) return s;
  const std::string where(key);
  reject_unknown(*it, where, {"x_min", "x_max", "y_min", "y_max", "step"});
  s.x_min = read_number(*it, where, "x_min", s.x_min);
  s.x_max = read_number(*it, where, "x_max", s.x_max);
  s.y_min = read_number(*it, where, "y_min", s.y_min);
  s.y_max = read_number(*it, where, "y_max", s.y_max);
  s.step = read_number(*it, where, "step", s.step);
  return s;
}

void check_sweep(const Sweep& s, const std::string& where) {
  if (!(s.step > 0.0)) throw ConfigError(where + ".step", fmt::format("'{}.step' must be positive", where));
  if (s.x_max < s.x_min) throw ConfigError(where + ".x_max", fmt::format("'{}.x_max' is below x_min", where));
  if (s.y_max < s.y_min) throw ConfigError(where + ".y_max", fmt::format("'{}.y_max' is below y_min", where));
  const double cells = (std::floor((s.x_max - s.x_min) / s.step) + 1) * (std::floor((s.y_max - s.y_min) / s.step) + 1);
  if (cells > 1e7) throw ConfigError(where + ".step", fmt::format("'{}' has too many cells", where));
}

json point_json(Point2 p) { return json::array({p.x, p.y}); }
json complex_json(Complex c) { return json::array({c.real(), c.imag()}); }

json sweep_json(const Sweep& s) {
  return {{"x_min", s.x_min}, {"x_max", s.x_max}, {"y_min", s.y_min}, {"y_max", s.y_max}, {"step", s.step}};
}

constexpr std::array<std::string_view, 8> kGainNames{"h11", "h12", "h21", "h22", "h1r", "h2r", "hr1", "hr2"};

std::array<Complex*, 8> gain_slots(ChannelInstance& ch) {
  return {&ch.h11, &ch.h12, &ch.h21, &ch.h22, &ch.h1r, &ch.h2r, &ch.hr1, &ch.hr2};
}

}  // namespace

void ScenarioConfig::validate() const {
  const auto positive = [](double v, const char* field) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(field, fmt::format("'{}' must be positive", field));
  };
  positive(powers.p1, "powers.p1");
  positive(powers.p2, "powers.p2");
  positive(powers.pr, "powers.pr");
  positive(noises.n1, "noises.n1");
  positive(noises.n2, "noises.n2");
  positive(noises.nr, "noises.nr");
  positive(layout.d0, "layout.d0");
  positive(layout.gamma, "layout.gamma");
  if (!(layout.epsilon >= 0.0)) throw ConfigError("layout.epsilon", "'layout.epsilon' must be nonnegative");
  check_sweep(map_sweep, "map_sweep");
  check_sweep(slmap_sweep, "slmap_sweep");
  if (!(slice.step > 0.0)) throw ConfigError("slice.step", "'slice.step' must be positive");
  if (slice.x_max < slice.x_min) throw ConfigError("slice.x_max", "'slice.x_max' is below x_min");
  if (optimizer.af_scan_points < 2) throw ConfigError("optimizer.af_scan_points", "'optimizer.af_scan_points' must be at least 2");
  if (!(optimizer.af_tolerance > 0.0)) throw ConfigError("optimizer.af_tolerance", "'optimizer.af_tolerance' must be positive");
  if (optimizer.df_grid_points < 2) throw ConfigError("optimizer.df_grid_points", "'optimizer.df_grid_points' must be at least 2");
  if (optimizer.pa_grid_points < 2) throw ConfigError("optimizer.pa_grid_points", "'optimizer.pa_grid_points' must be at least 2");
  if (protocols.empty()) throw ConfigError("protocols", "'protocols' must name at least one protocol");
  try {
    layout.validate();
    if (channel_override) channel_override->validate();
  } catch (const DomainError& e) {
    throw ConfigError(channel_override ? "channel" : "layout", e.what());
  }
}

ScenarioConfig parse_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", fmt::format("invalid JSON: {}", e.what()));
  }
  reject_unknown(root, "", {"power_scenario", "layout", "powers", "noises", "map_sweep", "slmap_sweep", "slice",
                            "pa_policy", "optimizer", "protocols", "r0_exponent", "channel"});

  PowerScenario base = PowerScenario::Symmetric;
  if (const auto it = root.find("power_scenario"); it != root.end()) {
    const std::string v = it->is_string() ? it->get<std::string>() : "";
    if (v == "symmetric") base = PowerScenario::Symmetric;
    else if (v == "asymmetric") base = PowerScenario::Asymmetric;
    else throw ConfigError("power_scenario", "'power_scenario' must be \"symmetric\" or \"asymmetric\"");
  }
  ScenarioConfig c = default_config(base);

  if (const auto it = root.find("layout"); it != root.end()) {
    const json& l = *it;
    reject_unknown(l, "layout", {"s1", "s2", "d1", "d2", "relay", "d0", "gamma", "epsilon"});
    c.layout.s1 = read_point(l, "layout", "s1", c.layout.s1);
    c.layout.s2 = read_point(l, "layout", "s2", c.layout.s2);
    c.layout.d1 = read_point(l, "layout", "d1", c.layout.d1);
    c.layout.d2 = read_point(l, "layout", "d2", c.layout.d2);
    c.layout.d0 = read_number(l, "layout", "d0", c.layout.d0);
    c.layout.gamma = read_number(l, "layout", "gamma", c.layout.gamma);
    c.layout.epsilon = read_number(l, "layout", "epsilon", c.layout.epsilon);
    // The relay is given in units of d0, like the sweep grids.
    const Point2 relay_d0{c.layout.relay.x / default_layout().d0, c.layout.relay.y / default_layout().d0};
    const Point2 r = read_point(l, "layout", "relay", relay_d0);
    c.layout.relay = {r.x * c.layout.d0, r.y * c.layout.d0};
  }
  if (const auto it = root.find("powers"); it != root.end()) {
    reject_unknown(*it, "powers", {"p1", "p2", "pr"});
    c.powers.p1 = read_number(*it, "powers", "p1", c.powers.p1);
    c.powers.p2 = read_number(*it, "powers", "p2", c.powers.p2);
    c.powers.pr = read_number(*it, "powers", "pr", c.powers.pr);
  }
  if (const auto it = root.find("noises"); it != root.end()) {
    reject_unknown(*it, "noises", {"n1", "n2", "nr"});
    c.noises.n1 = read_number(*it, "noises", "n1", c.noises.n1);
    c.noises.n2 = read_number(*it, "noises", "n2", c.noises.n2);
    c.noises.nr = read_number(*it, "noises", "nr", c.noises.nr);
  }
  c.map_sweep = read_sweep(root, "map_sweep", c.map_sweep);
  c.slmap_sweep = read_sweep(root, "slmap_sweep", c.slmap_sweep);
  if (const auto it = root.find("slice"); it != root.end()) {
    reject_unknown(*it, "slice", {"y", "x_min", "x_max", "step"});
    c.slice.y = read_number(*it, "slice", "y", c.slice.y);
    c.slice.x_min = read_number(*it, "slice", "x_min", c.slice.x_min);
    c.slice.x_max = read_number(*it, "slice", "x_max", c.slice.x_max);
    c.slice.step = read_number(*it, "slice", "step", c.slice.step);
  }
  if (const auto it = root.find("pa_policy"); it != root.end()) {
    try {
      c.pa_policy = parse_pa_policy(it->is_string() ? it->get<std::string>() : "");
    } catch (const DomainError& e) {
      throw ConfigError("pa_policy", e.what());
    }
  }
  if (const auto it = root.find("optimizer"); it != root.end()) {
    reject_unknown(*it, "optimizer", {"af_scan_points", "af_tolerance", "df_grid_points", "pa_grid_points"});
    auto& o = c.optimizer;
    o.af_scan_points = read_count(*it, "optimizer", "af_scan_points", o.af_scan_points);
    o.af_tolerance = read_number(*it, "optimizer", "af_tolerance", o.af_tolerance);
    o.df_grid_points = read_count(*it, "optimizer", "df_grid_points", o.df_grid_points);
    o.pa_grid_points = read_count(*it, "optimizer", "pa_grid_points", o.pa_grid_points);
  }
  if (const auto it = root.find("protocols"); it != root.end()) {
    if (!it->is_array()) throw ConfigError("protocols", "'protocols' must be an array of names");
    c.protocols.clear();
    for (const json& p : *it) {
      try {
        const Protocol parsed = parse_protocol(p.is_string() ? p.get<std::string>() : "");
        if (!c.enabled(parsed)) c.protocols.push_back(parsed);
      } catch (const DomainError& e) {
        throw ConfigError("protocols", e.what());
      }
    }
  }
  if (const auto it = root.find("r0_exponent"); it != root.end()) {
    const double v = it->is_number() ? it->get<double>() : 0.0;
    if (v == 1.0) c.r0_exponent = ef::R0Exponent::One;
    else if (v == 2.0) c.r0_exponent = ef::R0Exponent::Two;
    else throw ConfigError("r0_exponent", "'r0_exponent' must be 1 or 2");
  }
  if (const auto it = root.find("channel"); it != root.end()) {
    reject_unknown(*it, "channel", {"h11", "h12", "h21", "h22", "h1r", "h2r", "hr1", "hr2"});
    ChannelInstance ch{};
    ch.power = c.powers;
    ch.noise = c.noises;
    const auto slots = gain_slots(ch);
    for (std::size_t k = 0; k < kGainNames.size(); ++k) {
      const auto g = it->find(kGainNames[k]);
      const std::string field = join("channel", kGainNames[k]);
      if (g == it->end()) throw ConfigError(field, fmt::format("'{}' is required", field));
      *slots[k] = read_complex(*g, field);
    }
    c.channel_override = ch;
  }
  c.validate();
  return c;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", fmt::format("cannot open config file '{}'", path));
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string to_json(const ScenarioConfig& c) {
  json protocols = json::array();
  for (Protocol p : c.protocols) protocols.push_back(std::string(to_string(p)));
  json root = {
      {"layout",
       {{"s1", point_json(c.layout.s1)},
        {"s2", point_json(c.layout.s2)},
        {"d1", point_json(c.layout.d1)},
        {"d2", point_json(c.layout.d2)},
        {"relay", point_json({c.layout.relay.x / c.layout.d0, c.layout.relay.y / c.layout.d0})},
        {"d0", c.layout.d0},
        {"gamma", c.layout.gamma},
        {"epsilon", c.layout.epsilon}}},
      {"powers", {{"p1", c.powers.p1}, {"p2", c.powers.p2}, {"pr", c.powers.pr}}},
      {"noises", {{"n1", c.noises.n1}, {"n2", c.noises.n2}, {"nr", c.noises.nr}}},
      {"map_sweep", sweep_json(c.map_sweep)},
      {"slmap_sweep", sweep_json(c.slmap_sweep)},
      {"slice", {{"y", c.slice.y}, {"x_min", c.slice.x_min}, {"x_max", c.slice.x_max}, {"step", c.slice.step}}},
      {"pa_policy", std::string(to_string(c.pa_policy))},
      {"optimizer",
       {{"af_scan_points", c.optimizer.af_scan_points},
        {"af_tolerance", c.optimizer.af_tolerance},
        {"df_grid_points", c.optimizer.df_grid_points},
        {"pa_grid_points", c.optimizer.pa_grid_points}}},
      {"protocols", protocols},
      {"r0_exponent", static_cast<int>(c.r0_exponent)},
  };
  if (c.channel_override) {
    ChannelInstance ch = *c.channel_override;
    const auto slots = gain_slots(ch);
    json gains;
    for (std::size_t k = 0; k < kGainNames.size(); ++k) gains[std::string(kGainNames[k])] = complex_json(*slots[k]);
    root["channel"] = gains;
  }
  return root.dump(2);
}

}  // namespace irc::scenario
