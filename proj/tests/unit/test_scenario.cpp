#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "irc/af.hpp"
#include "irc/errors.hpp"
#include "irc/scenario.hpp"

namespace {

using irc::ChannelInstance;
using irc::scenario::Protocol;
namespace sc = irc::scenario;

double c(double x) { return std::log2(1.0 + x); }

std::size_t slot(Protocol p) { return static_cast<std::size_t>(p); }

// No-relay rate pair with interference treated as noise.
double baseline_sum(const ChannelInstance& ch) {
  const double r1 = c(std::norm(ch.h11) * ch.power.p1 / (ch.noise.n1 + std::norm(ch.h21) * ch.power.p2));
  const double r2 = c(std::norm(ch.h22) * ch.power.p2 / (ch.noise.n2 + std::norm(ch.h12) * ch.power.p1));
  return r1 + r2;
}

sc::ScenarioConfig coarse_config() {
  auto cfg = sc::default_config();
  cfg.map_sweep = {-2.0, 2.0, -1.0, 2.0, 0.5};
  cfg.slmap_sweep = {-1.0, 2.0, -1.0, 2.0, 0.5};
  cfg.optimizer.df_grid_points = 41;
  return cfg;
}

TEST(Scenario, ProtocolNamesRoundTrip) {
  for (Protocol p : sc::kAllProtocols) EXPECT_EQ(sc::parse_protocol(sc::to_string(p)), p);
  EXPECT_THROW(sc::parse_protocol("cf"), irc::DomainError);
  EXPECT_EQ(sc::parse_pa_policy("optimal"), sc::PaPolicy::Optimal);
}

TEST(Scenario, PickWinnerTakesFirstMaximum) {
  EXPECT_EQ(sc::pick_winner({1.0, 2.0, 2.0, 0.5}), Protocol::DF);
  EXPECT_EQ(sc::pick_winner({3.0, 3.0, 3.0, 3.0}), Protocol::AF);
  EXPECT_EQ(sc::pick_winner({NAN, 1.0, NAN, 0.5}), Protocol::DF);
}

TEST(Scenario, SweepAxesIncludeEndpoints) {
  const sc::Sweep s{-4.0, 4.0, -3.0, 4.0, 0.25};
  const auto xs = s.xs();
  const auto ys = s.ys();
  ASSERT_EQ(xs.size(), 33u);
  ASSERT_EQ(ys.size(), 29u);
  EXPECT_DOUBLE_EQ(xs.front(), -4.0);
  EXPECT_DOUBLE_EQ(xs.back(), 4.0);
  EXPECT_DOUBLE_EQ(ys.back(), 4.0);
}

TEST(Scenario, ReferencePowers) {
  const auto sym = sc::default_config(sc::PowerScenario::Symmetric);
  const auto asym = sc::default_config(sc::PowerScenario::Asymmetric);
  EXPECT_EQ(sym.powers.p1, 10.0);
  EXPECT_EQ(sym.powers.p2, 10.0);
  EXPECT_EQ(sym.powers.pr, 10.0);
  EXPECT_EQ(asym.powers.p1, 3.0);
  EXPECT_EQ(asym.powers.p2, 10.0);
  EXPECT_EQ(sym.layout.d0, 5.0);
}

TEST(Scenario, FarRelayFallsBackToDirectLinks) {
  for (auto power : {sc::PowerScenario::Symmetric, sc::PowerScenario::Asymmetric}) {
    auto cfg = sc::default_config(power);
    const auto ch = cfg.channel_at(1e4, 1e4);
    const auto e = sc::evaluate_cell(ch, cfg);
    const double base = baseline_sum(ch);
    EXPECT_NEAR(e.sum[slot(Protocol::AF)], base, 1e-4);
    EXPECT_NEAR(e.sum[slot(Protocol::EfBl)], base, 1e-4);
    EXPECT_NEAR(e.sum[slot(Protocol::EfSl)], base, 1e-4);
    // DF needs the relay to decode both messages, so it collapses with the relay links.
    EXPECT_LT(e.sum[slot(Protocol::DF)], 1e-4);
    EXPECT_NE(e.winner, Protocol::DF);
  }
}

TEST(Scenario, AfCellMatchesDirectReplay) {
  const auto cfg = sc::default_config();
  for (double x : {-1.0, 0.0, 0.75, 2.0}) {
    const auto ch = cfg.channel_at(x, 0.5);
    const auto e = sc::evaluate_cell(ch, cfg);
    const double replay = irc::af::rate(ch, e.af.gain, irc::User::One) + irc::af::rate(ch, e.af.gain, irc::User::Two);
    EXPECT_NEAR(e.sum[slot(Protocol::AF)], replay, 1e-12);
    EXPECT_GE(e.af.gain, 0.0);
    EXPECT_LE(e.af.gain, irc::af::saturation_gain(ch) * (1 + 1e-12));
  }
}

TEST(Scenario, DisabledProtocolsAreNaN) {
  auto cfg = sc::default_config();
  cfg.protocols = {Protocol::DF, Protocol::EfSl};
  const auto e = sc::evaluate_cell(cfg.channel(), cfg);
  EXPECT_TRUE(std::isnan(e.sum[slot(Protocol::AF)]));
  EXPECT_TRUE(std::isnan(e.sum[slot(Protocol::EfBl)]));
  EXPECT_TRUE(e.winner == Protocol::DF || e.winner == Protocol::EfSl);
}

TEST(DominanceMap, WinnerIsArgmaxInEveryCell) {
  const auto cfg = coarse_config();
  const auto map = sc::dominance_map(cfg);
  ASSERT_EQ(map.cells.size(), map.nx * map.ny);
  std::set<Protocol> winners;
  for (const auto& cell : map.cells) {
    const double best = *std::max_element(cell.sum.begin(), cell.sum.end());
    EXPECT_EQ(cell.sum[slot(cell.winner)], best);
    EXPECT_EQ(sc::pick_winner(cell.sum), cell.winner);
    winners.insert(cell.winner);
  }
  EXPECT_GE(winners.size(), 2u);
}

TEST(DominanceMap, RowMajorYOuter) {
  const auto cfg = coarse_config();
  const auto map = sc::dominance_map(cfg);
  EXPECT_EQ(map.nx, 9u);
  EXPECT_EQ(map.ny, 7u);
  EXPECT_DOUBLE_EQ(map.cells[1].xr, -1.5);
  EXPECT_DOUBLE_EQ(map.cells[1].yr, -1.0);
  EXPECT_DOUBLE_EQ(map.cells[map.nx].yr, -0.5);
}

TEST(DominanceMap, CsvRoundTripAndDeterminism) {
  auto cfg = coarse_config();
  cfg.protocols = {Protocol::AF, Protocol::EfBl, Protocol::EfSl};
  const auto a = sc::dominance_map(cfg);
  const auto b = sc::dominance_map(cfg);
  std::ostringstream sa, sb;
  sc::write_map_csv(sa, a);
  sc::write_map_csv(sb, b);
  EXPECT_EQ(sa.str(), sb.str());
  EXPECT_EQ(sa.str().substr(0, sc::kMapCsvHeader.size()), sc::kMapCsvHeader);

  std::istringstream in(sa.str());
  const auto back = sc::read_map_csv(in);
  ASSERT_EQ(back.nx, a.nx);
  ASSERT_EQ(back.ny, a.ny);
  for (std::size_t k = 0; k < a.cells.size(); ++k) {
    EXPECT_EQ(back.cells[k].winner, a.cells[k].winner);
    EXPECT_EQ(back.cells[k].bl_scenario, a.cells[k].bl_scenario);
    EXPECT_TRUE(std::isnan(back.cells[k].sum[slot(Protocol::DF)]));
    EXPECT_NEAR(back.cells[k].sum[slot(Protocol::AF)], a.cells[k].sum[slot(Protocol::AF)],
                1e-11 * a.cells[k].sum[slot(Protocol::AF)]);
  }
}

TEST(Slice, JumpSitsAtScenarioFlip) {
  auto cfg = sc::default_config();
  cfg.protocols = {Protocol::EfBl};
  cfg.slice.x_min = -1.0;
  cfg.slice.x_max = 1.0;
  const auto rows = sc::sum_rate_slice(cfg, 0.5);
  std::vector<double> bl;
  for (const auto& r : rows) bl.push_back(r.sum[slot(Protocol::EfBl)]);
  const auto jumps = sc::detect_jumps(bl);
  ASSERT_FALSE(jumps.empty());
  for (std::size_t k : jumps) EXPECT_NE(rows[k].bl_scenario, rows[k + 1].bl_scenario) << rows[k].xr;
}

TEST(Slice, DetectJumpsOnSyntheticStep) {
  std::vector<double> v;
  for (int k = 0; k < 100; ++k) v.push_back(0.01 * k + (k >= 60 ? 1.0 : 0.0));
  const auto jumps = sc::detect_jumps(v);
  ASSERT_EQ(jumps.size(), 1u);
  EXPECT_EQ(jumps[0], 59u);
  std::vector<double> smooth;
  for (int k = 0; k < 100; ++k) smooth.push_back(std::sin(0.05 * k));
  EXPECT_TRUE(sc::detect_jumps(smooth).empty());
}

TEST(SlBlMap, WinnerAndFrontierAreConsistent) {
  const auto cfg = coarse_config();
  const auto map = sc::sl_vs_bl_map(cfg);
  for (std::size_t j = 0; j < map.ny; ++j) {
    for (std::size_t i = 0; i < map.nx; ++i) {
      const auto& cell = map.cells[j * map.nx + i];
      EXPECT_EQ(cell.winner, cell.bl_sum >= cell.sl_sum ? Protocol::EfBl : Protocol::EfSl);
      bool differs = false;
      if (i + 1 < map.nx) differs |= map.cells[j * map.nx + i + 1].bl_scenario != cell.bl_scenario;
      if (j + 1 < map.ny) differs |= map.cells[(j + 1) * map.nx + i].bl_scenario != cell.bl_scenario;
      EXPECT_EQ(cell.frontier, differs);
    }
  }
}

TEST(SlBlMap, BiLevelWinsWithVeryUnequalNoise) {
  auto cfg = coarse_config();
  cfg.noises.n2 = 1e6 * cfg.noises.n1;
  const auto map = sc::sl_vs_bl_map(cfg);
  for (const auto& cell : map.cells) EXPECT_GE(cell.bl_sum, cell.sl_sum - 1e-9) << cell.xr << "," << cell.yr;
}

TEST(Config, JsonRoundTrip) {
  auto cfg = sc::default_config(sc::PowerScenario::Asymmetric);
  cfg.pa_policy = sc::PaPolicy::Optimal;
  cfg.r0_exponent = irc::ef::R0Exponent::One;
  cfg.protocols = {Protocol::EfSl, Protocol::AF};
  cfg.slice.y = 0.75;
  const std::string text = sc::to_json(cfg);
  const auto back = sc::parse_config(text);
  EXPECT_EQ(sc::to_json(back), text);
  EXPECT_EQ(back.powers.p1, 3.0);
  EXPECT_EQ(back.pa_policy, sc::PaPolicy::Optimal);
  EXPECT_EQ(back.protocols.size(), 2u);
  EXPECT_NEAR(back.layout.relay.x, cfg.layout.relay.x, 1e-12);
  EXPECT_NEAR(back.layout.relay.y, cfg.layout.relay.y, 1e-12);
}

TEST(Config, EmptyObjectGivesDefaults) {
  EXPECT_EQ(sc::to_json(sc::parse_config("{}")), sc::to_json(sc::default_config()));
}

std::string field_of(const std::string& text) {
  try {
    sc::parse_config(text);
  } catch (const irc::ConfigError& e) {
    return e.field();
  }
  return "<none>";
}

TEST(Config, ErrorsNameTheField) {
  EXPECT_EQ(field_of(R"({"powers": {"p1": -1}})"), "powers.p1");
  EXPECT_EQ(field_of(R"({"noises": {"nr": 0}})"), "noises.nr");
  EXPECT_EQ(field_of(R"({"map_sweep": {"step": 0}})"), "map_sweep.step");
  EXPECT_EQ(field_of(R"({"slice": {"x_min": 2, "x_max": 1}})"), "slice.x_max");
  EXPECT_EQ(field_of(R"({"pa_policy": "best"})"), "pa_policy");
  EXPECT_EQ(field_of(R"({"protocols": ["af", "cf"]})"), "protocols");
  EXPECT_EQ(field_of(R"({"r0_exponent": 3})"), "r0_exponent");
  EXPECT_EQ(field_of(R"({"optimizer": {"df_grid_points": 1}})"), "optimizer.df_grid_points");
  EXPECT_EQ(field_of(R"({"colour": 1})"), "colour");
  EXPECT_EQ(field_of(R"({"layout": {"gamma": "two"}})"), "layout.gamma");
  EXPECT_EQ(field_of(R"({"channel": {"h11": 1}})"), "channel.h12");
}

TEST(Config, ExplicitChannelOverridesGeometry) {
  const auto cfg = sc::parse_config(R"({"channel": {"h11": 1, "h12": 0, "h21": 0, "h22": [0, 1],
    "h1r": 0.5, "h2r": 0.5, "hr1": 0.5, "hr2": 0.5}})");
  ASSERT_TRUE(cfg.channel_override.has_value());
  const auto ch = cfg.channel();
  EXPECT_EQ(ch.h22, irc::Complex(0.0, 1.0));
  EXPECT_EQ(ch.power.p1, 10.0);
}

}  // namespace
