#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "irc/af.hpp"
#include "irc/errors.hpp"
#include "irc/scenario.hpp"
#include "oracles.hpp"
#include "random_channels.hpp"

namespace {

using irc::ChannelInstance;
using irc::Complex;
using irc::User;
namespace af = irc::af;

constexpr User kUsers[] = {User::One, User::Two};

double c(double x) { return std::log2(1.0 + x); }

ChannelInstance plain_channel() {
  ChannelInstance ch;
  ch.h11 = 0.9;
  ch.h22 = 0.8;
  ch.h12 = 0.3;
  ch.h21 = 0.4;
  ch.h1r = 0.7;
  ch.h2r = 0.6;
  ch.hr1 = 0.5;
  ch.hr2 = 0.9;
  ch.power = {2.0, 3.0, 4.0};
  ch.noise = {1.0, 1.5, 0.5};
  return ch;
}

TEST(AfAuxiliaries, MatchDefinitions) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 200; ++t) {
    const auto ch = irc::testing::random_channel(rng);
    for (User i : kUsers) {
      const User j = irc::other(i);
      const auto a = af::auxiliaries(ch, i);
      const double ni = ch.rx_noise(i);
      EXPECT_LT(std::abs(a.m - ch.to_relay(i) * ch.from_relay(i) * std::sqrt(ch.snr(i))), 1e-12);
      EXPECT_LT(std::abs(a.n - ch.direct(i) * std::sqrt(ch.snr(i))), 1e-12);
      EXPECT_LT(std::abs(a.p - ch.to_relay(j) * ch.from_relay(i) * std::sqrt(ch.tx_power(j) / ni)), 1e-12);
      EXPECT_LT(std::abs(a.q - ch.cross(i) * std::sqrt(ch.tx_power(j) / ni)), 1e-12);
      EXPECT_NEAR(a.s, std::norm(ch.from_relay(i)) * ch.noise.nr / ni, 1e-12);
    }
  }
}

TEST(AfAuxiliaries, EqualNoisesReduceToSnrForms) {
  auto ch = plain_channel();
  ch.noise = {1.0, 1.0, 1.0};
  const auto a = af::auxiliaries(ch, User::One);
  EXPECT_NEAR(a.p.real(), 0.6 * 0.5 * std::sqrt(ch.snr(User::Two)), 1e-15);
  EXPECT_NEAR(a.s, 0.25, 1e-15);
}

TEST(AfRate, SilentRelayNoInterference) {
  auto ch = plain_channel();
  ch.h21 = 0.0;
  EXPECT_NEAR(af::rate(ch, 0.0, User::One), c(0.81 * 2.0 / 1.0), 1e-14);
}

TEST(AfRate, SilentRelayInterferenceBaseline) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 200; ++t) {
    const auto ch = irc::testing::random_channel(rng);
    for (User i : kUsers) {
      const User j = irc::other(i);
      const double expected =
          c(std::norm(ch.direct(i)) * ch.tx_power(i) / (std::norm(ch.cross(i)) * ch.tx_power(j) + ch.rx_noise(i)));
      EXPECT_NEAR(af::rate(ch, 0.0, i), expected, 1e-12);
    }
  }
}

TEST(AfRate, MatchesHighPrecisionOracle) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 300; ++t) {
    const auto ch = irc::testing::random_channel(rng);
    for (User i : kUsers) {
      const double oracle = irc::testing::hp_af_rate(ch, 0.7, i);
      EXPECT_NEAR(af::rate(ch, 0.7, i), oracle, 1e-12 * std::max(1.0, oracle));
      EXPECT_NEAR(af::rate(af::auxiliaries(ch, i), 0.7), oracle, 1e-12 * std::max(1.0, oracle));
    }
  }
}

TEST(AfRate, NegativeGainRejected) {
  EXPECT_THROW(af::rate(plain_channel(), -0.1, User::One), irc::DomainError);
}

TEST(AfRate, DisconnectedRelayLeavesPointToPoint) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 50; ++t) {
    auto ch = irc::testing::random_channel(rng);
    ch.h12 = ch.h21 = ch.h1r = ch.h2r = ch.hr1 = ch.hr2 = 0.0;
    for (User i : kUsers) {
      for (double a : {0.0, 0.3, 5.0, 1e3}) {
        EXPECT_NEAR(af::rate(ch, a, i), c(ch.snr(i) * std::norm(ch.direct(i))), 1e-12);
      }
    }
  }
}

TEST(AfSaturationGain, KnownValues) {
  auto ch = plain_channel();
  ch.h1r = ch.h2r = 0.0;
  ch.power.pr = 4.0;
  ch.noise.nr = 1.0;
  EXPECT_DOUBLE_EQ(af::saturation_gain(ch), 2.0);

  ch = plain_channel();
  ch.h1r = 1.0;
  ch.h2r = 1.0;
  ch.power = {4.0, 5.0, 10.0};
  ch.noise.nr = 1.0;
  EXPECT_DOUBLE_EQ(af::saturation_gain(ch), 1.0);
}

TEST(AfSaturationGain, ReferenceLayout) {
  const auto cfg = irc::scenario::default_config();
  const auto ch = cfg.channel_at(0.0, 0.5);
  const auto l = irc::default_layout();
  // Relay at (0, 2.5 m), 0.1 m above the plane.
  const double d1r = std::sqrt(2.5 * 2.5 + 0.01);
  const double d2r = std::sqrt(2.5 * 2.5 + 2.5 * 2.5 + 0.01);
  const double g1 = l.d0 / d1r, g2 = l.d0 / d2r;
  EXPECT_NEAR(af::saturation_gain(ch), std::sqrt(10.0 / (g1 * g1 * 10.0 + g2 * g2 * 10.0 + 1.0)), 1e-14);
}

TEST(AfCriticalPoints, RealClosedForms) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 500; ++t) {
    const auto ch = irc::testing::random_real_channel(rng);
    for (User i : kUsers) {
      const auto aux = af::auxiliaries(ch, i);
      const double m = aux.m.real(), n = aux.n.real(), p = aux.p.real(), q = aux.q.real(), s = aux.s;
      std::vector<double> closed{-n / m, -(m * q * q + m - p * q * n) / (m * q * p - p * p * n - n * s)};
      std::sort(closed.begin(), closed.end());
      const auto roots = af::critical_points(ch, i);
      ASSERT_TRUE(roots.has_value());
      ASSERT_EQ(roots->size(), 2u);
      for (int k = 0; k < 2; ++k) EXPECT_NEAR((*roots)[k], closed[k], 1e-10 * std::max(1.0, std::abs(closed[k])));
      auto lib_closed = af::real_critical_points(aux);
      std::sort(lib_closed.begin(), lib_closed.end());
      ASSERT_EQ(lib_closed.size(), 2u);
      for (int k = 0; k < 2; ++k) EXPECT_NEAR(lib_closed[k], closed[k], 1e-12 * std::max(1.0, std::abs(closed[k])));
    }
  }
}

TEST(AfCriticalPoints, NoInterferenceSingleNegativeRoot) {
  ChannelInstance ch = plain_channel();
  ch.h2r = 0.0;  // p = 0
  ch.h21 = 0.0;  // q = 0
  const auto aux = af::auxiliaries(ch, User::One);
  af::Auxiliaries reduced = aux;
  reduced.s = 0.0;
  const auto roots = af::critical_points(af::slope_quadratic(reduced));
  ASSERT_TRUE(roots.has_value());
  ASSERT_EQ(roots->size(), 1u);
  EXPECT_NEAR(roots->front(), -aux.n.real() / aux.m.real(), 1e-14);
  EXPECT_LT(roots->front(), 0.0);
}

TEST(AfCriticalPoints, RootsAreStationary) {
  std::mt19937_64 rng(6);
  int checked = 0;
  for (int t = 0; t < 500; ++t) {
    const auto ch = irc::testing::random_channel(rng);
    for (User i : kUsers) {
      const auto aux = af::auxiliaries(ch, i);
      const auto roots = af::critical_points(ch, i);
      ASSERT_TRUE(roots.has_value());
      for (double r : *roots) {
        const double h = 1e-6 * std::max(1.0, std::abs(r));
        const double fd = (af::rate(aux, r + h) - af::rate(aux, r - h)) / (2.0 * h);
        EXPECT_LT(std::abs(fd), 1e-6) << "root " << r;
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 500);
}

TEST(AfCriticalPoints, AllZeroQuadraticIsDegenerate) {
  EXPECT_FALSE(af::critical_points(af::Quadratic{0.0, 0.0, 0.0}).has_value());
}

TEST(AfCriticalPoints, TinyLeadingCoefficientUsesLinearSolve) {
  const auto roots = af::critical_points(af::Quadratic{1e-20, 2.0, -1.0});
  ASSERT_TRUE(roots.has_value());
  ASSERT_EQ(roots->size(), 1u);
  EXPECT_DOUBLE_EQ(roots->front(), 0.5);
}

TEST(AfCriticalPoints, NegativeDiscriminantHasNoRoots) {
  const auto roots = af::critical_points(af::Quadratic{1.0, 0.0, 1.0});
  ASSERT_TRUE(roots.has_value());
  EXPECT_TRUE(roots->empty());
}

TEST(AfOptimalGain, NoInterferenceSaturates) {
  ChannelInstance ch = plain_channel();
  ch.h2r = 0.0;
  ch.h21 = 0.0;
  const auto an = af::optimal_gain(ch, User::One);
  EXPECT_DOUBLE_EQ(an.optimal_gain, an.saturation_gain);
}

TEST(AfOptimalGain, DisconnectedRelayFlagsDegenerate) {
  ChannelInstance ch = plain_channel();
  ch.h12 = ch.h21 = ch.h1r = ch.h2r = ch.hr1 = ch.hr2 = 0.0;
  const auto an = af::optimal_gain(ch, User::One);
  EXPECT_TRUE(an.degenerate);
  EXPECT_EQ(an.branch, af::GainCase::Degenerate);
  EXPECT_DOUBLE_EQ(an.optimal_gain, an.saturation_gain);
}

TEST(AfOptimalGain, BeatsEveryGridPoint) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 300; ++t) {
    const auto ch = irc::testing::random_channel(rng);
    for (User i : kUsers) {
      const auto an = af::optimal_gain(ch, i);
      ASSERT_GE(an.optimal_gain, 0.0);
      ASSERT_LE(an.optimal_gain, an.saturation_gain);
      EXPECT_NEAR(an.optimal_rate, af::rate(ch, an.optimal_gain, i), 1e-12);
      for (int k = 0; k <= 2000; ++k) {
        const double a = an.saturation_gain * k / 2000.0;
        ASSERT_GE(an.optimal_rate, af::rate(ch, a, i) - 1e-9) << "a=" << a << " case " << af::to_string(an.branch);
      }
    }
  }
}

TEST(AfOptimalGain, ChoosesFromCandidateSet) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 500; ++t) {
    const auto ch = irc::testing::random_channel(rng);
    for (User i : kUsers) {
      const auto an = af::optimal_gain(ch, i);
      bool found = an.optimal_gain == 0.0 || an.optimal_gain == an.saturation_gain;
      for (double r : an.critical_points) found = found || (r == an.optimal_gain && r > 0.0 && r < an.saturation_gain);
      EXPECT_TRUE(found) << an.optimal_gain;
    }
  }
}

TEST(AfOptimalGain, AsymptoteMatchesLargeGain) {
  std::mt19937_64 rng(10);
  for (int t = 0; t < 200; ++t) {
    const auto ch = irc::testing::random_channel(rng);
    for (User i : kUsers) {
      const auto an = af::optimal_gain(ch, i);
      const auto& x = an.aux;
      EXPECT_NEAR(an.asymptote, c(std::norm(x.m) / (std::norm(x.p) + x.s)), 1e-12);
      EXPECT_NEAR(af::rate(ch, 1e12 * an.saturation_gain, i), an.asymptote, 1e-8);
    }
  }
}

TEST(AfOptimalGain, InvariantUnderCommonPowerScaling) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 200; ++t) {
    const auto ch = irc::testing::random_channel(rng);
    const double lambda = irc::testing::log_uniform(rng, 1e-3, 1e3);
    auto scaled = ch;
    scaled.power = {ch.power.p1 * lambda, ch.power.p2 * lambda, ch.power.pr * lambda};
    scaled.noise = {ch.noise.n1 * lambda, ch.noise.n2 * lambda, ch.noise.nr * lambda};
    for (User i : kUsers) {
      const auto a = af::optimal_gain(ch, i);
      const auto b = af::optimal_gain(scaled, i);
      EXPECT_NEAR(a.optimal_gain / a.saturation_gain, b.optimal_gain / b.saturation_gain, 1e-9);
      EXPECT_NEAR(a.optimal_rate, b.optimal_rate, 1e-9);
      EXPECT_NEAR(af::rate(ch, 0.37 * a.saturation_gain, i), af::rate(scaled, 0.37 * b.saturation_gain, i), 1e-9);
    }
  }
}

TEST(AfOptimalGain, SomeChannelsDoNotSaturate) {
  std::mt19937_64 rng(13);
  bool found = false;
  for (int t = 0; t < 2000 && !found; ++t) {
    const auto ch = irc::testing::random_channel(rng);
    for (User i : kUsers) {
      const auto an = af::optimal_gain(ch, i);
      found = found || (an.optimal_gain < an.saturation_gain &&
                        an.optimal_rate > af::rate(ch, an.saturation_gain, i) + 1e-6);
    }
  }
  EXPECT_TRUE(found);
}

TEST(AfSumRateGain, SymmetricChannelUsesCommonOptimum) {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 100; ++t) {
    const auto ch = irc::testing::random_symmetric_channel(rng);
    const auto an = af::optimal_gain(ch, User::One);
    ASSERT_NEAR(an.optimal_gain, af::optimal_gain(ch, User::Two).optimal_gain, 1e-12);
    const auto res = af::sum_rate_gain(ch);
    EXPECT_NEAR(res.rates.sum(), 2.0 * an.optimal_rate, 1e-9);
    EXPECT_NEAR(res.gain, an.optimal_gain, 1e-6 * std::max(1.0, an.saturation_gain));
  }
}

TEST(AfSumRateGain, DominatesCandidateSet) {
  std::mt19937_64 rng(15);
  const double tol = 1e-10;
  for (int t = 0; t < 300; ++t) {
    const auto ch = irc::testing::random_channel(rng);
    const auto res = af::sum_rate_gain(ch, tol);
    const double amax = af::saturation_gain(ch);
    ASSERT_GE(res.gain, 0.0);
    ASSERT_LE(res.gain, amax);
    const auto sum_at = [&](double a) { return af::rate(ch, a, User::One) + af::rate(ch, a, User::Two); };
    EXPECT_NEAR(res.rates.sum(), sum_at(res.gain), 1e-12);
    std::vector<double> candidates{0.0, amax};
    for (User i : kUsers) {
      for (double r : af::optimal_gain(ch, i).critical_points) {
        if (r > 0.0 && r < amax) candidates.push_back(r);
      }
    }
    for (double a : candidates) EXPECT_GE(res.rates.sum(), sum_at(a) - tol);
  }
}

TEST(AfSumRateGain, MatchesDenseBruteForce) {
  std::mt19937_64 rng(16);
  const double tol = 1e-10;
  for (int t = 0; t < 10; ++t) {
    const auto ch = irc::testing::random_channel(rng);
    const auto res = af::sum_rate_gain(ch, tol);
    const double amax = af::saturation_gain(ch);
    const auto a1 = af::auxiliaries(ch, User::One), a2 = af::auxiliaries(ch, User::Two);
    double best = 0.0;
    for (int k = 0; k <= 1000000; ++k) {
      const double a = amax * k / 1e6;
      best = std::max(best, af::rate(a1, a) + af::rate(a2, a));
    }
    EXPECT_GE(res.rates.sum(), best - 2.0 * tol);
  }
}

}  // namespace
