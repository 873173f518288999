#include "irc/ef.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <fmt/core.h>

#include "irc/errors.hpp"

namespace irc::ef {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Relative slack when checking a caller's noise against its bound, so that
// passing a bound straight back in is accepted.
constexpr double kBoundSlack = 1e-12;

void check_share(double nu1, double nu2) {
  const auto ok = [](double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; };
  if (!ok(nu1) || !ok(nu2) || nu1 + nu2 > 1.0 + 1e-12) {
    throw DomainError("relay shares must satisfy 0 <= nu_k <= 1 and nu1 + nu2 <= 1");
  }
}

void check_noise(double nwz, const char* name) {
  if (std::isnan(nwz) || nwz < 0.0) {
    throw DomainError(fmt::format("compression noise {} must be nonnegative", name));
  }
}

// Relay interference left at receiver i after it strips what it can decode.
double residual_relay(const ChannelInstance& ch, double nu1, double nu2, BiScenario s, User i) {
  if (i == User::One) return s == BiScenario::D1Better ? 0.0 : std::norm(ch.hr1) * nu2 * ch.power.pr;
  return s == BiScenario::D2Better ? 0.0 : std::norm(ch.hr2) * nu1 * ch.power.pr;
}

// Two-branch SINR: direct observation plus the compressed relay observation
// with total noise m = N_r + N_wz (m may be +inf).
double two_branch_rate(const ChannelInstance& ch, User i, double extra, double m) {
  const User j = other(i);
  const double pi = ch.tx_power(i);
  const double pj = ch.tx_power(j);
  const double ni = ch.rx_noise(i);
  const double hji = std::norm(ch.cross(i));
  const double hjr = std::norm(ch.to_relay(j));

  const double kept = std::isinf(m) ? 1.0 : m / (hjr * pj + m);
  const double direct = std::norm(ch.direct(i)) * pi / (ni + extra + hji * pj * kept);
  const double relayed =
      std::norm(ch.to_relay(i)) * pi / (m + hjr * pj * (extra + ni) / (hji * pj + extra + ni));
  return capacity(direct + relayed);
}

double r0_denominator(double r0, R0Exponent e) {
  return std::exp2(static_cast<double>(static_cast<int>(e)) * r0) - 1.0;
}

}  // namespace

std::string_view to_string(BiScenario s) noexcept {
  switch (s) {
    case BiScenario::D1Better: return "D1_better";
    case BiScenario::D2Better: return "D2_better";
    case BiScenario::Neither: return "neither";
  }
  return "neither";
}

BiScenario parse_bi_scenario(std::string_view text) {
  if (text == "D1_better") return BiScenario::D1Better;
  if (text == "D2_better") return BiScenario::D2Better;
  if (text == "neither") return BiScenario::Neither;
  throw DomainError(fmt::format("unknown bi-level scenario '{}'", text));
}

Derived derived(const ChannelInstance& ch) {
  const double p1 = ch.power.p1;
  const double p2 = ch.power.p2;
  Derived d;
  d.a = std::norm(ch.h1r) * p1 + std::norm(ch.h2r) * p2 + ch.noise.nr;
  d.c1 = ch.h11 * std::conj(ch.h1r) * p1 + ch.h21 * std::conj(ch.h2r) * p2;
  d.c2 = ch.h12 * std::conj(ch.h1r) * p1 + ch.h22 * std::conj(ch.h2r) * p2;
  d.t1 = std::norm(ch.h11) * p1 + std::norm(ch.h21) * p2 + ch.noise.n1;
  d.t2 = std::norm(ch.h22) * p2 + std::norm(ch.h12) * p1 + ch.noise.n2;
  // Cauchy-Schwarz keeps these nonnegative; clamp rounding.
  d.sigma1_sq = std::max(0.0, d.a - std::norm(d.c1) / d.t1);
  d.sigma2_sq = std::max(0.0, d.a - std::norm(d.c2) / d.t2);
  return d;
}

BiScenario bi_scenario(const ChannelInstance& ch, double nu1, double nu2) {
  check_share(nu1, nu2);
  const Derived d = derived(ch);
  const double pr = ch.power.pr;
  const double g1 = std::norm(ch.hr1) * pr;
  const double g2 = std::norm(ch.hr2) * pr;

  const double cond1_lhs = g1 * nu2 / (d.t1 + g1 * nu1);
  const double cond1_rhs = g2 * nu2 / (d.t2 + g2 * nu1);
  if (cond1_lhs >= cond1_rhs) return BiScenario::D1Better;

  const double cond2_lhs = g2 * nu1 / (d.t2 + g2 * nu2);
  const double cond2_rhs = g1 * nu1 / (d.t1 + g1 * nu2);
  if (cond2_lhs >= cond2_rhs) return BiScenario::D2Better;
  return BiScenario::Neither;
}

NoisePair bi_noise_bounds(const ChannelInstance& ch, double nu1, double nu2, BiScenario scenario) {
  check_share(nu1, nu2);
  const Derived d = derived(ch);
  const auto bound = [&](double t, double extra, Complex c, double relay_gain_sq, double nu) {
    const double num = std::max(0.0, (t + extra) * d.a - std::norm(c));
    const double den = relay_gain_sq * nu * ch.power.pr;
    return den > 0.0 ? num / den : kInf;
  };
  NoisePair out;
  out.nwz1 = bound(d.t1, residual_relay(ch, nu1, nu2, scenario, User::One), d.c1, std::norm(ch.hr1), nu1);
  out.nwz2 = bound(d.t2, residual_relay(ch, nu1, nu2, scenario, User::Two), d.c2, std::norm(ch.hr2), nu2);
  return out;
}

NoisePair bi_min_noise(const ChannelInstance& ch, double nu1, double nu2, BiScenario scenario) {
  const NoisePair b = bi_noise_bounds(ch, nu1, nu2, scenario);
  if (std::isinf(b.nwz1) || std::isinf(b.nwz2)) {
    throw InfeasibleError(
        "bi-level compression noise is unbounded: a relay share or relay-to-destination gain is zero");
  }
  return b;
}

RatePair bi_rate(const ChannelInstance& ch, const BiParams& params, BiScenario scenario) {
  check_noise(params.nwz1, "nwz1");
  check_noise(params.nwz2, "nwz2");
  const NoisePair b = bi_noise_bounds(ch, params.nu1, params.nu2, scenario);
  const auto check = [](double nwz, double bound, const char* name) {
    if (nwz < bound * (1.0 - kBoundSlack)) {
      throw ConstraintViolation(fmt::format("{} >= {:.12g}", name, bound),
                                fmt::format("bi-level compression noise {} = {:.12g} is below its bound {:.12g}",
                                            name, nwz, bound));
    }
  };
  check(params.nwz1, b.nwz1, "nwz1");
  check(params.nwz2, b.nwz2, "nwz2");

  const double nr = ch.noise.nr;
  return {two_branch_rate(ch, User::One, residual_relay(ch, params.nu1, params.nu2, scenario, User::One),
                          nr + params.nwz1),
          two_branch_rate(ch, User::Two, residual_relay(ch, params.nu1, params.nu2, scenario, User::Two),
                          nr + params.nwz2)};
}

double sl_bottleneck(const ChannelInstance& ch) {
  const Derived d = derived(ch);
  const double pr = ch.power.pr;
  return std::min(capacity(std::norm(ch.hr1) * pr / d.t1), capacity(std::norm(ch.hr2) * pr / d.t2));
}

double sl_min_noise(const ChannelInstance& ch, const Options& options) {
  const double r0 = sl_bottleneck(ch);
  if (!(r0 > 0.0)) {
    throw InfeasibleError("single-level compression infeasible: bottleneck rate R0 is zero");
  }
  const Derived d = derived(ch);
  return std::max(d.sigma1_sq, d.sigma2_sq) / r0_denominator(r0, options.r0_exponent);
}

RatePair sl_rate(const ChannelInstance& ch, double nwz, const Options& options) {
  check_noise(nwz, "nwz");
  if (!std::isinf(nwz)) {
    const double bound = sl_min_noise(ch, options);
    if (nwz < bound * (1.0 - kBoundSlack)) {
      throw ConstraintViolation(
          fmt::format("nwz >= {:.12g}", bound),
          fmt::format("single-level compression noise nwz = {:.12g} is below max(sigma^2)/(2^(e R0) - 1) = {:.12g}",
                      nwz, bound));
    }
  }
  const double m = ch.noise.nr + nwz;
  return {two_branch_rate(ch, User::One, 0.0, m), two_branch_rate(ch, User::Two, 0.0, m)};
}

BiSearchResult bi_at_min_noise(const ChannelInstance& ch, double nu1, double nu2) {
  BiSearchResult r;
  r.scenario = bi_scenario(ch, nu1, nu2);
  const NoisePair b = bi_noise_bounds(ch, nu1, nu2, r.scenario);
  r.params = {nu1, nu2, b.nwz1, b.nwz2};
  r.rates = bi_rate(ch, r.params, r.scenario);
  return r;
}

BiSearchResult bi_sum_rate_search(const ChannelInstance& ch, std::size_t grid_points) {
  if (grid_points < 2) throw DomainError("bi_sum_rate_search: need at least two grid points");
  const std::size_t n = grid_points;
  const auto axis = [n](std::size_t k) {
    return k + 1 == n ? 1.0 : static_cast<double>(k) / static_cast<double>(n - 1);
  };

  BiSearchResult best;
  double best_sum = -1.0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; a + b < n; ++b) {
      const double nu1 = axis(a);
      const double nu2 = a + b + 1 == n ? 1.0 - nu1 : axis(b);
      const BiSearchResult r = bi_at_min_noise(ch, nu1, nu2);
      if (r.rates.sum() > best_sum) {
        best_sum = r.rates.sum();
        best = r;
      }
    }
  }
  return best;
}

}  // namespace irc::ef
