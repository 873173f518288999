#include "irc/df.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "irc/errors.hpp"

namespace irc::df {
namespace {

bool in_unit(double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; }

// Slack for nu1 + nu2 <= 1 so that grid sums such as 0.3 + 0.7 pass.
constexpr double kSimplexSlack = 1e-12;

bool feasible(const Params& p) {
  return in_unit(p.tau1) && in_unit(p.tau2) && in_unit(p.nu1) && in_unit(p.nu2) &&
         p.nu1 + p.nu2 <= 1.0 + kSimplexSlack;
}

double& coordinate(Params& p, std::size_t c) {
  switch (c) {
    case 0: return p.tau1;
    case 1: return p.tau2;
    case 2: return p.nu1;
    default: return p.nu2;
  }
}

double axis(std::size_t k, std::size_t n) {
  return k + 1 == n ? 1.0 : static_cast<double>(k) / static_cast<double>(n - 1);
}

}  // namespace

void Params::validate() const {
  if (!feasible(*this)) {
    throw DomainError("DF parameters must satisfy 0 <= tau_i, nu_i <= 1 and nu1 + nu2 <= 1");
  }
}

RateTerms rate_terms(const ChannelInstance& ch, const Params& params, User i) {
  params.validate();
  const User j = other(i);
  const double pi = ch.tx_power(i);
  const double pj = ch.tx_power(j);
  const double pr = ch.power.pr;
  const Complex hri = ch.from_relay(i);

  RateTerms t;
  t.relay = capacity(std::norm(ch.to_relay(i)) * (1.0 - params.tau(i)) * pi / ch.noise.nr);

  const double signal = std::norm(ch.direct(i)) * pi + std::norm(hri) * params.nu(i) * pr +
                        2.0 * (ch.direct(i) * std::conj(hri)).real() *
                            std::sqrt(params.tau(i) * pi * params.nu(i) * pr);
  const double interference = std::norm(ch.cross(i)) * pj + std::norm(hri) * params.nu(j) * pr +
                              2.0 * (ch.cross(i) * std::conj(hri)).real() *
                                  std::sqrt(params.tau(j) * pj * params.nu(j) * pr);
  // Both sums are nonnegative by AM-GM; clamp rounding noise at zero.
  t.destination = capacity(std::max(signal, 0.0) / (std::max(interference, 0.0) + ch.rx_noise(i)));
  return t;
}

double rate(const ChannelInstance& ch, const Params& params, User user) {
  const RateTerms t = rate_terms(ch, params, user);
  return std::min(t.relay, t.destination);
}

RatePair rates(const ChannelInstance& ch, const Params& params) {
  return {rate(ch, params, User::One), rate(ch, params, User::Two)};
}

SearchResult sum_rate_search(const ChannelInstance& ch, const SearchGrid& grid) {
  if (grid.tau_points < 2 || (!grid.fixed_nu && grid.nu_points < 2)) {
    throw DomainError("df sum_rate_search: need at least two grid points per axis");
  }

  std::vector<std::pair<double, double>> nus;
  if (grid.fixed_nu) {
    nus.push_back(*grid.fixed_nu);
  } else {
    const std::size_t n = grid.nu_points;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; a + b < n; ++b) nus.emplace_back(axis(a, n), axis(b, n));
    }
  }

  const std::size_t nt = grid.tau_points;
  Params best{0.0, 0.0, nus.front().first, nus.front().second};
  best.validate();
  double best_sum = -1.0;
  for (const auto& [nu1, nu2] : nus) {
    for (std::size_t a = 0; a < nt; ++a) {
      for (std::size_t b = 0; b < nt; ++b) {
        const Params p{axis(a, nt), axis(b, nt), nu1, nu2};
        const double v = rates(ch, p).sum();
        if (v > best_sum) {
          best_sum = v;
          best = p;
        }
      }
    }
  }

  // One coordinate-descent pass at step / 10.
  const double tau_step = 1.0 / static_cast<double>(nt - 1);
  const double nu_step = grid.fixed_nu ? 0.0 : 1.0 / static_cast<double>(grid.nu_points - 1);
  const std::array<double, 4> steps{tau_step, tau_step, nu_step, nu_step};
  for (std::size_t c = 0; c < steps.size(); ++c) {
    if (steps[c] == 0.0) continue;
    const double centre = coordinate(best, c);
    double chosen = centre;
    for (int k = -10; k <= 10; ++k) {
      if (k == 0) continue;
      Params trial = best;
      coordinate(trial, c) = centre + steps[c] * k / 10.0;
      if (!feasible(trial)) continue;
      const double v = rates(ch, trial).sum();
      if (v > best_sum) {
        best_sum = v;
        chosen = coordinate(trial, c);
      }
    }
    coordinate(best, c) = chosen;
  }

  return {best, rates(ch, best)};
}

SearchResult sum_rate_search(const ChannelInstance& ch, std::size_t grid_points) {
  SearchGrid grid;
  grid.tau_points = grid_points;
  grid.nu_points = grid_points;
  return sum_rate_search(ch, grid);
}

double best_response(const ChannelInstance& ch, double other_tau, User user,
                     std::pair<double, double> nu, std::size_t grid_points) {
  if (!in_unit(other_tau)) throw DomainError("best_response: other_tau must lie in [0, 1]");
  if (grid_points < 2) throw DomainError("best_response: need at least two grid points");

  Params p;
  p.nu1 = nu.first;
  p.nu2 = nu.second;
  double& own = user == User::One ? p.tau1 : p.tau2;
  (user == User::One ? p.tau2 : p.tau1) = other_tau;
  p.validate();

  double best_tau = 0.0;
  double best_rate = -1.0;
  for (std::size_t k = 0; k < grid_points; ++k) {
    own = axis(k, grid_points);
    const double v = rate(ch, p, user);
    if (v > best_rate) {
      best_rate = v;
      best_tau = own;
    }
  }

  const double step = 1.0 / static_cast<double>(grid_points - 1);
  const double centre = best_tau;
  for (int k = -10; k <= 10; ++k) {
    const double t = centre + step * k / 10.0;
    if (k == 0 || !in_unit(t)) continue;
    own = t;
    const double v = rate(ch, p, user);
    if (v > best_rate) {
      best_rate = v;
      best_tau = t;
    }
  }
  return best_tau;
}

}  // namespace irc::df
