#pragma once

#include <cstddef>
#include <optional>

#include "irc/channel.hpp"

namespace irc::df {

/// Cooperation degrees tau_i (source power spent on the cooperative signal)
/// and relay power shares nu_i, with nu_1 + nu_2 <= 1.
struct Params {
  double tau1 = 0.0;
  double tau2 = 0.0;
  double nu1 = 0.0;
  double nu2 = 0.0;

  double tau(User u) const noexcept { return u == User::One ? tau1 : tau2; }
  double nu(User u) const noexcept { return u == User::One ? nu1 : nu2; }
  /// Throws DomainError on out-of-range values.
  void validate() const;
};

/// The two arguments of the min: relay decoding and destination decoding.
struct RateTerms {
  double relay = 0.0;
  double destination = 0.0;
};

RateTerms rate_terms(const ChannelInstance& ch, const Params& params, User user);

/// min{ C(|h_ir|^2 (1 - tau_i) P_i / N_r),
///      C((|h_ii|^2 P_i + |h_ri|^2 nu_i P_r + 2 Re(h_ii h_ri*) sqrt(tau_i P_i nu_i P_r)) /
///        (|h_ji|^2 P_j + |h_ri|^2 nu_j P_r + 2 Re(h_ji h_ri*) sqrt(tau_j P_j nu_j P_r) + N_i)) }
double rate(const ChannelInstance& ch, const Params& params, User user);

RatePair rates(const ChannelInstance& ch, const Params& params);

struct SearchGrid {
  /// Points per tau axis on [0, 1].
  std::size_t tau_points = 101;
  /// Points per nu axis on the simplex nu1 + nu2 <= 1; ignored when fixed_nu is set.
  std::size_t nu_points = 101;
  /// Search tau only, with the relay split held at this value.
  std::optional<std::pair<double, double>> fixed_nu;
};

struct SearchResult {
  Params params;
  RatePair rates;
};

/// Exhaustive grid maximisation of R_1 + R_2 followed by one coordinate
/// refinement pass at a tenth of the grid step. Ties keep the lowest grid
/// index, so the result is deterministic.
SearchResult sum_rate_search(const ChannelInstance& ch, const SearchGrid& grid);
SearchResult sum_rate_search(const ChannelInstance& ch, std::size_t grid_points);

/// tau_i maximising R_i with tau_j held at other_tau and nu fixed.
double best_response(const ChannelInstance& ch, double other_tau, User user,
                     std::pair<double, double> nu, std::size_t grid_points = 101);

}  // namespace irc::df
