#pragma once

#include <cstddef>
#include <string_view>

#include "irc/channel.hpp"

namespace irc::ef {

/// Second-order statistics shared by the compression-noise bounds.
///
///   A     = E|Y_r|^2 = |h1r|^2 P1 + |h2r|^2 P2 + N_r
///   T_k   = |h_kk|^2 P_k + |h_jk|^2 P_j + N_k          (receiver k, relay signal removed)
///   c_k   = E[Y_k Y_r*] = h_kk h_kr* P_k + h_jk h_jr* P_j
///   sigma_k^2 = A - |c_k|^2 / T_k                        (Var(Y_r | Y_k))
struct Derived {
  double a = 0.0;
  Complex c1, c2;
  double t1 = 0.0;
  double t2 = 0.0;
  double sigma1_sq = 0.0;
  double sigma2_sq = 0.0;
};

Derived derived(const ChannelInstance& ch);

/// Which destination (if either) decodes both relay layers and cancels the
/// relay-induced interference under bi-level compression.
enum class BiScenario { D1Better, D2Better, Neither };

std::string_view to_string(BiScenario s) noexcept;
BiScenario parse_bi_scenario(std::string_view text);

struct BiParams {
  double nu1 = 0.5;
  double nu2 = 0.5;
  double nwz1 = 0.0;
  double nwz2 = 0.0;
};

struct NoisePair {
  double nwz1 = 0.0;
  double nwz2 = 0.0;
};

/// Exponent e in 2^(e R0) - 1 of the single-level admissibility bound.
enum class R0Exponent { One = 1, Two = 2 };

struct Options {
  R0Exponent r0_exponent = R0Exponent::Two;
};

/// Condition 1 is checked first and wins ties; condition 2 second.
BiScenario bi_scenario(const ChannelInstance& ch, double nu1, double nu2);

/// Scenario lower bounds on the two compression noises, with +inf where the
/// relay share or relay-to-destination gain is zero.
NoisePair bi_noise_bounds(const ChannelInstance& ch, double nu1, double nu2, BiScenario scenario);

/// Same bounds, but a zero share or gain raises InfeasibleError.
NoisePair bi_min_noise(const ChannelInstance& ch, double nu1, double nu2, BiScenario scenario);

/// Rate caps of the selected scenario. Compression noises may be +inf (that
/// user gets no relay help). Throws ConstraintViolation naming the violated
/// noise bound.
RatePair bi_rate(const ChannelInstance& ch, const BiParams& params, BiScenario scenario);

/// R0 = min_k C(|h_rk|^2 P_r / T_k).
double sl_bottleneck(const ChannelInstance& ch);

/// max{sigma_1^2, sigma_2^2} / (2^(e R0) - 1). InfeasibleError when R0 = 0.
double sl_min_noise(const ChannelInstance& ch, const Options& options = {});

/// Single-level compression rates at compression noise nwz (may be +inf).
/// Throws ConstraintViolation below the admissibility bound and
/// InfeasibleError for a finite nwz when R0 = 0.
RatePair sl_rate(const ChannelInstance& ch, double nwz, const Options& options = {});

struct BiSearchResult {
  BiParams params;
  BiScenario scenario = BiScenario::D1Better;
  RatePair rates;
};

/// Bi-level rates at a fixed relay split with both noises at their bounds.
BiSearchResult bi_at_min_noise(const ChannelInstance& ch, double nu1, double nu2);

/// Sweeps (nu1, nu2) over the simplex grid with noises at their bounds and
/// returns the best sum rate; ties keep the lowest grid index.
BiSearchResult bi_sum_rate_search(const ChannelInstance& ch, std::size_t grid_points);

}  // namespace irc::ef
