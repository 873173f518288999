#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "irc/channel.hpp"

namespace irc::af {

/// Per-user composites that put the zero-delay scalar AF rate in the form
///
///   R_i(a) = C( |m a + n|^2 / (|p a + q|^2 + s a^2 + 1) ).
///
/// Everything is normalised by the receiver noise N_i, so
///   m = h_ir h_ri sqrt(rho_i),     n = h_ii sqrt(rho_i),
///   p = h_jr h_ri sqrt(P_j / N_i), q = h_ji sqrt(P_j / N_i),
///   s = |h_ri|^2 N_r / N_i.
/// With N_1 = N_2 = N_r these reduce to the familiar sqrt(rho_j), |h_ri|^2.
struct Auxiliaries {
  Complex m, n, p, q;
  double s = 0.0;
};

Auxiliaries auxiliaries(const ChannelInstance& ch, User user);

/// Coefficients of c2 a^2 + c1 a + c0, the numerator of dR_i/da. The
/// denominator of the derivative is positive, so the sign of this quadratic
/// is the sign of the slope.
struct Quadratic {
  double c2 = 0.0;
  double c1 = 0.0;
  double c0 = 0.0;

  double operator()(double a) const noexcept { return (c2 * a + c1) * a + c0; }
  double discriminant() const noexcept { return c1 * c1 - 4.0 * c2 * c0; }
};

Quadratic slope_quadratic(const Auxiliaries& aux);

/// Which branch of the optimal-gain case analysis produced the answer.
enum class GainCase {
  NoRealRootIncreasing,   // Delta < 0, c2 > 0
  NoRealRootDecreasing,   // Delta < 0, c2 < 0
  UpNoPositiveRoot,       // 1a
  UpOnePositiveRoot,      // 1b / 1c
  UpTwoPositiveRoots,     // 1d
  UpDoubleRoot,           // 1d-iii
  DownNoPositiveRoot,     // 2a
  DownOnePositiveRoot,    // 2b / 2c
  DownTwoPositiveRoots,   // 2d
  DownDoubleRoot,         // 2d-iii
  LinearIncreasing,       // c2 ~ 0, c1 > 0
  LinearDecreasing,       // c2 ~ 0, c1 < 0
  ConstantSlope,          // c2 ~ c1 ~ 0
  Degenerate,             // all coefficients zero
};

std::string_view to_string(GainCase c) noexcept;

struct Analysis {
  User user = User::One;
  Auxiliaries aux;
  double saturation_gain = 0.0;
  Quadratic quadratic;
  double discriminant = 0.0;
  /// Real roots of the slope quadratic in ascending order (0, 1 or 2).
  std::vector<double> critical_points;
  double asymptote = 0.0;
  double optimal_gain = 0.0;
  double optimal_rate = 0.0;
  GainCase branch = GainCase::Degenerate;
  bool degenerate = false;
};

/// Rate of user i with amplification gain a >= 0 (single-user decoding).
double rate(const ChannelInstance& ch, double gain, User user);

/// Rate from precomputed auxiliaries; identical to rate() up to rounding.
double rate(const Auxiliaries& aux, double gain) noexcept;

/// dR_i/da in bits per unit gain.
double rate_derivative(const Auxiliaries& aux, double gain) noexcept;

/// Gain that makes the relay transmit exactly P_r.
double saturation_gain(const ChannelInstance& ch);

/// Real solutions of the slope quadratic. A leading coefficient below
/// 1e-14 * max|c| is treated as zero and the linear equation is solved.
/// Returns std::nullopt when every coefficient vanishes.
std::optional<std::vector<double>> critical_points(const Quadratic& quad);
std::optional<std::vector<double>> critical_points(const ChannelInstance& ch, User user);

/// Closed-form critical points for real-valued gains:
///   -n/m  and  -(m q^2 + m - p q n) / (m q p - p^2 n - n s).
/// Requires real auxiliaries; the second entry is absent when its
/// denominator is zero.
std::vector<double> real_critical_points(const Auxiliaries& aux);

/// Maximises R_i over [0, saturation_gain] by the critical-point case
/// analysis, with rates compared exactly at the candidate points.
Analysis optimal_gain(const ChannelInstance& ch, User user);

struct SumRateOptions {
  std::size_t scan_points = 10000;
  double tolerance = 1e-10;
};

struct SumRateResult {
  double gain = 0.0;
  RatePair rates;
};

/// Maximises R_1(a) + R_2(a) over [0, saturation_gain]: dense scan of the
/// analytic slope, then bisection on every + to - sign change.
SumRateResult sum_rate_gain(const ChannelInstance& ch, const SumRateOptions& options = {});
SumRateResult sum_rate_gain(const ChannelInstance& ch, double tolerance);

}  // namespace irc::af
