#include "irc/af.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "irc/errors.hpp"

namespace irc::af {
namespace {

constexpr double kLinearThreshold = 1e-14;

double rate_from_sinr(double sinr) noexcept { return std::log2(1.0 + sinr); }

void check_gain(double gain) {
  if (!std::isfinite(gain) || gain < 0.0) {
    throw DomainError("amplification gain must be finite and nonnegative");
  }
}

}  // namespace

std::string_view to_string(GainCase c) noexcept {
  switch (c) {
    case GainCase::NoRealRootIncreasing: return "no-real-root/increasing";
    case GainCase::NoRealRootDecreasing: return "no-real-root/decreasing";
    case GainCase::UpNoPositiveRoot: return "1a";
    case GainCase::UpOnePositiveRoot: return "1b";
    case GainCase::UpTwoPositiveRoots: return "1d";
    case GainCase::UpDoubleRoot: return "1d-iii";
    case GainCase::DownNoPositiveRoot: return "2a";
    case GainCase::DownOnePositiveRoot: return "2b";
    case GainCase::DownTwoPositiveRoots: return "2d";
    case GainCase::DownDoubleRoot: return "2d-iii";
    case GainCase::LinearIncreasing: return "linear/up";
    case GainCase::LinearDecreasing: return "linear/down";
    case GainCase::ConstantSlope: return "constant-slope";
    case GainCase::Degenerate: return "degenerate";
  }
  return "unknown";
}

Auxiliaries auxiliaries(const ChannelInstance& ch, User i) {
  const User j = other(i);
  const double ni = ch.rx_noise(i);
  const double own = std::sqrt(ch.snr(i));
  const double interferer = std::sqrt(ch.tx_power(j) / ni);
  Auxiliaries aux;
  aux.m = ch.to_relay(i) * ch.from_relay(i) * own;
  aux.n = ch.direct(i) * own;
  aux.p = ch.to_relay(j) * ch.from_relay(i) * interferer;
  aux.q = ch.cross(i) * interferer;
  aux.s = std::norm(ch.from_relay(i)) * ch.noise.nr / ni;
  return aux;
}

Quadratic slope_quadratic(const Auxiliaries& aux) {
  const double mm = std::norm(aux.m);
  const double nn = std::norm(aux.n);
  const double pp_s = std::norm(aux.p) + aux.s;
  const double qq_1 = std::norm(aux.q) + 1.0;
  const double re_mn = (aux.m * std::conj(aux.n)).real();
  const double re_pq = (aux.p * std::conj(aux.q)).real();
  return {mm * re_pq - pp_s * re_mn, mm * qq_1 - nn * pp_s, qq_1 * re_mn - nn * re_pq};
}

double rate(const ChannelInstance& ch, double gain, User i) {
  check_gain(gain);
  const User j = other(i);
  const double ni = ch.rx_noise(i);
  const Complex hri = ch.from_relay(i);
  const double signal = std::norm(gain * ch.to_relay(i) * hri + ch.direct(i)) * ch.snr(i);
  const double interference =
      std::norm(gain * ch.to_relay(j) * hri + ch.cross(i)) * ch.snr(j) * ch.rx_noise(j) / ni;
  const double relay_noise = gain * gain * std::norm(hri) * ch.noise.nr / ni;
  return capacity(signal / (interference + relay_noise + 1.0));
}

double rate(const Auxiliaries& aux, double gain) noexcept {
  const double num = std::norm(aux.m * gain + aux.n);
  const double den = std::norm(aux.p * gain + aux.q) + aux.s * gain * gain + 1.0;
  return rate_from_sinr(num / den);
}

double rate_derivative(const Auxiliaries& aux, double gain) noexcept {
  const double num = std::norm(aux.m * gain + aux.n);
  const double den = std::norm(aux.p * gain + aux.q) + aux.s * gain * gain + 1.0;
  const double g = slope_quadratic(aux)(gain);
  return 2.0 * g / (std::numbers::ln2 * den * (den + num));
}

double saturation_gain(const ChannelInstance& ch) {
  const double relay_rx = std::norm(ch.h1r) * ch.power.p1 + std::norm(ch.h2r) * ch.power.p2 + ch.noise.nr;
  return std::sqrt(ch.power.pr / relay_rx);
}

std::optional<std::vector<double>> critical_points(const Quadratic& quad) {
  const double cmax = std::max({std::abs(quad.c2), std::abs(quad.c1), std::abs(quad.c0)});
  if (cmax == 0.0) return std::nullopt;

  if (std::abs(quad.c2) < kLinearThreshold * cmax) {
    if (std::abs(quad.c1) < kLinearThreshold * cmax) return std::vector<double>{};
    return std::vector<double>{-quad.c0 / quad.c1};
  }

  const double disc = quad.discriminant();
  if (disc < 0.0) return std::vector<double>{};

  // Stable form: one root from t / c2, the other from c0 / t.
  const double t = -0.5 * (quad.c1 + std::copysign(std::sqrt(disc), quad.c1));
  if (t == 0.0) return std::vector<double>{0.0, 0.0};
  double r1 = t / quad.c2;
  double r2 = quad.c0 / t;
  if (r1 > r2) std::swap(r1, r2);
  return std::vector<double>{r1, r2};
}

std::optional<std::vector<double>> critical_points(const ChannelInstance& ch, User user) {
  return critical_points(slope_quadratic(auxiliaries(ch, user)));
}

std::vector<double> real_critical_points(const Auxiliaries& aux) {
  const double m = aux.m.real();
  const double n = aux.n.real();
  const double p = aux.p.real();
  const double q = aux.q.real();
  const double s = aux.s;
  std::vector<double> roots;
  if (m != 0.0) roots.push_back(-n / m);
  const double den = m * q * p - p * p * n - n * s;
  if (den != 0.0) roots.push_back(-(m * q * q + m - p * q * n) / den);
  return roots;
}

Analysis optimal_gain(const ChannelInstance& ch, User user) {
  Analysis out;
  out.user = user;
  out.aux = auxiliaries(ch, user);
  out.saturation_gain = saturation_gain(ch);
  out.quadratic = slope_quadratic(out.aux);
  out.discriminant = out.quadratic.discriminant();
  {
    const double pp_s = std::norm(out.aux.p) + out.aux.s;
    out.asymptote = rate_from_sinr(std::norm(out.aux.m) / pp_s);
  }

  const double sat = out.saturation_gain;
  const Auxiliaries& aux = out.aux;
  const auto R = [&](double a) { return rate(aux, a); };
  // Larger rate wins; ties go to the first argument.
  const auto better = [&](double a, double b) { return R(a) >= R(b) ? a : b; };

  const Quadratic& quad = out.quadratic;
  const double cmax = std::max({std::abs(quad.c2), std::abs(quad.c1), std::abs(quad.c0)});
  const double scale = (std::norm(aux.m) + std::norm(aux.n)) *
                       (std::norm(aux.p) + std::norm(aux.q) + aux.s + 1.0);

  double best = sat;
  if (cmax == 0.0 || cmax <= kLinearThreshold * scale) {
    out.branch = GainCase::Degenerate;
    out.degenerate = true;
    best = sat;
  } else if (std::abs(quad.c2) < kLinearThreshold * cmax) {
    if (std::abs(quad.c1) < kLinearThreshold * cmax) {
      out.branch = GainCase::ConstantSlope;
      best = quad.c0 > 0.0 ? sat : 0.0;
    } else {
      const double r = -quad.c0 / quad.c1;
      out.critical_points = {r};
      if (quad.c1 > 0.0) {
        // Slope negative before r, positive after.
        out.branch = GainCase::LinearIncreasing;
        if (r <= 0.0) best = sat;
        else if (sat <= r) best = 0.0;
        else best = better(0.0, sat);
      } else {
        out.branch = GainCase::LinearDecreasing;
        if (r <= 0.0) best = 0.0;
        else best = std::min(r, sat);
      }
    }
  } else if (out.discriminant < 0.0) {
    out.branch = quad.c2 > 0.0 ? GainCase::NoRealRootIncreasing : GainCase::NoRealRootDecreasing;
    best = quad.c2 > 0.0 ? sat : 0.0;
  } else {
    out.critical_points = *critical_points(quad);
    const double lo = out.critical_points[0];
    const double hi = out.critical_points[1];
    const bool double_root = out.discriminant == 0.0 || lo == hi;

    if (quad.c2 > 0.0) {
      // Slope positive outside [lo, hi], negative inside.
      if (hi <= 0.0) {
        out.branch = GainCase::UpNoPositiveRoot;
        best = sat;
      } else if (lo <= 0.0) {
        out.branch = GainCase::UpOnePositiveRoot;
        best = sat <= hi ? 0.0 : better(0.0, sat);
      } else if (double_root) {
        out.branch = GainCase::UpDoubleRoot;
        best = sat;
      } else {
        out.branch = GainCase::UpTwoPositiveRoots;
        if (sat <= lo) best = sat;
        else if (sat <= hi) best = lo;
        else best = better(lo, sat);
      }
    } else {
      // Slope negative outside [lo, hi], positive inside.
      if (hi <= 0.0) {
        out.branch = GainCase::DownNoPositiveRoot;
        best = 0.0;
      } else if (lo <= 0.0) {
        out.branch = GainCase::DownOnePositiveRoot;
        best = std::min(hi, sat);
      } else if (double_root) {
        out.branch = GainCase::DownDoubleRoot;
        best = 0.0;
      } else {
        out.branch = GainCase::DownTwoPositiveRoots;
        if (sat <= lo) best = 0.0;
        else if (sat <= hi) best = better(0.0, sat);
        else best = better(hi, 0.0);
      }
    }
  }

  out.optimal_gain = best;
  out.optimal_rate = rate(ch, best, user);
  return out;
}

SumRateResult sum_rate_gain(const ChannelInstance& ch, const SumRateOptions& options) {
  if (!(options.tolerance > 0.0)) throw DomainError("sum_rate_gain: tolerance must be positive");
  if (options.scan_points < 2) throw DomainError("sum_rate_gain: need at least two scan points");

  const Auxiliaries a1 = auxiliaries(ch, User::One);
  const Auxiliaries a2 = auxiliaries(ch, User::Two);
  const double sat = saturation_gain(ch);
  const auto slope = [&](double a) { return rate_derivative(a1, a) + rate_derivative(a2, a); };
  const auto total = [&](double a) { return rate(a1, a) + rate(a2, a); };

  const std::size_t n = options.scan_points;
  const auto grid = [&](std::size_t k) {
    return k + 1 == n ? sat : sat * static_cast<double>(k) / static_cast<double>(n - 1);
  };

  std::vector<double> candidates{0.0};
  double prev_slope = slope(0.0);
  double scan_best = 0.0;
  double scan_best_value = total(0.0);
  for (std::size_t k = 1; k < n; ++k) {
    const double a = grid(k);
    const double s = slope(a);
    const double v = total(a);
    if (v > scan_best_value) {
      scan_best_value = v;
      scan_best = a;
    }
    if (prev_slope > 0.0 && s <= 0.0) {
      double lo = grid(k - 1);
      double hi = a;
      while (hi - lo > options.tolerance) {
        const double mid = 0.5 * (lo + hi);
        if (slope(mid) > 0.0) lo = mid;
        else hi = mid;
      }
      candidates.push_back(0.5 * (lo + hi));
    }
    prev_slope = s;
  }
  candidates.push_back(scan_best);
  candidates.push_back(sat);
  std::sort(candidates.begin(), candidates.end());

  SumRateResult result;
  double best_value = -1.0;
  for (double a : candidates) {
    const double v = total(a);
    if (v > best_value) {
      best_value = v;
      result.gain = a;
    }
  }
  result.rates = {rate(ch, result.gain, User::One), rate(ch, result.gain, User::Two)};
  return result;
}

SumRateResult sum_rate_gain(const ChannelInstance& ch, double tolerance) {
  SumRateOptions options;
  options.tolerance = tolerance;
  return sum_rate_gain(ch, options);
}

}  // namespace irc::af
