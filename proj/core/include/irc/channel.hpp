#pragma once

#include <array>
#include <complex>

namespace irc {

using Complex = std::complex<double>;

/// Transmitter/receiver pair index. The "other" user of i is written -i in
/// the usual notation.
enum class User { One = 1, Two = 2 };

constexpr User other(User u) noexcept { return u == User::One ? User::Two : User::One; }
constexpr int index_of(User u) noexcept { return u == User::One ? 0 : 1; }

struct Powers {
  double p1 = 0.0;
  double p2 = 0.0;
  double pr = 0.0;
};

struct Noises {
  double n1 = 0.0;
  double n2 = 0.0;
  double nr = 0.0;
};

/// Fixed-gain Gaussian interference relay channel:
///
///   Y1 = h11 X1 + h21 X2 + hr1 Xr + Z1
///   Y2 = h22 X2 + h12 X1 + hr2 Xr + Z2
///   Yr = h1r X1 + h2r X2 + Zr
///
/// h_ij is the gain from node i to node j. There is no relay self-loop.
struct ChannelInstance {
  Complex h11, h12, h21, h22;
  Complex h1r, h2r, hr1, hr2;
  Powers power;
  Noises noise;

  /// Throws DomainError unless every power and noise variance is finite and
  /// strictly positive and every gain is finite.
  void validate() const;

  Complex direct(User i) const noexcept { return i == User::One ? h11 : h22; }
  /// Gain from the interfering source into receiver i (h_ji).
  Complex cross(User i) const noexcept { return i == User::One ? h21 : h12; }
  Complex to_relay(User i) const noexcept { return i == User::One ? h1r : h2r; }
  Complex from_relay(User i) const noexcept { return i == User::One ? hr1 : hr2; }
  double tx_power(User i) const noexcept { return i == User::One ? power.p1 : power.p2; }
  double rx_noise(User i) const noexcept { return i == User::One ? noise.n1 : noise.n2; }
  /// rho_i = P_i / N_i.
  double snr(User i) const noexcept { return tx_power(i) / rx_noise(i); }
};

/// The same channel with users 1 and 2 relabelled.
ChannelInstance swap_users(const ChannelInstance& ch);

struct RatePair {
  double r1 = 0.0;
  double r2 = 0.0;

  double sum() const noexcept { return r1 + r2; }
  double operator[](User u) const noexcept { return u == User::One ? r1 : r2; }
};

/// C(x) = log2(1 + x), bits per complex channel use. Throws DomainError for
/// negative or non-finite x.
double capacity(double sinr);

/// |h| = (d / d0)^(-gamma / 2).
double path_loss_gain(double distance, double d0, double gamma);

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Node placement for geometry-driven experiments. Sources and destinations
/// lie in the z = 0 plane; the relay sits at height epsilon above (x, y).
struct NodeLayout {
  Point2 s1, s2, d1, d2;
  Point2 relay;
  double d0 = 5.0;
  double gamma = 2.0;
  double epsilon = 0.1;

  void validate() const;
  std::array<double, 3> relay_position() const noexcept { return {relay.x, relay.y, epsilon}; }
};

/// Builds pure path-loss (real, nonnegative) gains from the layout and
/// copies the supplied powers and noises through.
ChannelInstance layout_to_channel(const NodeLayout& layout, const Powers& powers,
                                  const Noises& noises);

/// Reference layout: S1 at the origin, D1 at (11.5, 0), d(S2,D2) = 10,
/// d(S1,D2) = 11, d(S2,D1) = 14 m, with S2 placed to minimise d(S1,S2)
/// over the closed upper half-plane. d0 = 5 m, gamma = 2, epsilon = 0.1 m.
NodeLayout default_layout();

}  // namespace irc
