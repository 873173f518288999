#include "irc/channel.hpp"

#include <cmath>
#include <string>

#include "irc/errors.hpp"

namespace irc {
namespace {

void require_positive(double v, const char* name) {
  if (!std::isfinite(v) || v <= 0.0) {
    throw DomainError(std::string(name) + " must be finite and strictly positive");
  }
}

void require_finite(Complex h, const char* name) {
  if (!std::isfinite(h.real()) || !std::isfinite(h.imag())) {
    throw DomainError(std::string("channel gain ") + name + " must be finite");
  }
}

double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

double relay_distance(const NodeLayout& layout, Point2 node) {
  return std::hypot(distance(layout.relay, node), layout.epsilon);
}

}  // namespace

void ChannelInstance::validate() const {
  require_positive(power.p1, "P1");
  require_positive(power.p2, "P2");
  require_positive(power.pr, "Pr");
  require_positive(noise.n1, "N1");
  require_positive(noise.n2, "N2");
  require_positive(noise.nr, "Nr");
  require_finite(h11, "h11");
  require_finite(h12, "h12");
  require_finite(h21, "h21");
  require_finite(h22, "h22");
  require_finite(h1r, "h1r");
  require_finite(h2r, "h2r");
  require_finite(hr1, "hr1");
  require_finite(hr2, "hr2");
}

ChannelInstance swap_users(const ChannelInstance& ch) {
  ChannelInstance s = ch;
  s.h11 = ch.h22;
  s.h22 = ch.h11;
  s.h12 = ch.h21;
  s.h21 = ch.h12;
  s.h1r = ch.h2r;
  s.h2r = ch.h1r;
  s.hr1 = ch.hr2;
  s.hr2 = ch.hr1;
  s.power.p1 = ch.power.p2;
  s.power.p2 = ch.power.p1;
  s.noise.n1 = ch.noise.n2;
  s.noise.n2 = ch.noise.n1;
  return s;
}

double capacity(double sinr) {
  if (!std::isfinite(sinr) || sinr < 0.0) {
    throw DomainError("capacity: SINR must be finite and nonnegative");
  }
  return std::log2(1.0 + sinr);
}

double path_loss_gain(double distance, double d0, double gamma) {
  if (!std::isfinite(distance) || distance <= 0.0) {
    throw DomainError("path_loss_gain: distance must be strictly positive");
  }
  require_positive(d0, "d0");
  require_positive(gamma, "gamma");
  return std::pow(distance / d0, -gamma / 2.0);
}

void NodeLayout::validate() const {
  require_positive(d0, "d0");
  require_positive(gamma, "gamma");
  if (!std::isfinite(epsilon) || epsilon < 0.0) {
    throw DomainError("epsilon must be finite and nonnegative");
  }
}

ChannelInstance layout_to_channel(const NodeLayout& layout, const Powers& powers,
                                  const Noises& noises) {
  layout.validate();
  const auto gain = [&](double d) -> Complex { return {path_loss_gain(d, layout.d0, layout.gamma), 0.0}; };
  const auto relay_gain = [&](Point2 node) -> Complex {
    const double d = relay_distance(layout, node);
    if (d <= 0.0) {
      throw DomainError("layout_to_channel: relay coincides with a node and epsilon is zero");
    }
    return gain(d);
  };

  ChannelInstance ch;
  ch.h11 = gain(distance(layout.s1, layout.d1));
  ch.h12 = gain(distance(layout.s1, layout.d2));
  ch.h21 = gain(distance(layout.s2, layout.d1));
  ch.h22 = gain(distance(layout.s2, layout.d2));
  ch.h1r = relay_gain(layout.s1);
  ch.h2r = relay_gain(layout.s2);
  ch.hr1 = relay_gain(layout.d1);
  ch.hr2 = relay_gain(layout.d2);
  ch.power = powers;
  ch.noise = noises;
  ch.validate();
  return ch;
}

NodeLayout default_layout() {
  // D2 solves |D2| = 11, |D2 - S2| = 10 with S2 = (-2.5, 0):
  // 5 x + 6.25 = 100 - 121  =>  x = -5.45.
  constexpr double d2x = -5.45;
  NodeLayout layout;
  layout.s1 = {0.0, 0.0};
  layout.d1 = {11.5, 0.0};
  layout.s2 = {11.5 - 14.0, 0.0};
  layout.d2 = {d2x, std::sqrt(11.0 * 11.0 - d2x * d2x)};
  layout.relay = {0.0, 0.5 * 5.0};
  layout.d0 = 5.0;
  layout.gamma = 2.0;
  layout.epsilon = 0.1;
  return layout;
}

}  // namespace irc
