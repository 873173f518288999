#include "irc/random.hpp"

#include <cmath>
#include <numbers>

namespace irc {
namespace {

Complex unit_disc(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = std::sqrt(u(rng));
  return std::polar(r, 2.0 * std::numbers::pi * u(rng));
}

double log_uniform(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(std::log(0.1), std::log(10.0));
  return std::exp(u(rng));
}

}  // namespace

ChannelInstance random_channel(std::mt19937_64& rng) {
  ChannelInstance ch;
  for (Complex* h : {&ch.h11, &ch.h12, &ch.h21, &ch.h22, &ch.h1r, &ch.h2r, &ch.hr1, &ch.hr2}) *h = unit_disc(rng);
  ch.power = {log_uniform(rng), log_uniform(rng), log_uniform(rng)};
  ch.noise = {log_uniform(rng), log_uniform(rng), log_uniform(rng)};
  return ch;
}

ChannelInstance random_real_channel(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ChannelInstance ch = random_channel(rng);
  for (Complex* h : {&ch.h11, &ch.h12, &ch.h21, &ch.h22, &ch.h1r, &ch.h2r, &ch.hr1, &ch.hr2}) *h = u(rng);
  return ch;
}

ChannelInstance random_symmetric_channel(std::mt19937_64& rng) {
  ChannelInstance ch;
  ch.h11 = ch.h22 = unit_disc(rng);
  ch.h12 = ch.h21 = unit_disc(rng);
  ch.h1r = ch.h2r = unit_disc(rng);
  ch.hr1 = ch.hr2 = unit_disc(rng);
  const double p = log_uniform(rng);
  const double n = log_uniform(rng);
  ch.power = {p, p, log_uniform(rng)};
  ch.noise = {n, n, log_uniform(rng)};
  return ch;
}

}  // namespace irc
