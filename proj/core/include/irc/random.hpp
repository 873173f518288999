#pragma once

#include <random>

#include "irc/channel.hpp"

namespace irc {

/// Random instances for property tests and the CLI's --seed option.
/// Gains are uniform on the unit disc, powers and noises log-uniform on
/// [0.1, 10].
ChannelInstance random_channel(std::mt19937_64& rng);

/// As random_channel, with real gains uniform on (-1, 1).
ChannelInstance random_real_channel(std::mt19937_64& rng);

/// h11 = h22, h12 = h21, h1r = h2r, hr1 = hr2, P1 = P2 and N1 = N2.
ChannelInstance random_symmetric_channel(std::mt19937_64& rng);

}  // namespace irc
