#pragma once

#include <cstdint>
#include <random>

#include "relaybf/problem.hpp"

namespace relaybf {

/// Generator used for every random draw in the project. Streams for
/// independent runs are derived with derive_seed() rather than by sharing one
/// engine, so results do not depend on execution order.
using Rng = std::mt19937_64;

/// SplitMix64 mix of (seed, a, b) into a fresh 64-bit seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

struct InstanceParams {
  int relays = 8;
  int users = 10;
  /// Fronthaul capacity of every relay, bits/symbol.
  double capacity = 3.0;
  double sigma2 = 1.0;
  /// Common user rate target in bits/symbol; SINR target is 2^r - 1.
  double rate_target = 1.0;
};

/// Draws i.i.d. CN(0, 1) channel coefficients (real and imaginary parts each
/// N(0, 1/2)), user by user and relay by relay.
ProblemInstance gen_instance(const InstanceParams& params, Rng& rng);

}  // namespace relaybf
