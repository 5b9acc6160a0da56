#include "relaybf/instance_gen.hpp"

#include <cmath>

namespace relaybf {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(splitmix64(seed) ^ a) ^ b);
}

ProblemInstance gen_instance(const InstanceParams& params, Rng& rng) {
  std::normal_distribution<double> half_variance(0.0, std::sqrt(0.5));
  std::vector<ComplexVector> channels;
  channels.reserve(static_cast<std::size_t>(params.users));
  for (int k = 0; k < params.users; ++k) {
    ComplexVector h(params.relays);
    for (int m = 0; m < params.relays; ++m) {
      const double re = half_variance(rng);
      const double im = half_variance(rng);
      h(m) = Complex(re, im);
    }
    channels.push_back(std::move(h));
  }
  return ProblemInstance(params.sigma2, std::move(channels),
                         std::vector<double>(static_cast<std::size_t>(params.users),
                                             sinr_from_rate(params.rate_target)),
                         std::vector<double>(static_cast<std::size_t>(params.relays), params.capacity));
}

}  // namespace relaybf
