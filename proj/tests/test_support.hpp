#pragma once

// Shared fixtures and random generators for the unit tests.

#include <cmath>
#include <random>
#include <vector>

#include "relaybf/instance_gen.hpp"
#include "relaybf/numerics.hpp"
#include "relaybf/problem.hpp"

namespace relaybf::testing {

inline ComplexVector vec(std::initializer_list<Complex> values) {
  ComplexVector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (Complex z : values) v(i++) = z;
  return v;
}

inline HermitianMatrix herm(std::initializer_list<std::initializer_list<Complex>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  ComplexMatrix a(n, n);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (Complex z : row) a(i, j++) = z;
    ++i;
  }
  return HermitianMatrix(a);
}

/// M = 1, K = 1, h = 1, gamma = 1, sigma2 = 1, C = 2 (eta = 4). Optimum by hand:
/// beta = 2, p = 3/2, Q = 1/2, both objectives 2.
inline ProblemInstance scalar_instance(double capacity = 2.0, double gamma = 1.0) {
  return ProblemInstance(1.0, {vec({1.0})}, {gamma}, {capacity});
}

inline ComplexVector random_vector(Eigen::Index n, Rng& rng) {
  std::normal_distribution<double> g(0.0, std::sqrt(0.5));
  ComplexVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(g(rng), g(rng));
  return v;
}

inline HermitianMatrix random_hermitian(Eigen::Index n, Rng& rng) {
  ComplexMatrix a(n, n);
  for (Eigen::Index j = 0; j < n; ++j) a.col(j) = random_vector(n, rng);
  return HermitianMatrix(ComplexMatrix(a + a.adjoint()));
}

/// A A^H + shift I, well conditioned for moderate shifts.
inline HermitianMatrix random_pd(Eigen::Index n, Rng& rng, double shift = 1.0) {
  ComplexMatrix a(n, n);
  for (Eigen::Index j = 0; j < n; ++j) a.col(j) = random_vector(n, rng);
  return HermitianMatrix(ComplexMatrix(a * a.adjoint() + shift * ComplexMatrix::Identity(n, n)));
}

/// Random instance with rate targets in [rate_lo, rate_hi] and capacities in
/// [cap_lo, cap_hi]; small targets keep it feasible with high probability.
inline ProblemInstance random_instance(int relays, int users, Rng& rng, double rate_lo = 0.1,
                                       double rate_hi = 0.6, double cap_lo = 2.0,
                                       double cap_hi = 4.0) {
  std::uniform_real_distribution<double> rate(rate_lo, rate_hi);
  std::uniform_real_distribution<double> cap(cap_lo, cap_hi);
  std::vector<ComplexVector> channels;
  std::vector<double> targets;
  for (int k = 0; k < users; ++k) {
    channels.push_back(random_vector(relays, rng));
    targets.push_back(sinr_from_rate(rate(rng)));
  }
  std::vector<double> caps;
  for (int m = 0; m < relays; ++m) caps.push_back(cap(rng));
  return ProblemInstance(1.0, std::move(channels), std::move(targets), std::move(caps));
}

}  // namespace relaybf::testing
