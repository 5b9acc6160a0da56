#pragma once

// Brute-force reference for tiny instances (at most two relays and two
// users). It shares no code path with the fixed-point solver: it searches the
// original problem directly over a parameterisation of the rank-one
// beamformers and of Q, with the remaining variables eliminated in closed form.

#include "relaybf/problem.hpp"

namespace relaybf {

struct OracleGrid {
  /// Log-spaced points per sweep of the scalar noise level (single relay).
  int scalar_points = 200;
  /// Stop refining the scalar bracket below this relative width.
  double scalar_width = 1e-7;
  /// Coarse grid points per angle (two relays).
  int angle_points = 12;
  /// Number of best coarse points polished by local pattern search.
  int seeds = 6;
  /// Pattern search stops once the step falls below this (radians).
  double min_step = 1e-9;
};

struct ObjectiveBracket {
  double lower = 0.0;
  double upper = 0.0;
  /// True when `lower` is a proven lower bound (single relay); with two
  /// relays the search is local around grid seeds and lower == upper.
  bool lower_is_bound = false;
};

/// Minimum of the total transmit power, bracketed.
/// Throws Error(kInfeasibleOnGrid) when no grid point is feasible and
/// Error(kInvalidInstance) for instances beyond two relays or two users.
ObjectiveBracket brute_force_oracle(const ProblemInstance& inst, const OracleGrid& grid = {});

}  // namespace relaybf
