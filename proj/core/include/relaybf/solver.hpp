#pragma once

#include <optional>
#include <string>

#include "relaybf/dual_solver.hpp"
#include "relaybf/primal_solver.hpp"

namespace relaybf {

struct SolverConfig {
  FixedPointConfig dual;
  FixedPointConfig primal;
};

enum class SolveStatus { kSolved, kInfeasible, kNumericalFailure };

std::string_view to_string(SolveStatus status);

struct SolveOutcome {
  SolveStatus status = SolveStatus::kNumericalFailure;
  std::optional<PrimalSolution> primal;
  std::optional<DualSolution> dual;
  int dual_iterations = 0;
  int primal_iterations = 0;
  /// Human-readable reason when status != kSolved.
  std::string message;
};

struct SolveTraces {
  TraceSink dual;
  TraceSink primal;
};

/// Two-stage solve: dual fixed point on beta (with the multipliers recovered
/// in closed form), then the primal fixed point on the powers. Never throws
/// for numerical trouble; that is reported through the status.
SolveOutcome solve(const ProblemInstance& inst, const SolverConfig& config = {},
                   const SolveTraces& traces = {});

}  // namespace relaybf
