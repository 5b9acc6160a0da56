#include "relaybf/solver.hpp"

#include "relaybf/errors.hpp"

namespace relaybf {

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kSolved: return "Solved";
    case SolveStatus::kInfeasible: return "Infeasible";
    case SolveStatus::kNumericalFailure: return "NumericalFailure";
  }
  return "Unknown";
}

SolveOutcome solve(const ProblemInstance& inst, const SolverConfig& config,
                   const SolveTraces& traces) {
  SolveOutcome out;
  try {
    DualResult dual = solve_dual(inst, config.dual, traces.dual);
    out.dual_iterations = dual.state.iteration;
    switch (dual.state.status) {
      case IterationStatus::kDiverged:
        out.status = SolveStatus::kInfeasible;
        out.message = "dual iteration diverged";
        return out;
      case IterationStatus::kMaxIterations:
        out.status = SolveStatus::kNumericalFailure;
        out.message = "dual iteration hit the iteration cap";
        return out;
      case IterationStatus::kConverged:
        break;
    }
    out.dual = std::move(dual.solution);

    PrimalResult primal = solve_primal(inst, *out.dual, config.primal, traces.primal);
    out.primal_iterations = primal.iterations;
    if (primal.status != IterationStatus::kConverged) {
      out.status = SolveStatus::kNumericalFailure;
      out.message = std::string("primal iteration ended with ") + std::string(to_string(primal.status));
      return out;
    }
    out.primal = std::move(primal.solution);
    out.status = SolveStatus::kSolved;
  } catch (const Error& e) {
    out.status = SolveStatus::kNumericalFailure;
    out.message = e.what();
  }
  return out;
}

}  // namespace relaybf
