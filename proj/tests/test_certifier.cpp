#include <cmath>

#include "doctest.h"
#include "json.hpp"
#include "relaybf/certifier.hpp"
#include "relaybf/solver.hpp"
#include "test_support.hpp"

using namespace relaybf;
using relaybf::testing::herm;
using relaybf::testing::vec;

namespace {

// Hand-derived optimum of the scalar instance.
PrimalSolution analytic_primal(double p = 1.5) { return {{vec({1.0})}, {p}, herm({{0.5}})}; }
DualSolution analytic_dual(double beta = 2.0) { return {{beta}, {vec({1.0})}}; }

}  // namespace

TEST_CASE("certify the analytic optimum") {
  const auto inst = relaybf::testing::scalar_instance();
  const Certificate cert = certify(inst, analytic_primal(), analytic_dual());
  CHECK(cert.pass());
  CHECK(cert.failures().empty());
  CHECK(std::abs(cert.duality_gap) <= 1e-10);
  CHECK(cert.objective_primal == doctest::Approx(2.0));
  CHECK(cert.objective_dual == doctest::Approx(2.0));
  for (const auto& [name, check] : cert.conditions) {
    INFO(name);
    CHECK(check.residual >= 0.0);
    CHECK(check.pass);
  }
  CHECK(cert.conditions.size() == 11);
}

TEST_CASE("perturbations are caught") {
  const auto inst = relaybf::testing::scalar_instance();
  SUBCASE("power perturbed") {
    const Certificate cert = certify(inst, analytic_primal(2.0), analytic_dual());
    CHECK_FALSE(cert.pass());
    CHECK_FALSE(cert.conditions.at(condition::kSinrEquality).pass);
  }
  SUBCASE("beta perturbed without re-deriving the multipliers") {
    const Certificate cert = certify(inst, analytic_primal(), analytic_dual(2.2));
    CHECK_FALSE(cert.conditions.at(condition::kDZero).pass);
    CHECK_FALSE(cert.pass());
  }
  SUBCASE("negative beta") {
    const Certificate cert = certify(inst, analytic_primal(), analytic_dual(-0.1));
    CHECK_FALSE(cert.conditions.at(condition::kBetaNonneg).pass);
  }
  SUBCASE("multiplier breaks the zero prefix") {
    const ProblemInstance two(1.0, {vec({1.0, 0.5})}, {1.0}, {2.0, 2.0});
    const auto out = solve(two);
    REQUIRE(out.status == SolveStatus::kSolved);
    DualSolution dual = *out.dual;
    dual.lambdas[1](0) = 1e-3;
    const Certificate cert = certify(two, *out.primal, dual);
    CHECK_FALSE(cert.conditions.at(condition::kLambdaStructure).pass);
  }
  SUBCASE("indefinite Q") {
    PrimalSolution sol = analytic_primal();
    sol.q = herm({{-0.5}});
    const Certificate cert = certify(inst, sol, analytic_dual());
    CHECK_FALSE(cert.conditions.at(condition::kQPsd).pass);
    CHECK_FALSE(cert.conditions.at(condition::kBmPsd).pass);
  }
}

TEST_CASE("gap") {
  const auto inst = relaybf::testing::scalar_instance();
  CHECK(gap(inst, {{vec({1.0})}, {0.0}, HermitianMatrix(1)}, analytic_dual(0.0)) == 0.0);
  CHECK(gap(inst, analytic_primal(), analytic_dual()) == doctest::Approx(0.0));
  CHECK(gap(inst, analytic_primal(2.5), analytic_dual()) == doctest::Approx(1.0));
}

TEST_CASE("solver output certifies on random instances") {
  Rng rng(1234);
  int solved = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const int relays = 1 + static_cast<int>(rng() % 8);
    const int users = 1 + static_cast<int>(rng() % 10);
    const ProblemInstance inst = relaybf::testing::random_instance(relays, users, rng, 0.1, 1.0);
    const auto out = solve(inst);
    if (out.status != SolveStatus::kSolved) continue;
    ++solved;
    const Certificate cert = certify(inst, *out.primal, *out.dual);
    INFO(cert.failures());
    CHECK(cert.pass());
  }
  CHECK(solved > 30);
}

TEST_CASE("property: weak duality on feasible pairs") {
  // Dual iterates from zero stay dual feasible: D = 0 by construction and
  // beta <= I(beta) keeps C_k - beta_k H_k PSD. Scaling an optimal primal
  // point up keeps it primal feasible. The gap must then be non-negative.
  Rng rng(4321);
  std::uniform_real_distribution<double> up(1.0, 3.0);
  for (int trial = 0; trial < 30; ++trial) {
    const ProblemInstance inst = relaybf::testing::random_instance(
        1 + static_cast<int>(rng() % 6), 1 + static_cast<int>(rng() % 6), rng, 0.1, 0.8);
    const auto out = solve(inst);
    if (out.status != SolveStatus::kSolved) continue;

    std::vector<std::vector<double>> iterates;
    solve_dual(inst, {}, [&](int, std::span<const double> b, double) { iterates.emplace_back(b.begin(), b.end()); });
    PrimalSolution primal = *out.primal;
    const double t = up(rng);
    for (double& p : primal.powers) p *= t;
    primal.q = t * primal.q;

    for (std::size_t i = 0; i < iterates.size(); i += 3) {
      const DualSolution dual{iterates[i], recover_lambdas(inst, iterates[i])};
      const Certificate cert = certify(inst, primal, dual);
      CHECK(cert.conditions.at(condition::kBmPsd).pass);
      CHECK(cert.conditions.at(condition::kDZero).pass);
      CHECK(gap(inst, primal, dual) >= -1e-9 * (1.0 + objective(primal)));
    }
  }
}

TEST_CASE("certificate JSON records residuals and tolerances") {
  const auto inst = relaybf::testing::scalar_instance();
  const auto doc = nlohmann::json::parse(to_json(certify(inst, analytic_primal(), analytic_dual())));
  CHECK(doc.at("pass").get<bool>());
  CHECK(doc.at("conditions").at("sinr_equality").at("tolerance").get<double>() == 1e-7);
  CHECK(doc.at("conditions").at("q_psd").at("tolerance").get<double>() == 1e-8);
  CHECK(doc.at("tolerances").at("gap").get<double>() == 1e-6);
  CHECK(doc.at("rank_margin").is_null());  // a single relay has no second eigenvalue
  CHECK(doc.at("objective_dual").get<double>() == doctest::Approx(2.0));
}
