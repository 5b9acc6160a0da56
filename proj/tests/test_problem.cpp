#include <cmath>

#include "doctest.h"
#include "relaybf/errors.hpp"
#include "relaybf/io.hpp"
#include "relaybf/problem.hpp"
#include "test_support.hpp"

using namespace relaybf;
using relaybf::testing::herm;
using relaybf::testing::vec;

namespace {

PrimalSolution scalar_point(double p, double q) {
  return {{vec({1.0})}, {p}, herm({{q}})};
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected relaybf::Error");
  return ErrorKind::kNumericalFailure;
}

PrimalSolution random_point(const ProblemInstance& inst, Rng& rng) {
  PrimalSolution sol;
  std::uniform_real_distribution<double> u(0.1, 2.0);
  for (int k = 0; k < inst.users(); ++k) {
    sol.directions.push_back(relaybf::testing::random_vector(inst.relays(), rng).normalized());
    sol.powers.push_back(u(rng));
  }
  sol.q = relaybf::testing::random_pd(inst.relays(), rng, 0.5);
  return sol;
}

ProblemInstance with_sigma2(const ProblemInstance& inst, double sigma2) {
  return ProblemInstance(sigma2, {inst.channels().begin(), inst.channels().end()},
                         {inst.sinr_targets().begin(), inst.sinr_targets().end()},
                         {inst.capacities().begin(), inst.capacities().end()});
}

PrimalSolution scaled(const PrimalSolution& sol, double t) {
  PrimalSolution out = sol;
  for (double& p : out.powers) p *= t;
  out.q = t * sol.q;
  return out;
}

}  // namespace

TEST_CASE("ProblemInstance validates its invariants") {
  const auto h = vec({1.0});
  CHECK(relaybf::testing::scalar_instance().eta(0) == 4.0);
  CHECK(kind_of([&] { ProblemInstance(0.0, {h}, {1.0}, {2.0}); }) == ErrorKind::kInvalidInstance);
  CHECK(kind_of([&] { ProblemInstance(1.0, {h}, {0.0}, {2.0}); }) == ErrorKind::kInvalidInstance);
  CHECK(kind_of([&] { ProblemInstance(1.0, {h}, {1.0}, {0.0}); }) == ErrorKind::kInvalidInstance);
  CHECK(kind_of([&] { ProblemInstance(1.0, {h}, {1.0}, {}); }) == ErrorKind::kInvalidInstance);
  CHECK(kind_of([&] { ProblemInstance(1.0, {}, {}, {2.0}); }) == ErrorKind::kInvalidInstance);
  CHECK(kind_of([&] { ProblemInstance(1.0, {vec({0.0})}, {1.0}, {2.0}); }) ==
        ErrorKind::kInvalidInstance);
  CHECK(kind_of([&] { ProblemInstance(1.0, {vec({1.0, 1.0})}, {1.0}, {2.0}); }) ==
        ErrorKind::kInvalidInstance);
  CHECK(kind_of([&] { ProblemInstance(1.0, {h}, {1.0, 1.0}, {2.0}); }) == ErrorKind::kInvalidInstance);
}

TEST_CASE("sinr") {
  SUBCASE("analytic optimum is tight") {
    // 1.5 / (0.5 + 1)
    CHECK(sinr(relaybf::testing::scalar_instance(), scalar_point(1.5, 0.5), 0) ==
          doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("zero power") {
    CHECK(sinr(relaybf::testing::scalar_instance(), scalar_point(0.0, 0.5), 0) == 0.0);
  }
  SUBCASE("single user, no quantisation noise") {
    Rng rng(3);
    const ComplexVector h = relaybf::testing::random_vector(3, rng);
    const double gamma = 2.5;
    const double sigma2 = 0.7;
    const ProblemInstance inst(sigma2, {h}, {gamma}, {1.0, 1.0, 1.0});
    const PrimalSolution sol{{h.normalized()}, {gamma * sigma2 / h.squaredNorm()}, HermitianMatrix(3)};
    CHECK(sinr(inst, sol, 0) == doctest::Approx(gamma).epsilon(1e-13));
    CHECK(std::abs(sinr_margin(inst, sol, 0)) <= 1e-13);
  }
  SUBCASE("errors") {
    const auto inst = relaybf::testing::scalar_instance();
    CHECK(kind_of([&] { sinr(inst, scalar_point(1.0, 1.0), 1); }) == ErrorKind::kDimensionMismatch);
    PrimalSolution wrong{{vec({1.0, 0.0})}, {1.0}, HermitianMatrix(2)};
    CHECK(kind_of([&] { sinr(inst, wrong, 0); }) == ErrorKind::kDimensionMismatch);
  }
}

TEST_CASE("fronthaul_rate") {
  SUBCASE("analytic optimum meets the capacity") {
    // log2((3/2 + 1/2) / (1/2))
    CHECK(fronthaul_rate(relaybf::testing::scalar_instance(), scalar_point(1.5, 0.5), 0) ==
          doctest::Approx(2.0).epsilon(1e-15));
  }
  SUBCASE("diagonal Q reduces to per-relay ratios") {
    const ProblemInstance inst(1.0, {vec({1.0, 1.0})}, {1.0}, {2.0, 2.0});
    const ComplexVector v = vec({0.6, {0.0, 0.8}});
    const PrimalSolution sol{{v}, {2.0}, HermitianMatrix::diagonal(Eigen::Vector2d(0.5, 0.25))};
    CHECK(fronthaul_rate(inst, sol, 0) == doctest::Approx(std::log2((2.0 * 0.36 + 0.5) / 0.5)));
    CHECK(fronthaul_rate(inst, sol, 1) == doctest::Approx(std::log2((2.0 * 0.64 + 0.25) / 0.25)));
  }
  SUBCASE("no signal, Q = I") {
    const ProblemInstance inst(1.0, {vec({1.0, 1.0})}, {1.0}, {2.0, 2.0});
    const PrimalSolution sol{{vec({1.0, 0.0})}, {0.0}, HermitianMatrix::identity(2)};
    CHECK(fronthaul_rate(inst, sol, 0) == doctest::Approx(0.0));
    CHECK(fronthaul_rate(inst, sol, 1) == doctest::Approx(0.0));
  }
  SUBCASE("Schur complement against the explicit inverse") {
    Rng rng(17);
    const HermitianMatrix q = relaybf::testing::random_pd(4, rng);
    for (int m = 0; m < 4; ++m) {
      const Eigen::Index tail = 3 - m;
      const ComplexMatrix full = q.dense().bottomRightCorner(4 - m, 4 - m);
      // 1 / [(Q(m:, m:))^{-1}](0, 0)
      const double expected = 1.0 / full.inverse()(0, 0).real();
      CHECK(schur_complement(q, m) == doctest::Approx(expected).epsilon(1e-12));
      (void)tail;
    }
  }
  SUBCASE("singular trailing block") {
    const ProblemInstance inst(1.0, {vec({1.0, 1.0})}, {1.0}, {2.0, 2.0});
    const PrimalSolution sol{{vec({1.0, 0.0})}, {1.0},
                             HermitianMatrix::diagonal(Eigen::Vector2d(1.0, 0.0))};
    CHECK(kind_of([&] { fronthaul_rate(inst, sol, 0); }) == ErrorKind::kSingularTrailingBlock);
    CHECK(kind_of([&] { fronthaul_rate(inst, sol, 1); }) == ErrorKind::kSingularTrailingBlock);
  }
}

TEST_CASE("objective") {
  CHECK(objective({{vec({1.0})}, {0.0}, HermitianMatrix(1)}) == 0.0);
  CHECK(objective(scalar_point(1.5, 0.5)) == doctest::Approx(2.0));
  const PrimalSolution two{{vec({1.0, 0.0}), vec({0.0, 1.0})}, {1.0, 1.0}, HermitianMatrix::identity(2)};
  CHECK(objective(two) == doctest::Approx(4.0));
}

TEST_CASE("fronthaul_matrix is PSD exactly when the rate constraint holds") {
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const ProblemInstance inst = relaybf::testing::random_instance(3, 2, rng);
    const PrimalSolution sol = random_point(inst, rng);
    for (int m = 0; m < 3; ++m) {
      const double rate = fronthaul_rate(inst, sol, m);
      if (std::abs(rate - inst.capacity(m)) < 1e-6) continue;
      CHECK((rate <= inst.capacity(m)) == is_psd(fronthaul_matrix(inst, sol, m)));
    }
  }
}

TEST_CASE("property: homogeneity of the constraint functions") {
  Rng rng(41);
  std::uniform_real_distribution<double> scale(0.1, 10.0);
  for (int trial = 0; trial < 100; ++trial) {
    const ProblemInstance inst = relaybf::testing::random_instance(4, 3, rng);
    const PrimalSolution sol = random_point(inst, rng);
    const double t = scale(rng);
    const ProblemInstance inst_t = with_sigma2(inst, t * inst.sigma2());
    const PrimalSolution sol_t = scaled(sol, t);
    for (int k = 0; k < inst.users(); ++k) {
      CHECK(sinr(inst_t, sol_t, k) == doctest::Approx(sinr(inst, sol, k)).epsilon(1e-11));
    }
    for (int m = 0; m < inst.relays(); ++m) {
      CHECK(fronthaul_rate(inst, sol_t, m) ==
            doctest::Approx(fronthaul_rate(inst, sol, m)).epsilon(1e-10));
    }
    CHECK(objective(sol_t) == doctest::Approx(t * objective(sol)).epsilon(1e-13));
  }
}

TEST_CASE("instance documents") {
  SUBCASE("minimal document") {
    const auto inst = parse_instance(R"({"M": 1, "K": 1, "sigma2": 1, "capacities": [2],
                                          "sinr_targets": [1], "channels": [[[1, 0]]]})");
    CHECK(inst.eta(0) == 4.0);
    CHECK(inst.channel(0)(0) == Complex(1.0, 0.0));
  }
  SUBCASE("rate targets convert to SINR targets") {
    const auto inst = parse_instance(R"({"M": 1, "K": 2, "sigma2": 1, "capacities": [3],
                                          "rate_targets": [1, 0.5],
                                          "channels": [[[1, 0]], [[0, 1]]]})");
    CHECK(inst.sinr_target(0) == 1.0);
    CHECK(inst.sinr_target(1) == doctest::Approx(std::sqrt(2.0) - 1.0));
  }
  SUBCASE("schema errors name the field") {
    auto message = [](const char* doc) {
      try {
        parse_instance(doc);
      } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::kSchema);
        return std::string(e.what());
      }
      FAIL("expected schema error");
      return std::string();
    };
    CHECK(message(R"({"M": 1, "K": 1, "capacities": [2], "sinr_targets": [1],
                      "channels": [[[1, 0]]]})")
              .find("$.sigma2") != std::string::npos);
    CHECK(message(R"({"M": 1, "K": 1, "sigma2": 1, "capacities": [2], "sinr_targets": [1],
                      "rate_targets": [1], "channels": [[[1, 0]]]})")
              .find("exactly one") != std::string::npos);
    CHECK(message(R"({"M": 2, "K": 1, "sigma2": 1, "capacities": [2, 2], "sinr_targets": [1],
                      "channels": [[[1, 0], [1]]]})")
              .find("$.channels[0][1]") != std::string::npos);
    CHECK(message("[1, 2]").find("$") != std::string::npos);
    CHECK(message("{not json").find("malformed") != std::string::npos);
  }
  SUBCASE("invariant violations are reported as invalid instances") {
    CHECK(kind_of([] {
            parse_instance(R"({"M": 1, "K": 1, "sigma2": 1, "capacities": [-1],
                               "sinr_targets": [1], "channels": [[[1, 0]]]})");
          }) == ErrorKind::kInvalidInstance);
  }
  SUBCASE("full-size (M = 8, K = 10) round trip is exact") {
    Rng rng(8);
    const ProblemInstance inst = gen_instance({8, 10, 3.0, 1.0, 0.7}, rng);
    CHECK(parse_instance(serialize_instance(inst)) == inst);
  }
}

TEST_CASE("solution and dual documents round-trip") {
  Rng rng(12);
  const ProblemInstance inst = relaybf::testing::random_instance(3, 2, rng);
  const PrimalSolution sol = random_point(inst, rng);
  const PrimalSolution back = parse_solution(serialize_solution(sol));
  CHECK(back.powers == sol.powers);
  CHECK(approx_equal(back.q.dense(), sol.q.dense(), 0.0));
  for (int k = 0; k < 2; ++k) CHECK(back.directions[k] == sol.directions[k]);

  DualSolution dual{{0.5, 1.25}, {vec({1.0, {2, 1}, 3.0}), vec({0.0, 2.0, {0, 1}}), vec({0.0, 0.0, 4.0})}};
  const DualSolution dual_back = parse_dual(serialize_dual(dual));
  CHECK(dual_back.beta == dual.beta);
  for (int m = 0; m < 3; ++m) CHECK(dual_back.lambdas[m] == dual.lambdas[m]);
  CHECK_THROWS_AS(parse_dual(R"({"beta": [1]})"), Error);
  CHECK_THROWS_AS(parse_solution(R"({"powers": [1], "directions": [[[1, 0]]], "Q": [[[1, 0], [0, 0]]]})"),
                  Error);
}
