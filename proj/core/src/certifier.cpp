#include "relaybf/certifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "json.hpp"
#include "relaybf/dual_solver.hpp"
#include "relaybf/errors.hpp"

namespace relaybf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void record(Certificate& cert, const char* name, double residual, double tolerance) {
  // NaN residuals fail.
  cert.conditions[name] = {residual, tolerance, residual <= tolerance};
}

}  // namespace

bool Certificate::pass() const {
  return std::all_of(conditions.begin(), conditions.end(),
                     [](const auto& kv) { return kv.second.pass; });
}

std::string Certificate::failures() const {
  std::string out;
  for (const auto& [name, check] : conditions) {
    if (check.pass) continue;
    if (!out.empty()) out += ",";
    out += name;
  }
  return out;
}

double gap(const ProblemInstance& inst, const PrimalSolution& primal, const DualSolution& dual) {
  return objective(primal) - dual_objective(inst, dual);
}

Certificate certify(const ProblemInstance& inst, const PrimalSolution& primal,
                    const DualSolution& dual, const CertifierTolerances& tol) {
  check_dimensions(inst, primal);
  check_dimensions(inst, dual);
  Certificate cert;
  cert.tolerances = tol;
  const int relays = inst.relays();
  const int users = inst.users();

  try {
    // D(beta, Lambda) = 0
    const double gamma_scale = 1.0 + build_gamma(inst, dual.beta).max_abs();
    record(cert, condition::kDZero, d_matrix(inst, dual.beta, dual.lambdas).max_abs() / gamma_scale,
           tol.equality);
  } catch (const Error&) {
    record(cert, condition::kDZero, kInf, tol.equality);
  }

  double structure = 0.0;
  for (int m = 0; m < relays; ++m) {
    const ComplexVector& l = dual.lambdas[m];
    for (int i = 0; i < m; ++i) structure = std::max(structure, std::abs(l(i)));
    structure = std::max({structure, std::abs(l(m).imag()), std::max(0.0, -l(m).real())});
  }
  record(cert, condition::kLambdaStructure, structure, 0.0);

  double beta_neg = 0.0;
  for (double b : dual.beta) beta_neg = std::max(beta_neg, -b);
  record(cert, condition::kBetaNonneg, std::isnan(beta_neg) ? kInf : beta_neg, 0.0);

  // C_k - beta_k H_k: PSD with a one-dimensional null space, and orthogonal
  // to V_k.
  double null_eig = 0.0;
  double slackness = 0.0;
  cert.rank_margin = kInf;
  for (int k = 0; k < users; ++k) {
    const HermitianMatrix c = build_c(inst, dual.beta, dual.lambdas, k);
    const HermitianMatrix s = c - dual.beta[k] * inst.channel_gram(k);
    const double scale = 1.0 + c.max_abs();
    const RealVector eig = eigenvalues(s);
    null_eig = std::max(null_eig, std::abs(eig(0)) / scale);
    if (eig.size() > 1) cert.rank_margin = std::min(cert.rank_margin, eig(1));
    slackness = std::max(slackness, std::abs(primal.powers[k] * quadratic_form(s, primal.directions[k])) /
                                        (1.0 + std::abs(primal.powers[k]) * c.max_abs()));
  }
  {
    ConditionCheck check{null_eig, tol.psd, null_eig <= tol.psd && cert.rank_margin > tol.rank};
    cert.conditions[condition::kDualPsdAndRank] = check;
  }
  record(cert, condition::kPrimalSlackness, slackness, tol.equality);

  double rank_one = 0.0;
  for (int k = 0; k < users; ++k) {
    rank_one = std::max({rank_one, std::max(0.0, -primal.powers[k]),
                         std::abs(primal.directions[k].norm() - 1.0)});
  }
  record(cert, condition::kRankOnePrimal, rank_one, tol.equality);

  double sinr_err = 0.0;
  for (int k = 0; k < users; ++k) {
    sinr_err = std::max(sinr_err, std::abs(sinr(inst, primal, k) - inst.sinr_target(k)) /
                                      inst.sinr_target(k));
  }
  record(cert, condition::kSinrEquality, sinr_err, tol.equality);

  double bm_neg = 0.0;
  double bm_slack = 0.0;
  for (int m = 0; m < relays; ++m) {
    const HermitianMatrix b = fronthaul_matrix(inst, primal, m);
    const double scale = 1.0 + b.max_abs();
    bm_neg = std::max(bm_neg, std::max(0.0, -min_eigenvalue(b)) / scale);
    const ComplexVector& l = dual.lambdas[m];
    bm_slack = std::max(bm_slack, std::abs(quadratic_form(b, l)) / (1.0 + b.max_abs() * l.squaredNorm()));
  }
  record(cert, condition::kBmPsd, bm_neg, tol.psd);
  record(cert, condition::kBmSlackness, bm_slack, tol.equality);

  record(cert, condition::kQPsd,
         std::max(0.0, -min_eigenvalue(primal.q)) / (1.0 + primal.q.max_abs()), tol.psd);

  cert.objective_primal = objective(primal);
  cert.objective_dual = dual_objective(inst, dual);
  cert.duality_gap = cert.objective_primal - cert.objective_dual;
  record(cert, condition::kDualityGap,
         std::abs(cert.duality_gap) / (1.0 + std::abs(cert.objective_primal)), tol.gap);
  return cert;
}

std::string to_json(const Certificate& cert) {
  using nlohmann::json;
  // JSON has no infinity; a missing rank margin is written as null.
  auto finite_or_null = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  json doc;
  doc["pass"] = cert.pass();
  json conditions = json::object();
  for (const auto& [name, check] : cert.conditions) {
    conditions[name] = {{"residual", finite_or_null(check.residual)},
                        {"tolerance", check.tolerance},
                        {"pass", check.pass}};
  }
  doc["conditions"] = std::move(conditions);
  doc["duality_gap"] = cert.duality_gap;
  doc["objective_primal"] = cert.objective_primal;
  doc["objective_dual"] = cert.objective_dual;
  doc["rank_margin"] = finite_or_null(cert.rank_margin);
  doc["tolerances"] = {{"equality", cert.tolerances.equality},
                       {"psd", cert.tolerances.psd},
                       {"gap", cert.tolerances.gap},
                       {"rank", cert.tolerances.rank}};
  return doc.dump(2) + "\n";
}

}  // namespace relaybf
