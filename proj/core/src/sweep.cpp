#include "relaybf/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <thread>

#include "json.hpp"
#include "relaybf/errors.hpp"
#include "relaybf/instance_gen.hpp"

namespace relaybf {

namespace {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <typename T>
T get_or(const json& doc, const char* name, T fallback) {
  auto it = doc.find(name);
  if (it == doc.end()) return fallback;
  try {
    return it->get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kSchema, std::string("$.") + name + ": " + e.what());
  }
}

}  // namespace

std::string_view to_string(RunStatus status) {
  switch (status) {
    case RunStatus::kSolved: return "Solved";
    case RunStatus::kInfeasible: return "Infeasible";
    case RunStatus::kFailed: return "Failed";
  }
  return "Unknown";
}

void validate(const SweepConfig& cfg) {
  auto invalid = [](const std::string& what) { throw Error(ErrorKind::kInvalidInstance, what); };
  if (cfg.relays < 1 || cfg.users < 1) invalid("M and K must be at least 1");
  if (!(cfg.capacity > 0.0)) invalid("capacity must be positive");
  if (!(cfg.sigma2 > 0.0)) invalid("sigma2 must be positive");
  if (cfg.runs < 1) invalid("runs must be at least 1");
  if (cfg.rate_targets.empty()) invalid("rate_targets must be non-empty");
  for (double r : cfg.rate_targets) {
    if (!(r > 0.0)) invalid("rate targets must be positive");
  }
  if (cfg.threads < 1) invalid("threads must be at least 1");
}

SweepConfig parse_sweep_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kSchema, std::string("$: malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorKind::kSchema, "$: expected an object");
  static const std::set<std::string> known{"M",    "K",       "capacity", "sigma2", "rate_targets",
                                           "runs", "seed",    "threads",  "tol",    "max_iters"};
  for (const auto& [key, value] : doc.items()) {
    if (!known.count(key)) throw Error(ErrorKind::kSchema, "$." + key + ": unknown field");
  }
  SweepConfig cfg;
  cfg.relays = get_or(doc, "M", cfg.relays);
  cfg.users = get_or(doc, "K", cfg.users);
  cfg.capacity = get_or(doc, "capacity", cfg.capacity);
  cfg.sigma2 = get_or(doc, "sigma2", cfg.sigma2);
  cfg.rate_targets = get_or(doc, "rate_targets", cfg.rate_targets);
  cfg.runs = get_or(doc, "runs", cfg.runs);
  cfg.seed = get_or(doc, "seed", cfg.seed);
  cfg.threads = get_or(doc, "threads", cfg.threads);
  cfg.solver.dual.tol = cfg.solver.primal.tol = get_or(doc, "tol", cfg.solver.dual.tol);
  cfg.solver.dual.max_iters = cfg.solver.primal.max_iters =
      get_or(doc, "max_iters", cfg.solver.dual.max_iters);
  validate(cfg);
  return cfg;
}

std::uint64_t run_seed(const SweepConfig& cfg, std::size_t rate_index, int run) {
  return derive_seed(cfg.seed, rate_index, static_cast<std::uint64_t>(run));
}

RunRecord run_one(const SweepConfig& cfg, std::size_t rate_index, int run) {
  RunRecord rec;
  rec.rate_target = cfg.rate_targets[rate_index];
  rec.run = run;
  Rng rng(run_seed(cfg, rate_index, run));
  const ProblemInstance inst =
      gen_instance({cfg.relays, cfg.users, cfg.capacity, cfg.sigma2, rec.rate_target}, rng);

  const auto start = std::chrono::steady_clock::now();
  const SolveOutcome out = solve(inst, cfg.solver);
  rec.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  rec.dual_iterations = out.dual_iterations;
  rec.primal_iterations = out.primal_iterations;

  switch (out.status) {
    case SolveStatus::kInfeasible:
      rec.status = RunStatus::kInfeasible;
      return rec;
    case SolveStatus::kNumericalFailure:
      rec.status = RunStatus::kFailed;
      return rec;
    case SolveStatus::kSolved:
      break;
  }
  rec.status = RunStatus::kSolved;
  try {
    const Certificate cert = certify(inst, *out.primal, *out.dual, cfg.certificate);
    rec.objective = cert.objective_primal;
    rec.dual_objective = cert.objective_dual;
    rec.gap = cert.duality_gap;
    rec.certified = cert.pass();
  } catch (const Error&) {
    rec.status = RunStatus::kFailed;
  }
  return rec;
}

SweepResult run_sweep(const SweepConfig& cfg) {
  validate(cfg);
  const std::size_t rates = cfg.rate_targets.size();
  const std::size_t runs = static_cast<std::size_t>(cfg.runs);
  SweepResult result;
  result.records.resize(rates * runs);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < result.records.size(); i = next++) {
      result.records[i] = run_one(cfg, i / runs, static_cast<int>(i % runs));
    }
  };
  const auto threads = static_cast<std::size_t>(cfg.threads);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (std::size_t r = 0; r < rates; ++r) {
    RatePoint point;
    point.rate_target = cfg.rate_targets[r];
    double objective_sum = 0.0;
    double time_sum = 0.0;
    for (std::size_t i = r * runs; i < (r + 1) * runs; ++i) {
      const RunRecord& rec = result.records[i];
      switch (rec.status) {
        case RunStatus::kSolved:
          ++point.solved;
          point.certified += rec.certified ? 1 : 0;
          objective_sum += rec.objective;
          time_sum += rec.wall_time_ms;
          break;
        case RunStatus::kInfeasible: ++point.infeasible; break;
        case RunStatus::kFailed: ++point.failed; break;
      }
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    point.mean_objective = point.solved > 0 ? objective_sum / point.solved : nan;
    point.mean_wall_time_ms = point.solved > 0 ? time_sum / point.solved : nan;
    result.aggregate.push_back(point);
  }
  return result;
}

std::string to_csv(const SweepResult& result, bool include_timing) {
  std::string out =
      "rate_target,run,status,objective,dual_objective,gap,dual_iters,primal_iters,wall_time_ms\n";
  for (const RunRecord& rec : result.records) {
    const bool solved = rec.status == RunStatus::kSolved;
    out += format_double(rec.rate_target) + "," + std::to_string(rec.run) + "," +
           std::string(to_string(rec.status)) + ",";
    if (solved) {
      out += format_double(rec.objective) + "," + format_double(rec.dual_objective) + "," +
             format_double(rec.gap);
    } else {
      out += ",,";
    }
    out += "," + std::to_string(rec.dual_iterations) + "," + std::to_string(rec.primal_iterations) +
           ",";
    if (include_timing) out += format_double(rec.wall_time_ms);
    out += "\n";
  }
  return out;
}

std::string to_json(const SweepResult& result) {
  auto number_or_null = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  json doc;
  json aggregate = json::array();
  for (const RatePoint& p : result.aggregate) {
    aggregate.push_back({{"rate_target", p.rate_target},
                         {"solved", p.solved},
                         {"infeasible", p.infeasible},
                         {"failed", p.failed},
                         {"certified", p.certified},
                         {"mean_objective", number_or_null(p.mean_objective)},
                         {"mean_wall_time_ms", number_or_null(p.mean_wall_time_ms)}});
  }
  doc["aggregate"] = std::move(aggregate);
  json records = json::array();
  for (const RunRecord& r : result.records) {
    json rec = {{"rate_target", r.rate_target},
                {"run", r.run},
                {"status", std::string(to_string(r.status))},
                {"dual_iterations", r.dual_iterations},
                {"primal_iterations", r.primal_iterations},
                {"wall_time_ms", r.wall_time_ms}};
    if (r.status == RunStatus::kSolved) {
      rec["objective"] = r.objective;
      rec["dual_objective"] = r.dual_objective;
      rec["gap"] = r.gap;
      rec["certified"] = r.certified;
    }
    records.push_back(std::move(rec));
  }
  doc["records"] = std::move(records);
  return doc.dump(2) + "\n";
}

}  // namespace relaybf
