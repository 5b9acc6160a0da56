#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>

#include "CLI11.hpp"
#include "json.hpp"
#include "relaybf/relaybf.hpp"

namespace {

using namespace relaybf;

enum Exit { kOk = 0, kFail = 1, kInfeasible = 2, kNumerical = 3, kUsage = 64 };

struct GenArgs {
  InstanceParams params;
  std::uint64_t seed = 1;
  std::string out;
};

struct SolveArgs {
  std::string in, out, trace, dual_out;
  double tol = FixedPointConfig{}.tol;
  int max_iters = FixedPointConfig{}.max_iters;
};

struct CertifyArgs {
  std::string instance, solution, dual;
};

struct SweepArgs {
  std::string config, out_csv, out_json;
  bool no_timing = false;
  int threads = 0;
};

int run_gen(const GenArgs& a) {
  Rng rng(a.seed);
  write_file(a.out, serialize_instance(gen_instance(a.params, rng)));
  return kOk;
}

TraceSink trace_to(std::ostream* out, const char* stage) {
  if (!out) return {};
  return [out, stage](int it, std::span<const double> x, double residual) {
    nlohmann::json line{{"stage", stage}, {"iter", it}, {"x", std::vector<double>(x.begin(), x.end())},
                        {"residual", residual}};
    *out << line.dump() << '\n';
  };
}

int run_solve(const SolveArgs& a) {
  const ProblemInstance inst = parse_instance(read_file(a.in));
  SolverConfig cfg;
  cfg.dual.tol = cfg.primal.tol = a.tol;
  cfg.dual.max_iters = cfg.primal.max_iters = a.max_iters;

  std::unique_ptr<std::ofstream> trace;
  if (!a.trace.empty()) {
    trace = std::make_unique<std::ofstream>(a.trace);
    if (!*trace) throw Error(ErrorKind::kSchema, "cannot open " + a.trace);
  }
  const SolveOutcome out = solve(inst, cfg, {trace_to(trace.get(), "dual"), trace_to(trace.get(), "primal")});
  std::fprintf(stderr, "status %s, dual iterations %d, primal iterations %d\n",
               std::string(to_string(out.status)).c_str(), out.dual_iterations, out.primal_iterations);
  if (out.status != SolveStatus::kSolved) {
    std::fprintf(stderr, "%s\n", out.message.c_str());
    return out.status == SolveStatus::kInfeasible ? kInfeasible : kNumerical;
  }
  write_file(a.out, serialize_solution(*out.primal));
  if (!a.dual_out.empty()) write_file(a.dual_out, serialize_dual(*out.dual));
  std::fprintf(stderr, "objective %.12g\n", objective(*out.primal));
  return kOk;
}

int run_certify(const CertifyArgs& a) {
  const ProblemInstance inst = parse_instance(read_file(a.instance));
  const Certificate cert = certify(inst, parse_solution(read_file(a.solution)), parse_dual(read_file(a.dual)));
  std::cout << to_json(cert);
  return cert.pass() ? kOk : kFail;
}

int run_sweep_cmd(const SweepArgs& a) {
  SweepConfig cfg = parse_sweep_config(read_file(a.config));
  if (a.threads > 0) cfg.threads = a.threads;
  const SweepResult result = run_sweep(cfg);
  write_file(a.out_csv, to_csv(result, !a.no_timing));
  if (!a.out_json.empty()) write_file(a.out_json, to_json(result));
  for (const RatePoint& p : result.aggregate) {
    std::fprintf(stderr, "rate %.3g: solved %d infeasible %d failed %d certified %d mean power %.6g\n", p.rate_target,
                 p.solved, p.infeasible, p.failed, p.certified, p.mean_objective);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint beamforming and fronthaul quantisation power minimisation"};
  app.require_subcommand(1);
  int code = kOk;

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Draw a Rayleigh-fading instance");
  g->add_option("--M", gen.params.relays, "relays")->check(CLI::PositiveNumber);
  g->add_option("--K", gen.params.users, "users")->check(CLI::PositiveNumber);
  g->add_option("--capacity", gen.params.capacity, "fronthaul capacity per relay, bits/symbol");
  g->add_option("--sigma2", gen.params.sigma2, "receiver noise power");
  g->add_option("--rate", gen.params.rate_target, "user rate target, bits/symbol");
  g->add_option("--seed", gen.seed, "generator seed");
  g->add_option("--out", gen.out, "instance file")->required();
  g->callback([&] { code = run_gen(gen); });

  SolveArgs sv;
  auto* s = app.add_subcommand("solve", "Solve an instance");
  s->add_option("--in", sv.in, "instance file")->required();
  s->add_option("--out", sv.out, "solution file")->required();
  s->add_option("--tol", sv.tol, "fixed-point tolerance")->check(CLI::PositiveNumber);
  s->add_option("--max-iters", sv.max_iters, "iteration cap per stage")->check(CLI::PositiveNumber);
  s->add_option("--trace", sv.trace, "write iterates as JSON lines");
  s->add_option("--dual-out", sv.dual_out, "dual solution file");
  s->callback([&] { code = run_solve(sv); });

  CertifyArgs ca;
  auto* c = app.add_subcommand("certify", "Check optimality of a primal/dual pair");
  c->add_option("--instance", ca.instance)->required();
  c->add_option("--solution", ca.solution)->required();
  c->add_option("--dual", ca.dual)->required();
  c->callback([&] { code = run_certify(ca); });

  SweepArgs sw;
  auto* w = app.add_subcommand("sweep", "Monte-Carlo sweep over rate targets");
  w->add_option("--config", sw.config, "sweep configuration (JSON)")->required();
  w->add_option("--out-csv", sw.out_csv)->required();
  w->add_option("--out-json", sw.out_json);
  w->add_flag("--no-timing", sw.no_timing, "leave wall_time_ms empty so the CSV is reproducible");
  w->add_option("--threads", sw.threads, "overrides the config")->check(CLI::NonNegativeNumber);
  w->callback([&] { code = run_sweep_cmd(sw); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  }
  return code;
}
