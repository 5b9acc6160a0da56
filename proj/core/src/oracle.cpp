#include "relaybf/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "relaybf/errors.hpp"

namespace relaybf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

// ---------------------------------------------------------------------------
// Single relay. Beamformers are scalars and Q = [q]. For fixed q the least
// powers meeting every SINR target solve
//   p_k (1 + gamma_k) = gamma_k (s + q + sigma2 / |h_k|^2),  s = sum_k p_k,
// so s(q) is affine and increasing; the fronthaul constraint reads
// s(q) <= (eta - 1) q and the objective s(q) + q increases with q. The
// optimum is the smallest feasible q, which the grid brackets.

struct ScalarModel {
  double share = 0.0;   // sum_k gamma_k / (1 + gamma_k)
  double offset = 0.0;  // sum_k gamma_k / (1 + gamma_k) * sigma2 / |h_k|^2
  double eta = 0.0;

  bool interference_feasible() const { return share < 1.0; }
  double power(double q) const { return (share * q + offset) / (1.0 - share); }
  bool feasible(double q) const { return power(q) <= (eta - 1.0) * q; }
  double total(double q) const { return power(q) + q; }
};

ObjectiveBracket single_relay(const ProblemInstance& inst, const OracleGrid& grid) {
  ScalarModel model;
  model.eta = inst.eta(0);
  double noise_scale = 0.0;
  for (int k = 0; k < inst.users(); ++k) {
    const double a = inst.sinr_target(k) / (1.0 + inst.sinr_target(k));
    const double effective_noise = inst.sigma2() / std::norm(inst.channel(k)(0));
    model.share += a;
    model.offset += a * effective_noise;
    noise_scale = std::max(noise_scale, effective_noise);
  }
  if (!model.interference_feasible()) {
    throw Error(ErrorKind::kInfeasibleOnGrid, "SINR targets are jointly unreachable");
  }

  const int n = std::max(grid.scalar_points, 3);
  const double lo_exp = std::log10(noise_scale) - 10.0;
  const double hi_exp = std::log10(noise_scale) + 10.0;
  double q_lo = 0.0;
  double q_hi = -1.0;
  for (int i = 0; i < n; ++i) {
    const double q = std::pow(10.0, lo_exp + (hi_exp - lo_exp) * i / (n - 1));
    if (model.feasible(q)) {
      q_hi = q;
      break;
    }
    q_lo = q;
  }
  if (q_hi < 0.0) throw Error(ErrorKind::kInfeasibleOnGrid, "no feasible noise level on the grid");

  for (int round = 0; round < 64; ++round) {
    if (model.total(q_hi) - model.total(q_lo) <= grid.scalar_width * model.total(q_hi)) break;
    const double a = q_lo;
    const double b = q_hi;
    for (int i = 1; i < n; ++i) {
      const double q = a + (b - a) * i / (n - 1);
      if (model.feasible(q)) {
        q_hi = q;
        break;
      }
      q_lo = q;
    }
  }
  return {model.total(q_lo), model.total(q_hi), true};
}

// ---------------------------------------------------------------------------
// Two relays. Directions v_k = [cos t_k, sin t_k e^{i f_k}] (global phase is
// irrelevant) and Q = d e1 e1^H + s w w^H with unit w = [cos c e^{i r}, sin c],
// so that the Schur complement of Q(2,2) in Q is d and trace Q = d + s. For
// fixed angles both fronthaul constraints are tight at the optimum and make
// (d, s) linear in the powers; the SINR equalities then give the powers from a
// non-negative linear system, feasible iff its spectral radius is below one.

constexpr int kMaxParams = 6;
using Params = std::array<double, kMaxParams>;

struct TwoRelayModel {
  const ProblemInstance* inst;
  int users;

  int dims() const { return 2 * users + 2; }

  // Upper limits of each angle; lower limits are 0 except the Q angle.
  double upper(int i) const {
    const bool magnitude = (i % 2 == 0);
    return magnitude ? kPi / 2.0 : 2.0 * kPi;
  }
  double lower(int i) const { return i == 2 * users ? 1e-6 : 0.0; }

  double evaluate(const Params& x) const {
    const ProblemInstance& in = *inst;
    const double eta1 = in.eta(0);
    const double eta2 = in.eta(1);
    std::array<ComplexVector, 2> v;
    std::array<double, 2> a{};
    std::array<double, 2> b{};
    const double c = x[2 * users];
    const double r = x[2 * users + 1];
    ComplexVector w(2);
    w << std::polar(std::cos(c), r), std::sin(c);
    const double sin2c = std::sin(c) * std::sin(c);
    const double cos2c = std::cos(c) * std::cos(c);
    for (int k = 0; k < users; ++k) {
      const double t = x[2 * k];
      v[k] = ComplexVector(2);
      v[k] << std::cos(t), std::polar(std::sin(t), x[2 * k + 1]);
      const double s2 = std::sin(t) * std::sin(t);
      a[k] = s2 / ((eta2 - 1.0) * sin2c);
      b[k] = (std::cos(t) * std::cos(t) + a[k] * cos2c) / (eta1 - 1.0);
    }
    // T p + u = p
    std::array<std::array<double, 2>, 2> T{};
    std::array<double, 2> u{};
    for (int i = 0; i < users; ++i) {
      const ComplexVector& h = in.channel(i);
      const double own = std::norm(h.dot(v[i]));
      if (!(own > 1e-300)) return kInf;
      const double gamma = in.sinr_target(i);
      const double e1 = std::norm(h(0));
      const double ww = std::norm(w.dot(h));
      for (int k = 0; k < users; ++k) {
        double coupling = b[k] * e1 + a[k] * ww;
        if (k != i) coupling += std::norm(h.dot(v[k]));
        T[i][k] = gamma * coupling / own;
      }
      u[i] = gamma * in.sigma2() / own;
    }
    std::array<double, 2> p{};
    if (users == 1) {
      if (!(T[0][0] < 1.0)) return kInf;
      p[0] = u[0] / (1.0 - T[0][0]);
    } else {
      const double tr = T[0][0] + T[1][1];
      const double det = T[0][0] * T[1][1] - T[0][1] * T[1][0];
      const double disc = std::max(0.0, tr * tr - 4.0 * det);
      if (!((tr + std::sqrt(disc)) / 2.0 < 1.0)) return kInf;
      const double m00 = 1.0 - T[0][0];
      const double m11 = 1.0 - T[1][1];
      const double mdet = m00 * m11 - T[0][1] * T[1][0];
      p[0] = (m11 * u[0] + T[0][1] * u[1]) / mdet;
      p[1] = (T[1][0] * u[0] + m00 * u[1]) / mdet;
    }
    double total = 0.0;
    for (int k = 0; k < users; ++k) {
      if (!(p[k] >= 0.0) || !std::isfinite(p[k])) return kInf;
      total += p[k] * (1.0 + a[k] + b[k]);
    }
    return total;
  }
};

struct Candidate {
  double value;
  Params x;
};

Candidate pattern_search(const TwoRelayModel& model, Candidate start, double step,
                         double min_step) {
  const int d = model.dims();
  int combos = 1;
  for (int i = 0; i < d; ++i) combos *= 3;
  while (step >= min_step) {
    Candidate best = start;
    for (int code = 0; code < combos; ++code) {
      Params x = start.x;
      int c = code;
      for (int i = 0; i < d; ++i) {
        x[i] += step * static_cast<double>(c % 3 - 1);
        c /= 3;
        if (i % 2 == 0) {
          x[i] = std::clamp(x[i], model.lower(i), model.upper(i));
        } else {
          x[i] = std::remainder(x[i] - kPi, 2.0 * kPi) + kPi;  // phases wrap around
        }
      }
      const double f = model.evaluate(x);
      if (f < best.value) best = {f, x};
    }
    if (best.value < start.value) {
      start = best;
    } else {
      step *= 0.5;
    }
  }
  return start;
}

ObjectiveBracket two_relays(const ProblemInstance& inst, const OracleGrid& grid) {
  const TwoRelayModel model{&inst, inst.users()};
  const int d = model.dims();
  const int n = std::max(grid.angle_points, 2);
  long total = 1;
  for (int i = 0; i < d; ++i) total *= n;

  // Keep a pool much larger than the number of seeds, then pick seeds spread
  // over the grid so that neighbouring points of one basin do not crowd out
  // other basins.
  const auto seeds = static_cast<std::size_t>(std::max(grid.seeds, 1));
  const std::size_t pool_size = 64 * seeds;
  auto worse = [](const Candidate& l, const Candidate& r) { return l.value < r.value; };
  std::vector<Candidate> pool;  // max-heap on value
  Params x{};
  for (long idx = 0; idx < total; ++idx) {
    long rest = idx;
    for (int i = 0; i < d; ++i) {
      const int j = static_cast<int>(rest % n);
      rest /= n;
      // periodic phases skip the duplicate endpoint
      const bool magnitude = (i % 2 == 0);
      const double span = model.upper(i) - model.lower(i);
      x[i] = model.lower(i) + span * (magnitude ? j / double(n - 1) : j / double(n));
    }
    const double f = model.evaluate(x);
    if (!std::isfinite(f)) continue;
    if (pool.size() < pool_size) {
      pool.push_back({f, x});
      std::push_heap(pool.begin(), pool.end(), worse);
    } else if (f < pool.front().value) {
      std::pop_heap(pool.begin(), pool.end(), worse);
      pool.back() = {f, x};
      std::push_heap(pool.begin(), pool.end(), worse);
    }
  }
  if (pool.empty()) throw Error(ErrorKind::kInfeasibleOnGrid, "no feasible point on the angle grid");
  std::sort_heap(pool.begin(), pool.end(), worse);

  auto far_apart = [&](const Params& a, const Params& b) {
    for (int i = 0; i < d; ++i) {
      const double span = model.upper(i) - model.lower(i);
      const double cell = span / (i % 2 == 0 ? n - 1 : n);
      double diff = std::abs(a[i] - b[i]);
      if (i % 2 == 1) diff = std::min(diff, span - diff);
      if (diff > 1.5 * cell) return true;
    }
    return false;
  };
  std::vector<Candidate> best;
  for (const Candidate& c : pool) {
    if (best.size() == seeds) break;
    if (std::all_of(best.begin(), best.end(), [&](const Candidate& b) { return far_apart(b.x, c.x); })) {
      best.push_back(c);
    }
  }

  const double step = (kPi / 2.0) / (n - 1);
  double upper = best.front().value;
  for (const Candidate& seed : best) {
    upper = std::min(upper, pattern_search(model, seed, step, grid.min_step).value);
  }
  return {upper, upper, false};
}

}  // namespace

ObjectiveBracket brute_force_oracle(const ProblemInstance& inst, const OracleGrid& grid) {
  if (inst.relays() > 2 || inst.users() > 2) {
    throw Error(ErrorKind::kInvalidInstance, "brute-force oracle handles at most 2 relays and 2 users");
  }
  return inst.relays() == 1 ? single_relay(inst, grid) : two_relays(inst, grid);
}

}  // namespace relaybf
