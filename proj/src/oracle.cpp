#include "beliefd/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "beliefd/binary.hpp"
#include "beliefd/errors.hpp"
#include "beliefd/moments.hpp"

namespace beliefd {

namespace {

constexpr std::size_t kShards = 256;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 shard_rng(std::uint64_t seed, std::uint64_t shard) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(shard + 1)));
}

// Fast payoff evaluation on a raw belief matrix with f's marginals.
struct PayoffEvaluator {
  const Scenario& sc;
  std::vector<double> y;
  const std::vector<double>& f_s;

  explicit PayoffEvaluator(const Scenario& s) : sc(s), f_s(s.joint().col_marginal()) {
    y.resize(s.n());
    for (std::size_t i = 0; i < s.n(); ++i) y[i] = s.bias_value(i);
  }

  double operator()(const Matrix& g) const {
    double u = 0.0;
    for (std::size_t j = 0; j < sc.m(); ++j) {
      double a = 0.0;
      for (std::size_t i = 0; i < sc.n(); ++i) a += y[i] * g(i, j);
      a /= f_s[j];
      for (std::size_t i = 0; i < sc.n(); ++i) {
        const double d = a - sc.state(i);
        u -= sc.joint()(i, j) * d * d;
      }
    }
    return u;
  }
};

// Belief induced by a transformation matrix; rejects infeasible t.
bool belief_from_t(const JointDistribution& f, const Matrix& t, Matrix& out) {
  const std::size_t n = f.states(), m = f.signals();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      auto tt = [&](std::size_t k, std::size_t l) -> double {
        if (k >= n - 1 || l >= m - 1) return 0.0;
        return t(k, l);
      };
      const double dd = tt(i, j) - (i > 0 ? tt(i - 1, j) : 0.0) -
                        (j > 0 ? tt(i, j - 1) : 0.0) +
                        (i > 0 && j > 0 ? tt(i - 1, j - 1) : 0.0);
      const double v = f(i, j) + dd;
      if (v < 0.0 || v > 1.0) return false;
      out(i, j) = v;
    }
  return true;
}

// Exact 1-D concave maximization along coordinate (k,l) of t, within the
// interval keeping all four affected cells of g inside [0,1].
void refine_coordinates(const Scenario& sc, const PayoffEvaluator& eval, Matrix& t,
                        double& best, std::size_t& evaluations) {
  const JointDistribution& f = sc.joint();
  const std::size_t n = f.states(), m = f.signals();
  Matrix g(n, m);
  if (!belief_from_t(f, t, g)) return;
  const auto& f_s = f.col_marginal();
  const std::vector<double> pm = posterior_means(sc);

  for (std::size_t sweep = 0; sweep < 200; ++sweep) {
    double gained = 0.0;
    for (std::size_t k = 0; k + 1 < n; ++k)
      for (std::size_t l = 0; l + 1 < m; ++l) {
        // A unit move of t(k,l) adds +1 to g(k,l), g(k+1,l+1) and -1 to
        // g(k+1,l), g(k,l+1).
        double lo = -std::numeric_limits<double>::infinity();
        double hi = std::numeric_limits<double>::infinity();
        auto bound = [&](std::size_t i, std::size_t j, double sign) {
          // g(i,j) + sign*d in [0,1]
          if (sign > 0) {
            lo = std::max(lo, -g(i, j));
            hi = std::min(hi, 1.0 - g(i, j));
          } else {
            lo = std::max(lo, g(i, j) - 1.0);
            hi = std::min(hi, g(i, j));
          }
        };
        bound(k, l, +1);
        bound(k + 1, l + 1, +1);
        bound(k + 1, l, -1);
        bound(k, l + 1, -1);
        if (!(hi > lo)) continue;

        // U(t + d e_{kl}) = U + d * slope - d^2 * curv.
        double al = 0.0, al1 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          al += eval.y[i] * g(i, l);
          al1 += eval.y[i] * g(i, l + 1);
        }
        al /= f_s[l];
        al1 /= f_s[l + 1];
        const double dyk = eval.y[k] - eval.y[k + 1];  // change of sum_i y_i g_il per unit d
        const double da_l = dyk / f_s[l];
        const double da_l1 = -dyk / f_s[l + 1];
        const double slope =
            -2.0 * (f_s[l] * (al - pm[l]) * da_l + f_s[l + 1] * (al1 - pm[l + 1]) * da_l1);
        const double curv = f_s[l] * da_l * da_l + f_s[l + 1] * da_l1 * da_l1;
        double d = (curv > 1e-18) ? slope / (2.0 * curv) : (slope > 0 ? hi : lo);
        d = std::clamp(d, lo, hi);
        if (std::abs(d) < 1e-15) continue;

        t(k, l) += d;
        g(k, l) += d;
        g(k + 1, l + 1) += d;
        g(k + 1, l) -= d;
        g(k, l + 1) -= d;
        const double u = eval(g);
        ++evaluations;
        gained += u - best;
        best = std::max(best, u);
      }
    if (gained < 1e-13) break;
  }
}

struct PolytopeShard {
  double best = -std::numeric_limits<double>::infinity();
  Matrix best_t;
  std::size_t evaluations = 0;
};

OracleResult scan_polytope_impl(const Scenario& sc, std::size_t budget, std::uint64_t seed,
                                bool parallel) {
  const JointDistribution& f = sc.joint();
  const std::size_t n = f.states(), m = f.signals();
  const PayoffEvaluator eval(sc);

  std::vector<PolytopeShard> shards(kShards);
  const std::size_t base = budget / kShards, rem = budget % kShards;

  auto run_shard = [&](std::size_t s) {
    PolytopeShard& sh = shards[s];
    sh.best_t = Matrix(n - 1, m - 1);
    std::mt19937_64 rng = shard_rng(seed, s);
    std::uniform_real_distribution<double> unif(-0.5, 0.5);
    Matrix t(n - 1, m - 1), g(n, m);
    const std::size_t count = base + (s < rem ? 1 : 0);
    for (std::size_t it = 0; it < count; ++it) {
      for (std::size_t e = 0; e < t.size(); ++e) t.data()[e] = unif(rng);
      ++sh.evaluations;
      if (!belief_from_t(f, t, g)) continue;
      const double u = eval(g);
      if (u > sh.best) {
        sh.best = u;
        sh.best_t = t;
      }
    }
  };

  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long s = 0; s < static_cast<long>(kShards); ++s)
      run_shard(static_cast<std::size_t>(s));
  } else {
    for (std::size_t s = 0; s < kShards; ++s) run_shard(s);
  }

  // Serial combine in shard order keeps the result worker-count independent.
  OracleResult out;
  Matrix best_t(n - 1, m - 1);  // t = 0 baseline: the true distribution itself
  {
    Matrix g(n, m);
    belief_from_t(f, best_t, g);
    out.best_value = eval(g);
    out.evaluations = 1;
  }
  for (const PolytopeShard& sh : shards) {
    out.evaluations += sh.evaluations;
    if (sh.best > out.best_value) {
      out.best_value = sh.best;
      best_t = sh.best_t;
    }
  }

  refine_coordinates(sc, eval, best_t, out.best_value, out.evaluations);
  out.best_point.assign(best_t.data().begin(), best_t.data().end());
  out.resolution = 1e-6;  // refinement tolerance
  return out;
}

struct MomentAccumulator {
  double sum = 0.0, sumsq = 0.0;
  std::size_t count = 0;
};

SimulationResult combine_shards(const std::vector<MomentAccumulator>& shards) {
  SimulationResult out;
  double sum = 0.0, sumsq = 0.0;
  std::size_t count = 0;
  for (const MomentAccumulator& sh : shards) {
    sum += sh.sum;
    sumsq += sh.sumsq;
    count += sh.count;
  }
  const double nd = static_cast<double>(count);
  out.estimate = sum / nd;
  const double var = std::max(0.0, sumsq / nd - out.estimate * out.estimate);
  out.std_error = std::sqrt(var / nd);
  out.draws = count;
  return out;
}

SimulationResult simulate_payoff_impl(const Scenario& sc, const JointDistribution& g,
                                      std::size_t draws, std::uint64_t seed, bool parallel) {
  if (draws < 1) throw parse_error("draws must be >= 1");
  const std::size_t n = sc.n(), m = sc.m();
  // Inverse-CDF table over the flattened joint and per-signal actions.
  std::vector<double> cdf(n * m);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      acc += sc.joint()(i, j);
      cdf[i * m + j] = acc;
    }
  cdf.back() = 1.0;
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = sc.bias_value(i);
  std::vector<double> action(m);
  for (std::size_t j = 0; j < m; ++j) action[j] = conditional_mean(g, y, j);

  std::vector<MomentAccumulator> shards(kShards);
  const std::size_t base = draws / kShards, rem = draws % kShards;
  auto run_shard = [&](std::size_t s) {
    MomentAccumulator& sh = shards[s];
    std::mt19937_64 rng = shard_rng(seed, s);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const std::size_t count = base + (s < rem ? 1 : 0);
    for (std::size_t it = 0; it < count; ++it) {
      const double u = unif(rng);
      const std::size_t cell = static_cast<std::size_t>(
          std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
      const double theta = sc.state(cell / m);
      const double x = action[cell % m];
      const double loss = -(x - theta) * (x - theta);
      sh.sum += loss;
      sh.sumsq += loss * loss;
      ++sh.count;
    }
  };
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (long s = 0; s < static_cast<long>(kShards); ++s)
      run_shard(static_cast<std::size_t>(s));
  } else {
    for (std::size_t s = 0; s < kShards; ++s) run_shard(s);
  }
  return combine_shards(shards);
}

SimulationResult simulate_truth_noise_impl(const TruthNoiseScenario& tn, double kappa,
                                           std::size_t draws, std::uint64_t seed,
                                           bool parallel) {
  if (draws < 1) throw parse_error("draws must be >= 1");
  const double rho = tn.rho();
  if (kappa < -rho - 1e-12 || kappa > 1.0 - rho + 1e-12)
    throw kappa_out_of_range("kappa outside [-rho, 1-rho]");
  const double a = rho + kappa;
  std::vector<double> cdf(tn.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < tn.size(); ++i) {
    acc += tn.weights()[i];
    cdf[i] = acc;
  }
  cdf.back() = 1.0;
  const double mean_y = tn.mean_y();

  std::vector<MomentAccumulator> shards(kShards);
  const std::size_t base = draws / kShards, rem = draws % kShards;
  auto run_shard = [&](std::size_t s) {
    MomentAccumulator& sh = shards[s];
    std::mt19937_64 rng = shard_rng(seed, s);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    auto draw_index = [&]() {
      return static_cast<std::size_t>(
          std::lower_bound(cdf.begin(), cdf.end(), unif(rng)) - cdf.begin());
    };
    const std::size_t count = base + (s < rem ? 1 : 0);
    for (std::size_t it = 0; it < count; ++it) {
      const std::size_t theta_ix = draw_index();
      const bool truthful = unif(rng) < rho;
      const std::size_t signal_ix = truthful ? theta_ix : draw_index();
      const double x = a * tn.bias_value(signal_ix) + (1.0 - a) * mean_y;
      const double d = x - tn.grid()[theta_ix];
      const double loss = -d * d;
      sh.sum += loss;
      sh.sumsq += loss * loss;
      ++sh.count;
    }
  };
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (long s = 0; s < static_cast<long>(kShards); ++s)
      run_shard(static_cast<std::size_t>(s));
  } else {
    for (std::size_t s = 0; s < kShards; ++s) run_shard(s);
  }
  return combine_shards(shards);
}

}  // namespace

OracleResult scan_tau(const Scenario& sc, std::size_t points) {
  require_binary(sc);
  if (points < 3) throw parse_error("scan_tau needs at least 3 points");
  const auto [lo, hi] = tau_bounds(sc);
  const PayoffEvaluator eval(sc);
  OracleResult out;
  out.best_value = -std::numeric_limits<double>::infinity();
  out.resolution = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t k = 0; k < points; ++k) {
    const double tau = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(points - 1);
    const double u = eval(binary_belief(sc, tau).probs());
    ++out.evaluations;
    if (u > out.best_value) {
      out.best_value = u;
      out.best_point = {tau};
    }
  }
  return out;
}

OracleResult scan_kappa(const TruthNoiseScenario& tn, std::size_t points) {
  if (points < 3) throw parse_error("scan_kappa needs at least 3 points");
  const double lo = -tn.rho(), hi = 1.0 - tn.rho();
  OracleResult out;
  out.best_value = -std::numeric_limits<double>::infinity();
  out.resolution = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t k = 0; k < points; ++k) {
    const double kappa =
        lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(points - 1);
    const double u = truth_noise_payoff(tn, kappa);
    ++out.evaluations;
    if (u > out.best_value) {
      out.best_value = u;
      out.best_point = {kappa};
    }
  }
  return out;
}

OracleResult scan_polytope(const Scenario& sc, std::size_t budget, std::uint64_t seed) {
  return scan_polytope_impl(sc, budget, seed, true);
}

OracleResult scan_polytope_serial(const Scenario& sc, std::size_t budget, std::uint64_t seed) {
  return scan_polytope_impl(sc, budget, seed, false);
}

SimulationResult simulate_payoff(const Scenario& sc, const JointDistribution& g,
                                 std::size_t draws, std::uint64_t seed) {
  return simulate_payoff_impl(sc, g, draws, seed, true);
}

SimulationResult simulate_payoff_serial(const Scenario& sc, const JointDistribution& g,
                                        std::size_t draws, std::uint64_t seed) {
  return simulate_payoff_impl(sc, g, draws, seed, false);
}

SimulationResult simulate_truth_noise(const TruthNoiseScenario& tn, double kappa,
                                      std::size_t draws, std::uint64_t seed) {
  return simulate_truth_noise_impl(tn, kappa, draws, seed, true);
}

SimulationResult simulate_truth_noise_serial(const TruthNoiseScenario& tn, double kappa,
                                             std::size_t draws, std::uint64_t seed) {
  return simulate_truth_noise_impl(tn, kappa, draws, seed, false);
}

}  // namespace beliefd
