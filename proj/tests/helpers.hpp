#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "beliefd/design.hpp"
#include "beliefd/moments.hpp"
#include "beliefd/scenario.hpp"

namespace testutil {

using namespace beliefd;

// Random full-support joint with strictly increasing posterior means:
// columns are exponential tilts of a random base distribution (tilting
// strength increases with the signal index), scaled by random column
// marginals. Tilted columns are likelihood-ratio ordered, hence ordered in
// first-order stochastic dominance as well.
inline Matrix random_tilted_joint(std::mt19937_64& rng, std::size_t n, std::size_t m,
                                  const std::vector<double>& states, double tilt = 0.4) {
  std::uniform_real_distribution<double> unif(0.2, 1.0);
  std::vector<double> base(n), f_s(m);
  for (double& v : base) v = unif(rng);
  for (double& v : f_s) v = unif(rng);
  const double fs_total = std::accumulate(f_s.begin(), f_s.end(), 0.0);
  const double span = states.back() - states.front();
  Matrix joint(n, m);
  for (std::size_t j = 0; j < m; ++j) {
    const double lambda = tilt * (static_cast<double>(j) - 0.5 * static_cast<double>(m - 1));
    double col_total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      joint(i, j) = base[i] * std::exp(lambda * states[i] / span);
      col_total += joint(i, j);
    }
    for (std::size_t i = 0; i < n; ++i) joint(i, j) *= f_s[j] / (fs_total * col_total);
  }
  return joint;
}

inline std::vector<double> random_increasing(std::mt19937_64& rng, std::size_t n, double start,
                                             double min_step, double max_step) {
  std::uniform_real_distribution<double> step(min_step, max_step);
  std::vector<double> v(n);
  double x = start;
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = x;
    x += step(rng);
  }
  return v;
}

// Random scenario with increasing bias; conflict_scale controls how far
// E_f[c|s] can drift across signals.
inline Scenario random_scenario(std::mt19937_64& rng, std::size_t n, std::size_t m,
                                double conflict_scale = 1.0) {
  const std::vector<double> states = random_increasing(rng, n, 0.0, 0.5, 3.0);
  std::uniform_real_distribution<double> shift(-1.0, 1.0);
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    // Keep y strictly increasing: perturb states by less than half the
    // smallest state gap on each side.
    double lo = (i > 0) ? (states[i] - states[i - 1]) : 1.0;
    double hi = (i + 1 < n) ? (states[i + 1] - states[i]) : 1.0;
    const double room = 0.45 * std::min(lo, hi);
    y[i] = states[i] + shift(rng) * std::min(room, conflict_scale) + shift(rng) * 0.2;
  }
  for (std::size_t i = 1; i < n; ++i)
    if (y[i] <= y[i - 1]) y[i] = y[i - 1] + 1e-3;
  Matrix joint = random_tilted_joint(rng, n, m, states);
  return Scenario(states, JointDistribution{joint}, BiasFunction::table(y));
}

// 2x2 scenario with all entries bounded away from zero.
inline Scenario random_binary_scenario(std::mt19937_64& rng, double conflict_scale = 2.0) {
  std::uniform_real_distribution<double> unif(0.05, 1.0);
  std::uniform_real_distribution<double> shift(-conflict_scale, conflict_scale);
  for (;;) {
    double a = unif(rng), b = unif(rng), c = unif(rng), d = unif(rng);
    const double s = a + b + c + d;
    a /= s; b /= s; c /= s; d /= s;
    Matrix joint = Matrix::from_rows({{a, b}, {c, d}});
    const double det = a * d - b * c;
    if (std::abs(det) < 0.02) continue;
    Matrix j = det > 0 ? joint : Matrix::from_rows({{b, a}, {d, c}});
    const std::vector<double> states = {0.0, 1.0 + unif(rng) * 9.0};
    const double dy = (states[1] - states[0]) + shift(rng);
    if (dy <= 1e-3) continue;
    const double y0 = shift(rng);
    return Scenario(states, JointDistribution{j},
                    BiasFunction::table({y0, y0 + dy}));
  }
}

// Gradient of U at g and the exact duality gap via one transportation LP.
inline double duality_gap(const Scenario& sc, const JointDistribution& g) {
  const std::size_t n = sc.n(), m = sc.m();
  const auto& f_s = sc.joint().col_marginal();
  const std::vector<double> pm = posterior_means(sc);
  Matrix grad(n, m);
  for (std::size_t j = 0; j < m; ++j) {
    double a = 0.0;
    for (std::size_t i = 0; i < n; ++i) a += sc.bias_value(i) * g(i, j);
    a /= f_s[j];
    for (std::size_t i = 0; i < n; ++i)
      grad(i, j) = -2.0 * sc.bias_value(i) * (a - pm[j]);
  }
  const Matrix v = transportation_vertex(sc.joint(), grad);
  double gap = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) gap += grad(i, j) * (v(i, j) - g(i, j));
  return gap;
}

inline Scenario footnote_scenario() {
  return Scenario({0.0, 10.0},
                  JointDistribution{Matrix::from_rows({{0.4, 0.1}, {0.1, 0.4}})},
                  BiasFunction::affine(3.0, 1.0 / 3.0, {0.0, 10.0}));
}

}  // namespace testutil
