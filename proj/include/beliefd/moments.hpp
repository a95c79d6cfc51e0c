#pragma once

#include <vector>

#include "beliefd/joint_distribution.hpp"
#include "beliefd/scenario.hpp"

namespace beliefd {

class Scenario;

// E_d[values | s_j].
double conditional_mean(const JointDistribution& d, const std::vector<double>& values,
                        std::size_t j);

struct ConflictMoments {
  double mean_conflict = 0.0;                 // E_f[c]
  std::vector<double> conditional_conflict;   // E_f[c | s_j]
  double cov_c_y = 0.0;                       // Cov_f(c, y)
  double var_y = 0.0;                         // Var_f(y)
};

ConflictMoments conflict_moments(const Scenario& sc);

// U(g) = -E_f[(E_g[y|s] - theta)^2], expectations over the true f.
double principal_payoff(const Scenario& sc, const JointDistribution& g);

// The three-term decomposition of U(g); terms are losses (>= 0) and
// -(sum of terms) equals principal_payoff for feasible g.
struct PayoffTerms {
  double residual_uncertainty = 0.0;  // E_f[(E_f[theta|s] - theta)^2]
  double mean_bias_sq = 0.0;          // E_f[c]^2
  double excess_variance = 0.0;       // Var_f(E_g[y|s] - E_f[theta|s])
  double total() const { return -(residual_uncertainty + mean_bias_sq + excess_variance); }
};

PayoffTerms payoff_decomposition(const Scenario& sc, const JointDistribution& g);

// Posterior means E_f[theta | s_j].
std::vector<double> posterior_means(const Scenario& sc);

double prior_variance(const Scenario& sc);  // Var_f(theta)

}  // namespace beliefd
