#include "beliefd/moments.hpp"

#include <cmath>
#include <string>

#include "beliefd/errors.hpp"

namespace beliefd {

double conditional_mean(const JointDistribution& d, const std::vector<double>& values,
                        std::size_t j) {
  if (values.size() != d.states()) throw shape_mismatch("values length != number of states");
  if (j >= d.signals()) throw shape_mismatch("signal index out of range");
  const double col = d.col_marginal()[j];
  if (col <= 0.0) throw zero_column("column marginal of signal " + std::to_string(j) + " is zero");
  double acc = 0.0;
  for (std::size_t i = 0; i < d.states(); ++i) acc += values[i] * d(i, j);
  return acc / col;
}

ConflictMoments conflict_moments(const Scenario& sc) {
  ConflictMoments out;
  const auto& f = sc.joint();
  const auto& f_theta = f.row_marginal();

  std::vector<double> c(sc.n()), y(sc.n());
  for (std::size_t i = 0; i < sc.n(); ++i) {
    c[i] = sc.conflict(i);
    y[i] = sc.bias_value(i);
  }

  double mean_c = 0.0, mean_y = 0.0;
  for (std::size_t i = 0; i < sc.n(); ++i) {
    mean_c += f_theta[i] * c[i];
    mean_y += f_theta[i] * y[i];
  }
  out.mean_conflict = mean_c;
  for (std::size_t i = 0; i < sc.n(); ++i) {
    out.cov_c_y += f_theta[i] * (c[i] - mean_c) * (y[i] - mean_y);
    out.var_y += f_theta[i] * (y[i] - mean_y) * (y[i] - mean_y);
  }
  out.conditional_conflict.resize(sc.m());
  for (std::size_t j = 0; j < sc.m(); ++j)
    out.conditional_conflict[j] = conditional_mean(f, c, j);
  return out;
}

double principal_payoff(const Scenario& sc, const JointDistribution& g) {
  const auto& f = sc.joint();
  if (g.states() != f.states() || g.signals() != f.signals())
    throw shape_mismatch("g has a different shape than the scenario's f");

  std::vector<double> action(sc.m());
  std::vector<double> y(sc.n());
  for (std::size_t i = 0; i < sc.n(); ++i) y[i] = sc.bias_value(i);
  for (std::size_t j = 0; j < sc.m(); ++j) action[j] = conditional_mean(g, y, j);

  double loss = 0.0;
  for (std::size_t i = 0; i < sc.n(); ++i)
    for (std::size_t j = 0; j < sc.m(); ++j) {
      const double e = action[j] - sc.state(i);
      loss += f(i, j) * e * e;
    }
  return -loss;
}

std::vector<double> posterior_means(const Scenario& sc) {
  std::vector<double> pm(sc.m());
  for (std::size_t j = 0; j < sc.m(); ++j) pm[j] = conditional_mean(sc.joint(), sc.states(), j);
  return pm;
}

double prior_variance(const Scenario& sc) {
  const auto& fm = sc.joint().row_marginal();
  double mean = 0.0;
  for (std::size_t i = 0; i < sc.n(); ++i) mean += fm[i] * sc.state(i);
  double var = 0.0;
  for (std::size_t i = 0; i < sc.n(); ++i) {
    const double d = sc.state(i) - mean;
    var += fm[i] * d * d;
  }
  return var;
}

PayoffTerms payoff_decomposition(const Scenario& sc, const JointDistribution& g) {
  const auto& f = sc.joint();
  if (g.states() != f.states() || g.signals() != f.signals())
    throw shape_mismatch("g has a different shape than the scenario's f");

  PayoffTerms terms;
  const std::vector<double> pm = posterior_means(sc);
  for (std::size_t i = 0; i < sc.n(); ++i)
    for (std::size_t j = 0; j < sc.m(); ++j) {
      const double e = pm[j] - sc.state(i);
      terms.residual_uncertainty += f(i, j) * e * e;
    }

  const ConflictMoments cm = conflict_moments(sc);
  terms.mean_bias_sq = cm.mean_conflict * cm.mean_conflict;

  std::vector<double> y(sc.n());
  for (std::size_t i = 0; i < sc.n(); ++i) y[i] = sc.bias_value(i);
  const auto& f_s = f.col_marginal();
  double mean_dev = 0.0;
  std::vector<double> dev(sc.m());
  for (std::size_t j = 0; j < sc.m(); ++j) {
    dev[j] = conditional_mean(g, y, j) - pm[j];
    mean_dev += f_s[j] * dev[j];
  }
  for (std::size_t j = 0; j < sc.m(); ++j) {
    const double d = dev[j] - mean_dev;
    terms.excess_variance += f_s[j] * d * d;
  }
  return terms;
}

}  // namespace beliefd
