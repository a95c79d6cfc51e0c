#include "beliefd/transfers.hpp"

#include <cmath>

#include "beliefd/binary.hpp"
#include "beliefd/errors.hpp"
#include "beliefd/moments.hpp"

namespace beliefd {

std::string to_string(CaseTag c) {
  switch (c) {
    case CaseTag::Case1: return "Case1";
    case CaseTag::Case2: return "Case2";
    case CaseTag::Case3: return "Case3";
  }
  return "?";
}

namespace {

// E_f[ Var_f(theta | s) ].
double expected_posterior_variance(const Scenario& sc) {
  const auto& f_s = sc.joint().col_marginal();
  double acc = 0.0;
  for (std::size_t j = 0; j < sc.m(); ++j) {
    double m1 = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < sc.n(); ++i) {
      const double p = sc.joint()(i, j) / f_s[j];
      m1 += p * sc.state(i);
      m2 += p * sc.state(i) * sc.state(i);
    }
    acc += f_s[j] * (m2 - m1 * m1);
  }
  return acc;
}

}  // namespace

ContractSolution solve_with_transfers(const Scenario& sc) {
  require_binary(sc);
  const std::vector<double> m = posterior_means(sc);
  const double ec = conflict_moments(sc).mean_conflict;
  const double spread = m[1] - m[0];
  if (std::abs(ec) > spread) {
    throw HypothesisViolated("mean conflict magnitude " + std::to_string(std::abs(ec)) +
                             " exceeds posterior-mean spread " + std::to_string(spread));
  }
  const BinarySolution bin = solve_binary(sc);
  ContractSolution out;
  out.x = {m[0] + ec / 2.0, m[1] + ec / 2.0};
  out.mu = {m[0] + ec, m[1] + ec};
  out.w = {ec * ec / 4.0, ec * ec / 4.0};
  out.tau = bin.tau_star_interior;
  out.case_tag = CaseTag::Case2;
  out.total_payoff = -expected_posterior_variance(sc) - ec * ec / 2.0;
  return out;
}

ContractSolution well_calibrated_benchmark(const Scenario& sc) {
  require_binary(sc);
  const std::vector<double> m = posterior_means(sc);
  const ConflictMoments cm = conflict_moments(sc);
  const auto& f_s = sc.joint().col_marginal();
  ContractSolution out;
  double expected_wage_loss = 0.0;
  for (std::size_t j = 0; j < 2; ++j) {
    const double cj = cm.conditional_conflict[j];
    out.x[j] = m[j] + cj / 2.0;
    out.mu[j] = m[j] + cj;
    out.w[j] = cj * cj / 4.0;
    expected_wage_loss += f_s[j] * (cj * cj / 4.0 + cj * cj / 4.0);
  }
  out.tau = 0.0;
  out.case_tag = CaseTag::Case2;
  out.total_payoff = -expected_posterior_variance(sc) - expected_wage_loss;
  return out;
}

IcSlacks verify_ic(const Scenario& sc, const ContractSolution& contract) {
  require_binary(sc);
  const double x1 = contract.x[0], x2 = contract.x[1];
  const double w1 = contract.w[0], w2 = contract.w[1];
  const double mu1 = contract.mu[0], mu2 = contract.mu[1];
  IcSlacks s;
  // Conditional variance of y cancels from every comparison, so slacks
  // reduce to differences of squared distances from mu plus wages.
  s.on_path_1 = (x2 * x2 - x1 * x1 - 2.0 * (x2 - x1) * mu1) - (w2 - w1);
  s.off_path_1 = w1 - (x1 - mu1) * (x1 - mu1);
  s.on_path_2 = (w2 - w1) - (x2 * x2 - x1 * x1 - 2.0 * (x2 - x1) * mu2);
  s.off_path_2 = w2 - (x2 - mu2) * (x2 - mu2);
  s.feasible = s.on_path_1 >= -1e-9 && s.off_path_1 >= -1e-9 && s.on_path_2 >= -1e-9 &&
               s.off_path_2 >= -1e-9;
  return s;
}

std::optional<std::array<double, 2>> minimal_wages(double x1, double x2, double mu1,
                                                   double mu2) {
  // Feasibility needs w2 - w1 in [lo, hi]:
  const double hi = x2 * x2 - x1 * x1 - 2.0 * (x2 - x1) * mu1;
  const double lo = x2 * x2 - x1 * x1 - 2.0 * (x2 - x1) * mu2;
  if (lo > hi + 1e-12) return std::nullopt;
  double w1 = (x1 - mu1) * (x1 - mu1);
  double w2 = (x2 - mu2) * (x2 - mu2);
  const double diff = w2 - w1;
  if (diff > hi) w1 = w2 - hi;       // raise the low wage to restore IC
  else if (diff < lo) w2 = w1 + lo;  // raise the high wage
  return std::array<double, 2>{w1, w2};
}

}  // namespace beliefd
