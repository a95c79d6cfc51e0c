#include "beliefd/delegation.hpp"

#include "beliefd/binary.hpp"
#include "beliefd/moments.hpp"

namespace beliefd {

double var_signal(const Scenario& sc) {
  require_binary(sc);
  const double det = sc.joint()(0, 0) * sc.joint()(1, 1) - sc.joint()(0, 1) * sc.joint()(1, 0);
  const auto& f_s = sc.joint().col_marginal();
  const double dtheta = sc.state(1) - sc.state(0);
  return det * det * dtheta * dtheta / (f_s[0] * f_s[1]);
}

DelegationReport delegation_decision(const Scenario& sc, const SolverConfig& config) {
  DelegationReport out;
  const DesignSolution sol = solve_design(sc, config);
  out.delegation_payoff = sol.payoff;
  out.centralization_payoff = -prior_variance(sc);
  out.delegate = out.delegation_payoff >= out.centralization_payoff;

  if (sc.n() == 2 && sc.m() == 2) {
    const BinarySolution bin = solve_binary(sc);
    const double det = bin.det_f;
    const auto& f_s = sc.joint().col_marginal();
    const double dy = sc.bias_value(1) - sc.bias_value(0);
    const double dtheta = sc.state(1) - sc.state(0);
    const double ec = conflict_moments(sc).mean_conflict;
    out.threshold_rhs = f_s[0] * f_s[1] * ec * ec / (det * dy * dtheta) - det;
    out.tau_star_interior = bin.tau_star_interior;
    out.var_signal = var_signal(sc);
    out.threshold_agrees = (bin.tau_star_interior >= *out.threshold_rhs) == out.delegate;
    out.clamped = bin.clamped;
  }
  return out;
}

}  // namespace beliefd
