#pragma once

#include <optional>

#include "beliefd/design.hpp"
#include "beliefd/scenario.hpp"

namespace beliefd {

// Delegation-versus-centralization comparison. The direct payoff
// comparison (`delegate`) is authoritative; the closed-form threshold is
// diagnostic and only defined for binary scenarios.
struct DelegationReport {
  bool delegate = false;
  double delegation_payoff = 0.0;      // U(g*)
  double centralization_payoff = 0.0;  // -Var_f(theta)
  // Binary-only diagnostics.
  std::optional<double> threshold_rhs;
  std::optional<double> tau_star_interior;
  std::optional<double> var_signal;
  std::optional<bool> threshold_agrees;
  std::optional<bool> clamped;
};

DelegationReport delegation_decision(const Scenario& sc, const SolverConfig& config = {});

// Variance of the posterior mean of theta across signals, by the binary
// closed form |f|^2 (theta2-theta1)^2 / (f_S(s1) f_S(s2)).
double var_signal(const Scenario& sc);

}  // namespace beliefd
