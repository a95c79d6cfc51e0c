#pragma once

#include <array>
#include <optional>
#include <string>

#include "beliefd/scenario.hpp"

namespace beliefd {

enum class CaseTag { Case1, Case2, Case3 };

std::string to_string(CaseTag c);

// Menu of recommended actions and action-contingent wages for the binary
// problem, together with the agent confidence it is built for.
struct ContractSolution {
  std::array<double, 2> x;   // recommended actions
  std::array<double, 2> w;   // wages, paid on the recommended action only
  std::array<double, 2> mu;  // agent's conditional preferred actions
  double tau = 0.0;          // confidence the menu is designed for
  CaseTag case_tag = CaseTag::Case2;
  double total_payoff = 0.0;  // principal's expected payoff net of wages
};

// Slacks of the four incentive constraints: for each signal, the
// recommended action versus the other recommended action (on-path) and
// versus the best zero-wage action (off-path). Negative slack beyond
// -1e-9 marks an infeasible menu.
struct IcSlacks {
  double on_path_1 = 0.0;   // type 1 prefers (x1,w1) to (x2,w2)
  double off_path_1 = 0.0;  // type 1 prefers (x1,w1) to its free optimum
  double on_path_2 = 0.0;   // type 2 prefers (x2,w2) to (x1,w1)
  double off_path_2 = 0.0;  // type 2 prefers (x2,w2) to its free optimum
  bool feasible = true;
};

// Joint belief-and-contract optimum for the binary case. Requires
// |E_f[c]| <= E_f[theta|s2] - E_f[theta|s1]; errors otherwise.
ContractSolution solve_with_transfers(const Scenario& sc);

// Contract for an agent stuck with the true distribution (tau = 0):
// x_j = (E_f[theta|s_j] + E_f[y|s_j]) / 2, w_j = E_f[c|s_j]^2 / 4.
ContractSolution well_calibrated_benchmark(const Scenario& sc);

IcSlacks verify_ic(const Scenario& sc, const ContractSolution& contract);

// Cheapest IC-feasible wages for given actions and agent preferred
// actions; nullopt when no feasible wage pair exists (requires
// (x2-x1)(mu2-mu1) >= 0).
std::optional<std::array<double, 2>> minimal_wages(double x1, double x2, double mu1,
                                                   double mu2);

}  // namespace beliefd
