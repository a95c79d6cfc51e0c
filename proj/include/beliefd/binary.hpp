#pragma once

#include "beliefd/joint_distribution.hpp"
#include "beliefd/scenario.hpp"
#include "beliefd/stochastic_order.hpp"

namespace beliefd {

struct BinarySolution {
  double tau_lower = 0.0;
  double tau_upper = 0.0;
  double tau_star_interior = 0.0;  // unclamped first-order-condition solution
  double tau_star = 0.0;           // clamped optimizer
  double det_f = 0.0;              // |f|
  ConfidenceTag classification = ConfidenceTag::WellCalibrated;
  double payoff = 0.0;  // U at tau_star
  bool clamped = false;
};

// Feasible interval for the elementary transformation f + tau * b b^T.
std::pair<double, double> tau_bounds(const Scenario& sc);

// Closed-form 2x2 solution. Classification follows the sign of
// (theta_2 - theta_1) - (y_2 - y_1) even at a clamped boundary optimum.
BinarySolution solve_binary(const Scenario& sc);

// The belief induced by confidence tau, g = f + tau * b b^T.
JointDistribution binary_belief(const Scenario& sc, double tau);

void require_binary(const Scenario& sc);

}  // namespace beliefd
