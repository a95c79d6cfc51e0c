#include "beliefd/binary.hpp"

#include <algorithm>
#include <cmath>

#include "beliefd/errors.hpp"
#include "beliefd/moments.hpp"

namespace beliefd {

void require_binary(const Scenario& sc) {
  if (sc.n() != 2 || sc.m() != 2)
    throw not_binary("operation requires n = m = 2, got " + std::to_string(sc.n()) + "x" +
                     std::to_string(sc.m()));
}

std::pair<double, double> tau_bounds(const Scenario& sc) {
  require_binary(sc);
  const auto& f = sc.joint();
  const double lower =
      -std::min(std::min(f(0, 0), 1.0 - f(0, 1)), std::min(1.0 - f(1, 0), f(1, 1)));
  const double upper =
      std::min(std::min(1.0 - f(0, 0), f(0, 1)), std::min(f(1, 0), 1.0 - f(1, 1)));
  return {lower, upper};
}

JointDistribution binary_belief(const Scenario& sc, double tau) {
  require_binary(sc);
  const auto& f = sc.joint();
  Matrix g(2, 2);
  g(0, 0) = f(0, 0) + tau;
  g(0, 1) = f(0, 1) - tau;
  g(1, 0) = f(1, 0) - tau;
  g(1, 1) = f(1, 1) + tau;
  return JointDistribution(g);
}

BinarySolution solve_binary(const Scenario& sc) {
  require_binary(sc);
  const auto& f = sc.joint();

  BinarySolution out;
  std::tie(out.tau_lower, out.tau_upper) = tau_bounds(sc);
  out.det_f = f(0, 0) * f(1, 1) - f(0, 1) * f(1, 0);

  const double dy = sc.bias_value(1) - sc.bias_value(0);
  const double dc = sc.conflict(1) - sc.conflict(0);
  out.tau_star_interior = -(dc / dy) * out.det_f;
  out.tau_star = std::clamp(out.tau_star_interior, out.tau_lower, out.tau_upper);
  out.clamped = out.tau_star != out.tau_star_interior;

  const double gap = (sc.state(1) - sc.state(0)) - dy;
  if (std::abs(gap) <= 1e-10)
    out.classification = ConfidenceTag::WellCalibrated;
  else if (gap > 0)
    out.classification = ConfidenceTag::Overconfident;
  else
    out.classification = ConfidenceTag::Underconfident;

  out.payoff = principal_payoff(sc, binary_belief(sc, out.tau_star));
  return out;
}

}  // namespace beliefd
