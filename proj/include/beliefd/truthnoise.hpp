#pragma once

#include <string>
#include <vector>

#include "beliefd/scenario.hpp"
#include "beliefd/stochastic_order.hpp"

namespace beliefd {

// Signal structure: with probability rho the signal reveals the state,
// otherwise it is an independent draw from the state distribution. The
// state distribution is a weighted grid; confidence kappa shifts the
// precision the agent perceives to rho + kappa.
class TruthNoiseScenario {
 public:
  TruthNoiseScenario(std::vector<double> grid, std::vector<double> weights, double rho,
                     BiasFunction bias);

  static TruthNoiseScenario uniform(double lo, double hi, std::size_t count, double rho,
                                    BiasFunction bias_spec);

  std::size_t size() const { return grid_.size(); }
  const std::vector<double>& grid() const { return grid_; }
  const std::vector<double>& weights() const { return weights_; }
  double rho() const { return rho_; }
  const BiasFunction& bias() const { return bias_; }
  double bias_value(std::size_t i) const { return bias_.values[i]; }

  double mean_theta() const { return mean_theta_; }
  double var_theta() const { return var_theta_; }
  double mean_y() const { return mean_y_; }
  double var_y() const { return var_y_; }
  double cov_y_theta() const { return cov_y_theta_; }
  double mean_conflict() const { return mean_y_ - mean_theta_; }
  double cov_y_conflict() const { return var_y_ - cov_y_theta_; }

 private:
  std::vector<double> grid_;
  std::vector<double> weights_;
  double rho_;
  BiasFunction bias_;
  double mean_theta_, var_theta_, mean_y_, var_y_, cov_y_theta_;
};

enum class KappaRegime { InteriorFOC, ClampedLow, ClampedHigh };

std::string to_string(KappaRegime r);

struct TruthNoiseSolution {
  double beta = 0.0;        // Cov_F(y, c) / Var_F(y)
  double kappa_star = 0.0;  // in [-rho, 1-rho]
  double payoff = 0.0;      // U(kappa_star)
  KappaRegime regime = KappaRegime::InteriorFOC;
  ConfidenceTag classification = ConfidenceTag::WellCalibrated;
};

TruthNoiseSolution solve_truth_noise(const TruthNoiseScenario& tn);

// Principal's expected payoff when the agent perceives precision
// rho + kappa and best-responds with x(s) = (rho+kappa) y(s) +
// (1-rho-kappa) E_F[y].
double truth_noise_payoff(const TruthNoiseScenario& tn, double kappa);

struct TruthNoiseTransfers {
  double wage = 0.0;   // flat wage paid on every recommended action
  double wedge = 0.0;  // x(s) - mu(s), constant across signals
  bool applies = false;  // E_F[c]^2 <= Var_F(y)
};

TruthNoiseTransfers truth_noise_transfers(const TruthNoiseScenario& tn);

struct TruthNoiseDelegation {
  bool delegate = false;  // threshold rule: kappa_star >= threshold_rhs
  double threshold_rhs = 0.0;
  bool direct_delegate = false;  // U(kappa_star) >= -Var_F(theta)
  bool threshold_agrees = false;
};

TruthNoiseDelegation truth_noise_delegation(const TruthNoiseScenario& tn);

// Parses {"rho":..., "grid":{...}, "bias":{...}} where grid is either
// {"points":[...],"weights":[...]} or {"uniform":{"min":a,"max":b,"count":n}}.
TruthNoiseScenario parse_truth_noise(const std::string& json_text);

std::string truth_noise_to_json(const TruthNoiseScenario& tn, bool pretty = false);

}  // namespace beliefd
