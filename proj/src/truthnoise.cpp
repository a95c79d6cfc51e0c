#include "beliefd/truthnoise.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "beliefd/errors.hpp"
#include "beliefd/stochastic_order.hpp"

namespace beliefd {

using nlohmann::json;

std::string to_string(KappaRegime r) {
  switch (r) {
    case KappaRegime::InteriorFOC: return "InteriorFOC";
    case KappaRegime::ClampedLow: return "ClampedLow";
    case KappaRegime::ClampedHigh: return "ClampedHigh";
  }
  return "?";
}

TruthNoiseScenario::TruthNoiseScenario(std::vector<double> grid, std::vector<double> weights,
                                       double rho, BiasFunction bias)
    : grid_(std::move(grid)), weights_(std::move(weights)), rho_(rho), bias_(std::move(bias)) {
  if (grid_.size() < 2) throw parse_error("grid needs at least 2 points");
  if (weights_.size() != grid_.size())
    throw shape_mismatch("grid and weights must have equal length");
  if (bias_.values.size() != grid_.size())
    throw shape_mismatch("bias table length must match the grid");
  if (!(rho_ > 0.0 && rho_ < 1.0))
    throw ValidationError("RhoOutOfRange", "rho must lie strictly inside (0,1)");
  double total = 0.0;
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    if (weights_[i] <= 0.0) throw zero_entry("grid weight must be positive at index " +
                                             std::to_string(i));
    if (i > 0 && grid_[i] <= grid_[i - 1])
      throw non_monotone_states("grid must be strictly increasing at index " +
                                std::to_string(i));
    if (i > 0 && bias_.values[i] <= bias_.values[i - 1])
      throw non_monotone_bias("bias must be strictly increasing at index " +
                              std::to_string(i));
    total += weights_[i];
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw marginal_mismatch("grid weights sum to " + std::to_string(total));
  for (double& w : weights_) w /= total;

  mean_theta_ = var_theta_ = mean_y_ = var_y_ = cov_y_theta_ = 0.0;
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    mean_theta_ += weights_[i] * grid_[i];
    mean_y_ += weights_[i] * bias_.values[i];
  }
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    const double dt = grid_[i] - mean_theta_;
    const double dy = bias_.values[i] - mean_y_;
    var_theta_ += weights_[i] * dt * dt;
    var_y_ += weights_[i] * dy * dy;
    cov_y_theta_ += weights_[i] * dy * dt;
  }
}

TruthNoiseScenario TruthNoiseScenario::uniform(double lo, double hi, std::size_t count,
                                               double rho, BiasFunction bias_spec) {
  if (count < 2) throw parse_error("uniform grid needs count >= 2");
  if (!(hi > lo)) throw non_monotone_states("uniform grid needs max > min");
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i)
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  std::vector<double> weights(count, 1.0 / static_cast<double>(count));
  BiasFunction bias = bias_spec.from_affine
                          ? BiasFunction::affine(bias_spec.affine_intercept,
                                                 bias_spec.affine_slope, grid)
                          : std::move(bias_spec);
  return TruthNoiseScenario(std::move(grid), std::move(weights), rho, std::move(bias));
}

double truth_noise_payoff(const TruthNoiseScenario& tn, double kappa) {
  const double rho = tn.rho();
  if (kappa < -rho - 1e-12 || kappa > 1.0 - rho + 1e-12)
    throw kappa_out_of_range("kappa " + std::to_string(kappa) + " outside [" +
                             std::to_string(-rho) + ", " + std::to_string(1.0 - rho) + "]");
  const double a = rho + kappa;
  const double ec = tn.mean_conflict();
  // The agent plays x(s) = a y(s) + (1-a) E[y]; averaging the squared loss
  // over the truth-or-noise draw of (theta, s) gives
  //   U = -E[c]^2 - a^2 Var(y) + 2 rho a Cov(y, theta) - Var(theta).
  return -ec * ec - a * a * tn.var_y() + 2.0 * rho * a * tn.cov_y_theta() - tn.var_theta();
}

TruthNoiseSolution solve_truth_noise(const TruthNoiseScenario& tn) {
  if (tn.var_y() <= 1e-14)
    throw degenerate_bias("Var_F(y) is zero; confidence has no effect");
  const double rho = tn.rho();
  TruthNoiseSolution out;
  out.beta = tn.cov_y_conflict() / tn.var_y();
  if (out.beta >= 1.0) {
    out.kappa_star = -rho;
    out.regime = KappaRegime::ClampedLow;
  } else if (out.beta <= -(1.0 - rho) / rho) {
    out.kappa_star = 1.0 - rho;
    out.regime = KappaRegime::ClampedHigh;
  } else {
    out.kappa_star = -rho * out.beta;
    out.regime = KappaRegime::InteriorFOC;
  }
  if (out.beta > kSignTol) out.classification = ConfidenceTag::Underconfident;
  else if (out.beta < -kSignTol) out.classification = ConfidenceTag::Overconfident;
  else out.classification = ConfidenceTag::WellCalibrated;
  out.payoff = truth_noise_payoff(tn, out.kappa_star);
  return out;
}

TruthNoiseTransfers truth_noise_transfers(const TruthNoiseScenario& tn) {
  const double ec = tn.mean_conflict();
  TruthNoiseTransfers out;
  out.applies = ec * ec <= tn.var_y();
  out.wedge = -ec / 2.0;
  out.wage = out.wedge * out.wedge;
  return out;
}

TruthNoiseDelegation truth_noise_delegation(const TruthNoiseScenario& tn) {
  const TruthNoiseSolution sol = solve_truth_noise(tn);
  TruthNoiseDelegation out;
  out.threshold_rhs = std::abs(tn.mean_conflict()) / std::sqrt(tn.var_y()) - tn.rho();
  out.delegate = sol.kappa_star >= out.threshold_rhs;
  out.direct_delegate = sol.payoff >= -tn.var_theta();
  out.threshold_agrees = out.delegate == out.direct_delegate;
  return out;
}

namespace {

BiasFunction parse_bias_spec(const json& j, const std::vector<double>* grid) {
  if (j.contains("table")) {
    if (!j["table"].is_array()) throw parse_error("bias.table must be an array");
    return BiasFunction::table(j["table"].get<std::vector<double>>());
  }
  if (j.contains("affine")) {
    const json& a = j["affine"];
    if (!a.contains("intercept") || !a.contains("slope"))
      throw parse_error("bias.affine requires intercept and slope");
    if (grid)
      return BiasFunction::affine(a["intercept"].get<double>(), a["slope"].get<double>(),
                                  *grid);
    BiasFunction b;
    b.from_affine = true;
    b.affine_intercept = a["intercept"].get<double>();
    b.affine_slope = a["slope"].get<double>();
    return b;
  }
  throw parse_error("bias must contain either table or affine");
}

}  // namespace

TruthNoiseScenario parse_truth_noise(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw parse_error(std::string("invalid JSON: ") + e.what());
  }
  if (!j.contains("rho")) throw parse_error("missing key rho");
  if (!j.contains("grid")) throw parse_error("missing key grid");
  if (!j.contains("bias")) throw parse_error("missing key bias");
  const double rho = j["rho"].get<double>();
  const json& g = j["grid"];
  if (g.contains("uniform")) {
    const json& u = g["uniform"];
    if (!u.contains("min") || !u.contains("max") || !u.contains("count"))
      throw parse_error("grid.uniform requires min, max, count");
    return TruthNoiseScenario::uniform(u["min"].get<double>(), u["max"].get<double>(),
                                       u["count"].get<std::size_t>(), rho,
                                       parse_bias_spec(j["bias"], nullptr));
  }
  if (!g.contains("points") || !g.contains("weights"))
    throw parse_error("grid requires points and weights (or uniform)");
  auto points = g["points"].get<std::vector<double>>();
  auto weights = g["weights"].get<std::vector<double>>();
  BiasFunction bias = parse_bias_spec(j["bias"], &points);
  return TruthNoiseScenario(std::move(points), std::move(weights), rho, std::move(bias));
}

std::string truth_noise_to_json(const TruthNoiseScenario& tn, bool pretty) {
  json j;
  j["rho"] = tn.rho();
  j["grid"]["points"] = tn.grid();
  j["grid"]["weights"] = tn.weights();
  if (tn.bias().from_affine) {
    j["bias"]["affine"]["intercept"] = tn.bias().affine_intercept;
    j["bias"]["affine"]["slope"] = tn.bias().affine_slope;
  } else {
    j["bias"]["table"] = tn.bias().values;
  }
  return pretty ? j.dump(2) : j.dump();
}

}  // namespace beliefd
