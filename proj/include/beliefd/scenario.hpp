#pragma once

#include <optional>
#include <string>
#include <vector>

#include "beliefd/joint_distribution.hpp"

namespace beliefd {

// Agent's preferred action per state. Affine shorthand is expanded to a
// table at load time; only the table participates in computation.
struct BiasFunction {
  std::vector<double> values;
  bool from_affine = false;
  double affine_intercept = 0.0;
  double affine_slope = 0.0;

  static BiasFunction table(std::vector<double> v) { return {std::move(v), false, 0.0, 0.0}; }
  static BiasFunction affine(double intercept, double slope, const std::vector<double>& states);
};

// A validated problem instance: ordered states, signal columns ordered by
// posterior mean, full-support true distribution, strictly increasing bias.
class Scenario {
 public:
  Scenario(std::vector<double> states, JointDistribution joint, BiasFunction bias);

  std::size_t n() const { return states_.size(); }
  std::size_t m() const { return joint_.signals(); }

  const std::vector<double>& states() const { return states_; }
  const JointDistribution& joint() const { return joint_; }
  const BiasFunction& bias() const { return bias_; }

  double state(std::size_t i) const { return states_[i]; }
  double bias_value(std::size_t i) const { return bias_.values[i]; }
  // Conflict of interest c(theta_i) = y(theta_i) - theta_i.
  double conflict(std::size_t i) const { return bias_.values[i] - states_[i]; }

 private:
  std::vector<double> states_;
  JointDistribution joint_;
  BiasFunction bias_;
};

struct ValidatedScenario {
  Scenario scenario;
  // 0-based column order applied to restore posterior-mean ordering,
  // present only when relabeling actually permuted something.
  std::optional<std::vector<std::size_t>> signal_permutation;
};

// Parses and validates a scenario document (JSON text). When
// `relabel_signals` is set, columns violating the posterior-mean order are
// permuted into order and the permutation reported; otherwise that is a
// hard UnorderedSignals error.
ValidatedScenario validate_scenario(const std::string& json_text, bool relabel_signals = false);

// Canonical JSON echo of a scenario; re-validating it reproduces the
// scenario bit for bit.
std::string scenario_to_json(const Scenario& sc, bool pretty = false);

// FNV-1a hash of the canonical echo, for report provenance.
std::string scenario_hash(const Scenario& sc);

}  // namespace beliefd
