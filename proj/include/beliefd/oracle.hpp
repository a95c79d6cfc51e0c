#pragma once

#include <cstdint>
#include <vector>

#include "beliefd/joint_distribution.hpp"
#include "beliefd/scenario.hpp"
#include "beliefd/truthnoise.hpp"

namespace beliefd {

// Brute-force search result. best_point holds the parameter vector of the
// best sample: {tau}, {kappa}, or the flattened (n-1)x(m-1) t matrix.
struct OracleResult {
  double best_value = 0.0;
  std::vector<double> best_point;
  double resolution = 0.0;
  std::size_t evaluations = 0;
};

struct SimulationResult {
  double estimate = 0.0;
  double std_error = 0.0;
  std::size_t draws = 0;
};

// Evenly spaced scan of U(f + tau b b^T) over the feasible tau interval.
OracleResult scan_tau(const Scenario& sc, std::size_t points);

// Evenly spaced scan of the truth-or-noise payoff over [-rho, 1-rho].
OracleResult scan_kappa(const TruthNoiseScenario& tn, std::size_t points);

// Random sampling of elementary-transformation matrices (rejection against
// the feasibility box) followed by coordinate-ascent refinement of the best
// sample. Deterministic given the seed and independent of worker count.
OracleResult scan_polytope(const Scenario& sc, std::size_t budget, std::uint64_t seed);
OracleResult scan_polytope_serial(const Scenario& sc, std::size_t budget, std::uint64_t seed);

// Monte Carlo estimate of U(g): draws (theta, s) from f and applies the
// agent action E_g[y|s]. Sharded; identical output for the parallel and
// serial drivers.
SimulationResult simulate_payoff(const Scenario& sc, const JointDistribution& g,
                                 std::size_t draws, std::uint64_t seed);
SimulationResult simulate_payoff_serial(const Scenario& sc, const JointDistribution& g,
                                        std::size_t draws, std::uint64_t seed);

// Monte Carlo estimate of the truth-or-noise payoff at confidence kappa.
SimulationResult simulate_truth_noise(const TruthNoiseScenario& tn, double kappa,
                                      std::size_t draws, std::uint64_t seed);
SimulationResult simulate_truth_noise_serial(const TruthNoiseScenario& tn, double kappa,
                                             std::size_t draws, std::uint64_t seed);

}  // namespace beliefd
