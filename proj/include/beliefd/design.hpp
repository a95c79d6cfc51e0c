#pragma once

#include <optional>
#include <vector>

#include "beliefd/joint_distribution.hpp"
#include "beliefd/moments.hpp"
#include "beliefd/scenario.hpp"
#include "beliefd/stochastic_order.hpp"

namespace beliefd {

// Signal-wise gap between the designed agent's action and the
// well-calibrated agent's action.
struct ResponseDeviation {
  std::vector<double> delta;
};

// Simplex weights distributing the required column sums of t across the
// state gaps.
struct PhiWeights {
  std::vector<double> phi;
};

enum class DesignMethod { ClosedFormBinary, TPhiConstruction, FallbackQP };

std::string to_string(DesignMethod m);

struct SolverConfig {
  double gap_tolerance = 1e-8;
  std::size_t max_iterations = 100000;
  double foc_tolerance = 1e-8;
};

struct DesignSolution {
  JointDistribution g_star;
  ResponseDeviation delta_star;
  ConfidenceClass classification;
  PayoffTerms payoff_terms;
  DesignMethod method = DesignMethod::FallbackQP;
  double foc_residual = 0.0;
  std::optional<PhiWeights> phi;
  double payoff = 0.0;
  double duality_gap = 0.0;       // meaningful for FallbackQP
  std::size_t iterations = 0;     // meaningful for FallbackQP
};

// delta(j) = E_f[c] - E_f[c | s_j]: the deviation an unconstrained optimal
// agent would display.
ResponseDeviation ideal_deviation(const Scenario& sc);

// Observed deviation of g from the well-calibrated response.
ResponseDeviation response_deviation(const Scenario& sc, const JointDistribution& g);

// t^phi(k,l) = [sum_{j<=l} f_S(j) (E_f[c|s_j] - E_f[c])] * phi_k / (y_{k+1} - y_k).
TransformationMatrix construct_t_phi(const Scenario& sc, const PhiWeights& phi);

// Maximum-slack linear program over the simplex; returns a phi whose t^phi
// satisfies every box constraint, or nullopt when none exists.
std::optional<PhiWeights> feasibility_search(const Scenario& sc);

// Full solver: binary closed form, then the constant-conflict shortcut,
// then t^phi, then the conditional-gradient fallback.
DesignSolution solve_design(const Scenario& sc, const SolverConfig& config = {});

// Conditional-gradient (away-step) maximization of U over the fixed-marginal
// polytope, exposed for the uniqueness property tests. start = initial
// feasible point (defaults to f).
DesignSolution solve_fallback(const Scenario& sc, const SolverConfig& config,
                              std::optional<JointDistribution> start = std::nullopt);

// Exact linear maximization over {h >= 0 : row sums f_Theta, col sums f_S}.
Matrix transportation_vertex(const JointDistribution& f, const Matrix& weights);

// Residual of the interior first-order condition: max over adjacent signal
// pairs of |(delta_l + E_f[c|s_l]) - (delta_{l+1} + E_f[c|s_{l+1}])|.
double foc_residual(const Scenario& sc, const ResponseDeviation& delta);

}  // namespace beliefd
