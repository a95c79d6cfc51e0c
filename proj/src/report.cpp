#include "beliefd/report.hpp"

namespace beliefd {

using nlohmann::json;

namespace {

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

json scenario_section(const ValidatedScenario& vs) {
  json j;
  j["hash"] = scenario_hash(vs.scenario);
  j["states"] = vs.scenario.n();
  j["signals"] = vs.scenario.m();
  j["echo"] = json::parse(scenario_to_json(vs.scenario));
  if (vs.signal_permutation) j["signal_permutation"] = *vs.signal_permutation;
  return j;
}

json binary_section(const BinarySolution& bin) {
  json j;
  j["tau_lower"] = bin.tau_lower;
  j["tau_upper"] = bin.tau_upper;
  j["tau_star_interior"] = bin.tau_star_interior;
  j["tau_star"] = bin.tau_star;
  j["det_f"] = bin.det_f;
  j["classification"] = to_string(bin.classification);
  j["payoff"] = bin.payoff;
  j["clamped"] = bin.clamped;
  return j;
}

json classification_section(const ConfidenceClass& cls) {
  json j;
  j["tag"] = to_string(cls.tag);
  j["t"] = matrix_to_json(cls.evidence.t);
  if (cls.violation) j["violation_cell"] = {cls.violation->first, cls.violation->second};
  return j;
}

json design_section(const DesignSolution& sol) {
  json j;
  j["method"] = to_string(sol.method);
  j["g_star"] = matrix_to_json(sol.g_star.probs());
  j["delta"] = sol.delta_star.delta;
  j["classification"] = classification_section(sol.classification);
  j["payoff"] = sol.payoff;
  j["payoff_terms"] = {{"residual_uncertainty", sol.payoff_terms.residual_uncertainty},
                       {"mean_bias_sq", sol.payoff_terms.mean_bias_sq},
                       {"excess_variance", sol.payoff_terms.excess_variance}};
  j["foc_residual"] = sol.foc_residual;
  if (sol.phi) j["phi"] = sol.phi->phi;
  if (sol.method == DesignMethod::FallbackQP) {
    j["duality_gap"] = sol.duality_gap;
    j["iterations"] = sol.iterations;
  }
  return j;
}

json contract_section(const ContractSolution& contract, const IcSlacks& slacks) {
  json j;
  j["x"] = contract.x;
  j["w"] = contract.w;
  j["mu"] = contract.mu;
  j["tau"] = contract.tau;
  j["case"] = to_string(contract.case_tag);
  j["total_payoff"] = contract.total_payoff;
  j["ic_slacks"] = {{"on_path_1", slacks.on_path_1},
                    {"off_path_1", slacks.off_path_1},
                    {"on_path_2", slacks.on_path_2},
                    {"off_path_2", slacks.off_path_2},
                    {"feasible", slacks.feasible}};
  return j;
}

json delegation_section(const DelegationReport& rep) {
  json j;
  j["delegate"] = rep.delegate;
  j["delegation_payoff"] = rep.delegation_payoff;
  j["centralization_payoff"] = rep.centralization_payoff;
  if (rep.threshold_rhs) j["threshold_rhs"] = *rep.threshold_rhs;
  if (rep.tau_star_interior) j["tau_star_interior"] = *rep.tau_star_interior;
  if (rep.var_signal) j["var_signal"] = *rep.var_signal;
  if (rep.threshold_agrees) j["threshold_agrees"] = *rep.threshold_agrees;
  if (rep.clamped) j["clamped"] = *rep.clamped;
  return j;
}

json truth_noise_section(const TruthNoiseScenario& tn, const TruthNoiseSolution& sol,
                         const TruthNoiseTransfers& tr, const TruthNoiseDelegation& del) {
  json j;
  j["scenario"] = json::parse(truth_noise_to_json(tn));
  j["beta"] = sol.beta;
  j["kappa_star"] = sol.kappa_star;
  j["payoff"] = sol.payoff;
  j["regime"] = to_string(sol.regime);
  j["classification"] = to_string(sol.classification);
  j["transfers"] = {{"wage", tr.wage}, {"wedge", tr.wedge}, {"applies", tr.applies}};
  j["delegation"] = {{"delegate", del.delegate},
                     {"threshold_rhs", del.threshold_rhs},
                     {"direct_delegate", del.direct_delegate},
                     {"threshold_agrees", del.threshold_agrees}};
  return j;
}

json oracle_section(const OracleResult& res) {
  json j;
  j["best_value"] = res.best_value;
  j["best_point"] = res.best_point;
  j["resolution"] = res.resolution;
  j["evaluations"] = res.evaluations;
  return j;
}

json simulation_section(const SimulationResult& res) {
  json j;
  j["estimate"] = res.estimate;
  j["std_error"] = res.std_error;
  j["draws"] = res.draws;
  return j;
}

json report_skeleton(const SolverConfig& config, std::uint64_t seed) {
  json j;
  j["schema"] = kReportSchema;
  j["version"] = kToolVersion;
  j["diagnostics"] = {{"gap_tolerance", config.gap_tolerance},
                      {"max_iterations", config.max_iterations},
                      {"foc_tolerance", config.foc_tolerance},
                      {"seed", seed}};
  return j;
}

}  // namespace beliefd
