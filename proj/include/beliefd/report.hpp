#pragma once

#include <json.hpp>

#include "beliefd/binary.hpp"
#include "beliefd/delegation.hpp"
#include "beliefd/design.hpp"
#include "beliefd/oracle.hpp"
#include "beliefd/scenario.hpp"
#include "beliefd/transfers.hpp"
#include "beliefd/truthnoise.hpp"

namespace beliefd {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kReportSchema = "beliefd-report/1";

// Section builders: each returns one JSON object embedded in the report.
nlohmann::json scenario_section(const ValidatedScenario& vs);
nlohmann::json binary_section(const BinarySolution& bin);
nlohmann::json design_section(const DesignSolution& sol);
nlohmann::json classification_section(const ConfidenceClass& cls);
nlohmann::json contract_section(const ContractSolution& contract, const IcSlacks& slacks);
nlohmann::json delegation_section(const DelegationReport& rep);
nlohmann::json truth_noise_section(const TruthNoiseScenario& tn, const TruthNoiseSolution& sol,
                                   const TruthNoiseTransfers& tr,
                                   const TruthNoiseDelegation& del);
nlohmann::json oracle_section(const OracleResult& res);
nlohmann::json simulation_section(const SimulationResult& res);

// Report skeleton: schema, version, and the diagnostics block.
nlohmann::json report_skeleton(const SolverConfig& config, std::uint64_t seed);

}  // namespace beliefd
