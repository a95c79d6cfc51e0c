#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "beliefd/errors.hpp"
#include "beliefd/report.hpp"

namespace {

using nlohmann::json;
using namespace beliefd;

struct GlobalOptions {
  double tolerance = 1e-6;  // agreement tolerance for --oracle-check deltas
  std::uint64_t seed = 12345;
  bool relabel_signals = false;
  bool oracle_check = false;
  bool pretty = false;
  std::string output;
  SolverConfig solver;
  std::size_t budget = 10000;
  std::size_t points = 10001;
  std::size_t draws = 1000000;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Usage, "Usage", "cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const json& report, const GlobalOptions& opt) {
  const std::string text = opt.pretty ? report.dump(2) : report.dump();
  if (opt.output.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream out(opt.output);
    if (!out) throw Error(ErrorCode::Usage, "Usage", "cannot write: " + opt.output);
    out << text << "\n";
  }
}

// Oracle agreement block embedded by --oracle-check: solver payoff versus
// the best brute-force sample and a Monte Carlo estimate.
json oracle_check_block(const Scenario& sc, const DesignSolution& sol,
                        const GlobalOptions& opt) {
  json j;
  OracleResult scan;
  if (sc.n() == 2 && sc.m() == 2) {
    scan = scan_tau(sc, opt.points);
    j["scan"] = oracle_section(scan);
    j["scan_kind"] = "tau_grid";
  } else {
    scan = scan_polytope(sc, opt.budget, opt.seed);
    j["scan"] = oracle_section(scan);
    j["scan_kind"] = "polytope";
  }
  j["scan_delta"] = sol.payoff - scan.best_value;
  const SimulationResult sim = simulate_payoff(sc, sol.g_star, opt.draws, opt.seed);
  j["simulation"] = simulation_section(sim);
  j["simulation_delta"] = sol.payoff - sim.estimate;
  j["agrees"] = sol.payoff >= scan.best_value - opt.tolerance &&
                std::abs(sol.payoff - sim.estimate) <= 3.0 * sim.std_error + opt.tolerance;
  return j;
}

int run(int argc, char** argv) {
  CLI::App app{"Organization-optimal belief design: solver, classifier, and oracles"};
  app.require_subcommand(1);

  GlobalOptions opt;
  app.add_option("--tolerance", opt.tolerance, "Agreement tolerance for oracle checks");
  app.add_option("--seed", opt.seed, "Random seed for oracles and simulation");
  app.add_flag("--relabel-signals", opt.relabel_signals,
               "Permute signal columns into posterior-mean order instead of erroring");
  app.add_flag("--oracle-check", opt.oracle_check,
               "Run brute-force oracles alongside and embed agreement deltas");
  app.add_flag("--pretty", opt.pretty, "Indent JSON output");
  app.add_option("--output", opt.output, "Write the report to a file instead of stdout");
  app.add_option("--gap-tolerance", opt.solver.gap_tolerance, "Fallback duality-gap tolerance");
  app.add_option("--max-iterations", opt.solver.max_iterations, "Fallback iteration cap");
  app.add_option("--foc-tolerance", opt.solver.foc_tolerance,
                 "First-order-condition residual tolerance");
  app.add_option("--budget", opt.budget, "Oracle sample budget");
  app.add_option("--points", opt.points, "Oracle grid points");
  app.add_option("--draws", opt.draws, "Monte Carlo draws");

  std::string input;
  std::string against_path;
  double kappa = 0.0;
  bool kappa_set = false;

  CLI::App* validate = app.add_subcommand("validate", "Parse and validate a scenario file");
  validate->add_option("input", input, "Scenario JSON file")->required();

  CLI::App* solve = app.add_subcommand("solve", "Solve the belief design problem");
  solve->add_option("input", input, "Scenario JSON file")->required();

  CLI::App* classify =
      app.add_subcommand("classify", "Classify beliefs in the concordance order");
  classify->add_option("input", input, "Scenario JSON file")->required();
  classify->add_option("--against", against_path,
                       "Joint distribution (JSON matrix) to classify against the scenario; "
                       "default classifies the design optimum");

  CLI::App* transfers =
      app.add_subcommand("transfers", "Joint belief-and-contract design (binary)");
  transfers->add_option("input", input, "Scenario JSON file")->required();

  CLI::App* delegate_cmd =
      app.add_subcommand("delegate", "Delegation versus centralization comparison");
  delegate_cmd->add_option("input", input, "Scenario JSON file")->required();

  CLI::App* truth = app.add_subcommand("truth-noise", "Truth-or-noise environment");
  truth->add_option("input", input, "Truth-or-noise JSON file")->required();
  truth->add_option("--kappa", kappa, "Also evaluate the payoff at this confidence")
      ->each([&](const std::string&) { kappa_set = true; });

  CLI::App* oracle = app.add_subcommand("oracle", "Brute-force scans and simulation");
  oracle->add_option("input", input, "Scenario JSON file")->required();

  CLI::App* full = app.add_subcommand("report", "Full pipeline report");
  full->add_option("input", input, "Scenario JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  json report = report_skeleton(opt.solver, opt.seed);

  if (truth->parsed()) {
    const TruthNoiseScenario tn = parse_truth_noise(read_file(input));
    const TruthNoiseSolution sol = solve_truth_noise(tn);
    const TruthNoiseTransfers tr = truth_noise_transfers(tn);
    const TruthNoiseDelegation del = truth_noise_delegation(tn);
    report["truthnoise"] = truth_noise_section(tn, sol, tr, del);
    if (kappa_set) {
      report["truthnoise"]["payoff_at_kappa"] = {{"kappa", kappa},
                                                 {"value", truth_noise_payoff(tn, kappa)}};
    }
    if (opt.oracle_check) {
      const OracleResult scan = scan_kappa(tn, opt.points);
      const SimulationResult sim = simulate_truth_noise(tn, sol.kappa_star, opt.draws, opt.seed);
      report["truthnoise"]["oracle"] = {
          {"scan", oracle_section(scan)},
          {"scan_delta", sol.payoff - scan.best_value},
          {"simulation", simulation_section(sim)},
          {"simulation_delta", sol.payoff - sim.estimate},
          {"agrees", sol.payoff >= scan.best_value - opt.tolerance &&
                         std::abs(sol.payoff - sim.estimate) <= 3.0 * sim.std_error +
                                                                    opt.tolerance}};
    }
    emit(report, opt);
    return 0;
  }

  const ValidatedScenario vs = validate_scenario(read_file(input), opt.relabel_signals);
  const Scenario& sc = vs.scenario;
  report["scenario"] = scenario_section(vs);

  if (validate->parsed()) {
    report["valid"] = true;
    emit(report, opt);
    return 0;
  }

  if (classify->parsed()) {
    if (!against_path.empty()) {
      json gj = json::parse(read_file(against_path));
      const auto rows = gj.get<std::vector<std::vector<double>>>();
      const JointDistribution g{Matrix::from_rows(rows)};
      report["classification"] = classification_section(concordance_compare(sc.joint(), g));
      report["association_floor"] = association_floor_check(sc.joint(), g);
    } else {
      const DesignSolution sol = solve_design(sc, opt.solver);
      report["classification"] = classification_section(sol.classification);
      report["association_floor"] = association_floor_check(sc.joint(), sol.g_star);
    }
    emit(report, opt);
    return 0;
  }

  if (oracle->parsed()) {
    if (sc.n() == 2 && sc.m() == 2) report["tau_scan"] = oracle_section(scan_tau(sc, opt.points));
    report["polytope_scan"] = oracle_section(scan_polytope(sc, opt.budget, opt.seed));
    const DesignSolution sol = solve_design(sc, opt.solver);
    report["simulation"] =
        simulation_section(simulate_payoff(sc, sol.g_star, opt.draws, opt.seed));
    report["solver_payoff"] = sol.payoff;
    emit(report, opt);
    return 0;
  }

  if (solve->parsed() || full->parsed()) {
    const DesignSolution sol = solve_design(sc, opt.solver);
    report["design"] = design_section(sol);
    if (sc.n() == 2 && sc.m() == 2) report["binary"] = binary_section(solve_binary(sc));
    if (opt.oracle_check) report["oracle_check"] = oracle_check_block(sc, sol, opt);
    if (solve->parsed()) {
      emit(report, opt);
      return 0;
    }
  }

  if (transfers->parsed() || full->parsed()) {
    if (sc.n() == 2 && sc.m() == 2) {
      try {
        const ContractSolution contract = solve_with_transfers(sc);
        report["transfers"] = contract_section(contract, verify_ic(sc, contract));
        const ContractSolution bench = well_calibrated_benchmark(sc);
        report["transfers"]["well_calibrated_benchmark"] =
            contract_section(bench, verify_ic(sc, bench));
      } catch (const HypothesisViolated& e) {
        if (transfers->parsed()) throw;
        report["transfers"] = {{"error", e.what()}};
      }
    } else if (transfers->parsed()) {
      throw not_binary("transfers require a 2x2 scenario");
    }
    if (transfers->parsed()) {
      emit(report, opt);
      return 0;
    }
  }

  // delegate, or the tail of the full report.
  report["delegation"] = delegation_section(delegation_decision(sc, opt.solver));
  emit(report, opt);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::Usage: return 1;
      case ErrorCode::Validation: return 2;
      case ErrorCode::Hypothesis: return 3;
      case ErrorCode::Convergence: return 4;
    }
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
