// Timing comparison of the OpenMP oracle kernels against their serial
// reference implementations, plus an equality check of the results.
#include <chrono>
#include <cstdio>

#include "beliefd/oracle.hpp"
#include "beliefd/scenario.hpp"

using namespace beliefd;

namespace {

Scenario make_scenario() {
  std::vector<std::vector<double>> rows = {
      {0.10, 0.04, 0.02},
      {0.05, 0.12, 0.07},
      {0.03, 0.09, 0.18},
      {0.02, 0.05, 0.23},
  };
  return Scenario({0.0, 2.0, 5.0, 9.0}, JointDistribution{Matrix::from_rows(rows)},
                  BiasFunction::table({1.0, 2.5, 6.5, 11.0}));
}

template <typename F>
double time_ms(F&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main() {
  const Scenario sc = make_scenario();
  const std::size_t budget = 200000;
  const std::size_t draws = 20000000;
  const std::uint64_t seed = 42;

  OracleResult scan_p, scan_s;
  const double t_scan_p = time_ms([&] { scan_p = scan_polytope(sc, budget, seed); });
  const double t_scan_s = time_ms([&] { scan_s = scan_polytope_serial(sc, budget, seed); });
  std::printf("scan_polytope   parallel %8.1f ms   serial %8.1f ms   speedup %.2fx   equal %s\n",
              t_scan_p, t_scan_s, t_scan_s / t_scan_p,
              scan_p.best_value == scan_s.best_value ? "yes" : "NO");

  SimulationResult sim_p, sim_s;
  const double t_sim_p =
      time_ms([&] { sim_p = simulate_payoff(sc, sc.joint(), draws, seed); });
  const double t_sim_s =
      time_ms([&] { sim_s = simulate_payoff_serial(sc, sc.joint(), draws, seed); });
  std::printf("simulate_payoff parallel %8.1f ms   serial %8.1f ms   speedup %.2fx   equal %s\n",
              t_sim_p, t_sim_s, t_sim_s / t_sim_p,
              sim_p.estimate == sim_s.estimate ? "yes" : "NO");

  return (scan_p.best_value == scan_s.best_value && sim_p.estimate == sim_s.estimate) ? 0 : 1;
}
