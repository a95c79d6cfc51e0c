#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "beliefd/design.hpp"
#include "beliefd/errors.hpp"
#include "beliefd/oracle.hpp"
#include "helpers.hpp"

using namespace beliefd;
using testutil::footnote_scenario;

namespace {

// Scenario whose conflict deviations are scaled small enough for the
// construction to stay inside the feasibility box. `direction` > 0 makes
// E_f[c|s] increasing in the signal, < 0 decreasing.
Scenario small_conflict_scenario(std::mt19937_64& rng, std::size_t n, std::size_t m,
                                 double scale, double direction) {
  const std::vector<double> states = testutil::random_increasing(rng, n, 0.0, 1.0, 2.0);
  Matrix joint = testutil::random_tilted_joint(rng, n, m, states, 0.6);
  // y = theta + c0 + scale * d(theta) with d monotone in theta; a
  // likelihood-ratio-ordered joint then makes E[c|s] monotone in s.
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  const double c0 = unif(rng);
  std::vector<double> y(n);
  const double span = states.back() - states.front();
  // Cap the swing so y stays strictly increasing.
  const double s = std::min(scale, 0.9 * span);
  for (std::size_t i = 0; i < n; ++i)
    y[i] = states[i] + c0 + direction * s * (states[i] - states.front()) / span;
  return Scenario(states, JointDistribution{joint}, BiasFunction::table(y));
}

}  // namespace

TEST_CASE("ideal deviation and first-order condition") {
  const Scenario sc = footnote_scenario();
  const ResponseDeviation d = ideal_deviation(sc);
  CHECK(d.delta[0] == doctest::Approx(-2.0));
  CHECK(d.delta[1] == doctest::Approx(2.0));
  // The ideal deviation equalizes delta(j) + E_f[c|s_j] across signals.
  CHECK(foc_residual(sc, d) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("binary dispatch matches the closed form") {
  const DesignSolution sol = solve_design(footnote_scenario());
  CHECK(sol.method == DesignMethod::ClosedFormBinary);
  CHECK(sol.payoff == doctest::Approx(-17.888888888888889));
  CHECK(sol.classification.tag == ConfidenceTag::Overconfident);
  CHECK(sol.g_star(0, 0) == doctest::Approx(0.5));
  CHECK(sol.g_star(0, 1) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("constant conditional conflict keeps the true distribution") {
  std::mt19937_64 rng(41);
  for (int rep = 0; rep < 20; ++rep) {
    const std::vector<double> states = testutil::random_increasing(rng, 3, 0.0, 1.0, 2.0);
    const Matrix joint = testutil::random_tilted_joint(rng, 3, 3, states);
    const Scenario sc(states, JointDistribution{joint}, BiasFunction::affine(1.5, 1.0, states));
    const DesignSolution sol = solve_design(sc);
    CHECK(sol.g_star.probs().max_abs_diff(sc.joint().probs()) == 0.0);
    CHECK(sol.classification.tag == ConfidenceTag::WellCalibrated);
    CHECK(sol.payoff_terms.excess_variance <= 1e-12);
  }
}

TEST_CASE("construction solves small-conflict instances exactly") {
  std::mt19937_64 rng(43);
  int over = 0, under = 0;
  for (int rep = 0; rep < 60; ++rep) {
    const double direction = (rep % 2 == 0) ? -1.0 : 1.0;
    const std::size_t n = 3 + rep % 2;
    const Scenario sc = small_conflict_scenario(rng, n, n, 0.02, direction);
    const DesignSolution sol = solve_design(sc);
    REQUIRE(sol.method == DesignMethod::TPhiConstruction);
    REQUIRE(sol.phi.has_value());

    // The construction must achieve the ideal response deviation.
    const ResponseDeviation ideal = ideal_deviation(sc);
    for (std::size_t j = 0; j < sc.m(); ++j)
      CHECK(sol.delta_star.delta[j] == doctest::Approx(ideal.delta[j]).epsilon(1e-8));
    CHECK(sol.foc_residual <= 1e-8);
    CHECK(sol.payoff_terms.excess_variance <= 1e-12);
    CHECK(sol.g_star.marginal_distance(sc.joint()) < 1e-10);

    if (direction < 0) {
      CHECK(sol.classification.tag == ConfidenceTag::Overconfident);
      ++over;
    } else {
      CHECK(sol.classification.tag == ConfidenceTag::Underconfident);
      ++under;
    }
  }
  CHECK(over > 0);
  CHECK(under > 0);
}

TEST_CASE("fallback optimizer") {
  std::mt19937_64 rng(47);
  SUBCASE("certifies optimality by duality gap") {
    for (int rep = 0; rep < 10; ++rep) {
      const Scenario sc = testutil::random_scenario(rng, 3, 3, 2.0);
      const DesignSolution sol = solve_fallback(sc, {});
      CHECK(sol.duality_gap <= 1e-8);
      CHECK(testutil::duality_gap(sc, sol.g_star) <= 1e-7);
      CHECK(sol.g_star.marginal_distance(sc.joint()) < 1e-9);
      CHECK(sol.payoff >= principal_payoff(sc, sc.joint()) - 1e-12);
    }
  }
  SUBCASE("behavioral uniqueness: different starts, same actions") {
    for (int rep = 0; rep < 10; ++rep) {
      const Scenario sc = testutil::random_scenario(rng, 3, 4, 2.0);
      const DesignSolution a = solve_fallback(sc, {});
      // Second start: a vertex of the polytope.
      Matrix w(sc.n(), sc.m());
      std::uniform_real_distribution<double> unif(-1.0, 1.0);
      for (std::size_t e = 0; e < w.size(); ++e) w.data()[e] = unif(rng);
      const JointDistribution start{transportation_vertex(sc.joint(), w)};
      const DesignSolution b = solve_fallback(sc, {}, start);
      CHECK(std::abs(a.payoff - b.payoff) < 1e-7);
      for (std::size_t j = 0; j < sc.m(); ++j)
        CHECK(std::abs(a.delta_star.delta[j] - b.delta_star.delta[j]) < 1e-3);
    }
  }
  SUBCASE("iteration cap raises a convergence failure") {
    const Scenario sc = testutil::random_scenario(rng, 4, 4, 2.0);
    SolverConfig cfg;
    cfg.max_iterations = 1;
    cfg.gap_tolerance = 1e-14;
    CHECK_THROWS_AS(solve_fallback(sc, cfg), ConvergenceFailure);
  }
}

TEST_CASE("general dispatch dominates the brute-force oracle") {
  std::mt19937_64 rng(53);
  for (int rep = 0; rep < 8; ++rep) {
    const Scenario sc = testutil::random_scenario(rng, 3, 3, 1.5);
    const DesignSolution sol = solve_design(sc);
    const OracleResult scan = scan_polytope(sc, 20000, 1000 + rep);
    CHECK(sol.payoff >= scan.best_value - 1e-6);
  }
}

TEST_CASE("infeasible construction falls back and still improves") {
  // Large conflict swings push the required transformation outside the
  // box, so the LP search must fail and the fallback take over.
  std::mt19937_64 rng(59);
  int fallbacks = 0;
  for (int rep = 0; rep < 20 && fallbacks < 5; ++rep) {
    const Scenario sc = small_conflict_scenario(rng, 3, 3, 30.0, -1.0);
    const DesignSolution sol = solve_design(sc);
    if (sol.method != DesignMethod::FallbackQP) continue;
    ++fallbacks;
    CHECK(sol.duality_gap <= 1e-8);
    CHECK(sol.payoff >= principal_payoff(sc, sc.joint()) - 1e-12);
  }
  CHECK(fallbacks > 0);
}
