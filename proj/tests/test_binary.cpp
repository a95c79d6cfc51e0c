#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "beliefd/binary.hpp"
#include "beliefd/errors.hpp"
#include "beliefd/moments.hpp"
#include "beliefd/oracle.hpp"
#include "helpers.hpp"

using namespace beliefd;
using testutil::footnote_scenario;

TEST_CASE("tau bounds") {
  SUBCASE("reference scenario") {
    const auto [lo, hi] = tau_bounds(footnote_scenario());
    CHECK(lo == doctest::Approx(-0.4));
    CHECK(hi == doctest::Approx(0.1));
  }
  SUBCASE("near-symmetric") {
    const Scenario sc({0.0, 1.0},
                      JointDistribution{Matrix::from_rows({{0.26, 0.24}, {0.24, 0.26}})},
                      BiasFunction::table({0.0, 2.0}));
    const auto [lo, hi] = tau_bounds(sc);
    CHECK(lo == doctest::Approx(-0.26));
    CHECK(hi == doctest::Approx(0.24));
  }
  SUBCASE("diagonal-heavy") {
    const Scenario sc({0.0, 1.0},
                      JointDistribution{Matrix::from_rows({{0.45, 0.05}, {0.05, 0.45}})},
                      BiasFunction::table({0.0, 2.0}));
    const auto [lo, hi] = tau_bounds(sc);
    CHECK(lo == doctest::Approx(-0.45));
    CHECK(hi == doctest::Approx(0.05));
  }
  SUBCASE("non-binary rejected") {
    std::mt19937_64 rng(3);
    CHECK_THROWS_AS(tau_bounds(testutil::random_scenario(rng, 3, 3)), ValidationError);
  }
}

TEST_CASE("closed-form binary solution on the reference scenario") {
  const BinarySolution sol = solve_binary(footnote_scenario());
  CHECK(sol.det_f == doctest::Approx(0.15));
  CHECK(sol.tau_star_interior == doctest::Approx(0.3));
  CHECK(sol.tau_star == doctest::Approx(0.1));
  CHECK(sol.clamped);
  CHECK(sol.classification == ConfidenceTag::Overconfident);
  CHECK(sol.payoff == doctest::Approx(-17.888888888888889));
  CHECK(sol.tau_star_interior > -sol.det_f);
}

TEST_CASE("underconfidence example") {
  const Scenario sc({0.0, 1.0},
                    JointDistribution{Matrix::from_rows({{0.3, 0.2}, {0.2, 0.3}})},
                    BiasFunction::table({0.0, 2.0}));
  const BinarySolution sol = solve_binary(sc);
  CHECK(sol.tau_lower == doctest::Approx(-0.3));
  CHECK(sol.tau_upper == doctest::Approx(0.2));
  CHECK(sol.tau_star_interior == doctest::Approx(-0.025));
  CHECK(sol.tau_star == doctest::Approx(-0.025));
  CHECK_FALSE(sol.clamped);
  CHECK(sol.classification == ConfidenceTag::Underconfident);
}

TEST_CASE("additive bias keeps beliefs calibrated") {
  const Scenario sc({0.0, 10.0},
                    JointDistribution{Matrix::from_rows({{0.4, 0.1}, {0.1, 0.4}})},
                    BiasFunction::affine(3.0, 1.0, {0.0, 10.0}));
  const BinarySolution sol = solve_binary(sc);
  CHECK(sol.tau_star == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(sol.classification == ConfidenceTag::WellCalibrated);
}

TEST_CASE("trichotomy and grid-oracle agreement on random scenarios") {
  std::mt19937_64 rng(23);
  for (int rep = 0; rep < 300; ++rep) {
    const Scenario sc = testutil::random_binary_scenario(rng);
    const BinarySolution sol = solve_binary(sc);
    const double gap = (sc.state(1) - sc.state(0)) - (sc.bias_value(1) - sc.bias_value(0));
    if (gap > 1e-10) CHECK(sol.classification == ConfidenceTag::Overconfident);
    else if (gap < -1e-10) CHECK(sol.classification == ConfidenceTag::Underconfident);
    else CHECK(sol.classification == ConfidenceTag::WellCalibrated);

    CHECK(sol.tau_lower < 0.0);
    CHECK(sol.tau_upper > 0.0);
    CHECK(sol.tau_star >= sol.tau_lower);
    CHECK(sol.tau_star <= sol.tau_upper);

    const OracleResult scan = scan_tau(sc, 2001);
    CHECK(std::abs(scan.best_point[0] - sol.tau_star) <= scan.resolution + 1e-12);
    CHECK(sol.payoff >= scan.best_value - 1e-12);
  }
}

TEST_CASE("payoff at tau matches direct evaluation") {
  std::mt19937_64 rng(29);
  for (int rep = 0; rep < 50; ++rep) {
    const Scenario sc = testutil::random_binary_scenario(rng);
    const auto [lo, hi] = tau_bounds(sc);
    std::uniform_real_distribution<double> unif(lo, hi);
    const double tau = unif(rng);
    const JointDistribution g = binary_belief(sc, tau);
    CHECK(g.marginal_distance(sc.joint()) < 1e-12);
    CHECK(principal_payoff(sc, g) == doctest::Approx(payoff_decomposition(sc, g).total()));
  }
}
