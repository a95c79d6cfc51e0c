#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "beliefd/errors.hpp"
#include "beliefd/moments.hpp"
#include "beliefd/scenario.hpp"
#include "helpers.hpp"

using namespace beliefd;
using testutil::footnote_scenario;

TEST_CASE("joint distribution validation") {
  SUBCASE("valid pmf") {
    JointDistribution d{Matrix::from_rows({{0.4, 0.1}, {0.1, 0.4}})};
    CHECK(d.row_marginal()[0] == doctest::Approx(0.5));
    CHECK(d.col_marginal()[1] == doctest::Approx(0.5));
    CHECK(d.full_support());
  }
  SUBCASE("sum far from one is rejected") {
    CHECK_THROWS_AS(JointDistribution{Matrix::from_rows({{0.5, 0.4}, {0.1, 0.4}})},
                    ValidationError);
  }
  SUBCASE("tiny negative entries clamp to zero") {
    JointDistribution d{Matrix::from_rows({{0.5 + 1e-13, -1e-13}, {0.1, 0.4}})};
    CHECK(d(0, 1) == 0.0);
    CHECK_FALSE(d.full_support());
  }
}

TEST_CASE("scenario JSON validation") {
  SUBCASE("parses the reference scenario") {
    const std::string text =
        R"({"states":[0,10],"joint":[[0.4,0.1],[0.1,0.4]],"bias":{"affine":{"intercept":3,"slope":0.3333333333333333}}})";
    const ValidatedScenario vs = validate_scenario(text);
    CHECK(vs.scenario.n() == 2);
    CHECK(vs.scenario.bias_value(1) == doctest::Approx(3.0 + 10.0 / 3.0));
    CHECK_FALSE(vs.signal_permutation.has_value());
  }
  SUBCASE("zero entry rejected") {
    const std::string text =
        R"({"states":[0,10],"joint":[[0.5,0.0],[0.1,0.4]],"bias":{"table":[1,2]}})";
    CHECK_THROWS_WITH_AS(validate_scenario(text), doctest::Contains("ZeroEntry"),
                         ValidationError);
  }
  SUBCASE("non-monotone states rejected") {
    const std::string text =
        R"({"states":[10,0],"joint":[[0.4,0.1],[0.1,0.4]],"bias":{"table":[1,2]}})";
    CHECK_THROWS_WITH_AS(validate_scenario(text), doctest::Contains("NonMonotoneStates"),
                         ValidationError);
  }
  SUBCASE("non-monotone bias rejected") {
    const std::string text =
        R"({"states":[0,10],"joint":[[0.4,0.1],[0.1,0.4]],"bias":{"table":[2,1]}})";
    CHECK_THROWS_WITH_AS(validate_scenario(text), doctest::Contains("NonMonotoneBias"),
                         ValidationError);
  }
  SUBCASE("unordered signals: hard error by default, permuted on request") {
    const std::string text =
        R"({"states":[0,10],"joint":[[0.1,0.4],[0.4,0.1]],"bias":{"table":[1,2]}})";
    CHECK_THROWS_WITH_AS(validate_scenario(text), doctest::Contains("UnorderedSignals"),
                         ValidationError);
    const ValidatedScenario vs = validate_scenario(text, true);
    REQUIRE(vs.signal_permutation.has_value());
    CHECK((*vs.signal_permutation)[0] == 1);
    CHECK((*vs.signal_permutation)[1] == 0);
    CHECK(vs.scenario.joint()(0, 0) == doctest::Approx(0.4));
  }
  SUBCASE("malformed document cites the offending key") {
    CHECK_THROWS_WITH_AS(validate_scenario(R"({"joint":[[1]]})"),
                         doctest::Contains("states"), ValidationError);
    CHECK_THROWS_WITH_AS(validate_scenario("not json"), doctest::Contains("ParseError"),
                         ValidationError);
  }
  SUBCASE("degenerate 1xM rejected") {
    const std::string text =
        R"({"states":[0],"joint":[[0.5,0.5]],"bias":{"table":[1]}})";
    CHECK_THROWS_AS(validate_scenario(text), ValidationError);
  }
}

TEST_CASE("scenario echo round-trips") {
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 20; ++rep) {
    const Scenario sc = testutil::random_scenario(rng, 3, 4);
    const std::string echo = scenario_to_json(sc);
    const ValidatedScenario back = validate_scenario(echo);
    CHECK(back.scenario.joint().probs().max_abs_diff(sc.joint().probs()) == 0.0);
    CHECK(scenario_hash(back.scenario) == scenario_hash(sc));
  }
}

TEST_CASE("conflict moments on the reference scenario") {
  const Scenario sc = footnote_scenario();
  const ConflictMoments cm = conflict_moments(sc);
  CHECK(cm.mean_conflict == doctest::Approx(-1.0 / 3.0));
  CHECK(cm.conditional_conflict[0] == doctest::Approx(5.0 / 3.0));
  CHECK(cm.conditional_conflict[1] == doctest::Approx(-7.0 / 3.0));
  const std::vector<double> pm = posterior_means(sc);
  CHECK(pm[0] == doctest::Approx(2.0));
  CHECK(pm[1] == doctest::Approx(8.0));
  CHECK(prior_variance(sc) == doctest::Approx(25.0));
}

TEST_CASE("payoff decomposition identity for marginal-preserving g") {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 30; ++rep) {
    const Scenario sc = testutil::random_scenario(rng, 4, 3);
    // Build g from a random small feasible transformation of f.
    std::uniform_real_distribution<double> unif(-0.01, 0.01);
    Matrix t(sc.n() - 1, sc.m() - 1);
    for (std::size_t e = 0; e < t.size(); ++e) t.data()[e] = unif(rng);
    const Matrix gm = apply_transformation(sc.joint(), t);
    bool ok = true;
    for (std::size_t e = 0; e < gm.size(); ++e)
      if (gm.data()[e] < 0.0) ok = false;
    if (!ok) continue;
    const JointDistribution g{gm};
    const PayoffTerms terms = payoff_decomposition(sc, g);
    CHECK(terms.total() == doctest::Approx(principal_payoff(sc, g)).epsilon(1e-10));
    CHECK(terms.residual_uncertainty >= 0.0);
    CHECK(terms.excess_variance >= 0.0);
  }
}

TEST_CASE("reference payoff decomposition values") {
  const Scenario sc = footnote_scenario();
  const PayoffTerms terms = payoff_decomposition(sc, sc.joint());
  CHECK(terms.residual_uncertainty == doctest::Approx(16.0));
  CHECK(terms.mean_bias_sq == doctest::Approx(1.0 / 9.0));
  // At g = f the variance term is Var_f(E_f[c|s]).
  CHECK(terms.excess_variance == doctest::Approx(4.0));
  CHECK(principal_payoff(sc, sc.joint()) == doctest::Approx(-16.0 - 1.0 / 9.0 - 4.0));
}
