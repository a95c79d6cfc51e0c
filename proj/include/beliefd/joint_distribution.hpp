#pragma once

#include <vector>

#include "beliefd/matrix.hpp"

namespace beliefd {

// A discrete bivariate pmf over states (rows) x signals (columns), with
// cached marginals. Immutable after construction.
class JointDistribution {
 public:
  // Validates entries and total mass. Entries in [-1e-12, 0) are clamped to
  // zero (solver output carries float noise); totals deviating from 1 by
  // less than 1e-9 are renormalized, larger deviations are an error.
  explicit JointDistribution(Matrix probs);

  std::size_t states() const { return probs_.rows(); }
  std::size_t signals() const { return probs_.cols(); }

  double operator()(std::size_t i, std::size_t j) const { return probs_(i, j); }
  const Matrix& probs() const { return probs_; }

  // f_Theta
  const std::vector<double>& row_marginal() const { return row_marginal_; }
  // f_S
  const std::vector<double>& col_marginal() const { return col_marginal_; }

  bool full_support(double tol = 1e-12) const;

  // Independent product of the marginals, f_Theta (x) f_S.
  JointDistribution independent_product() const;

  double marginal_distance(const JointDistribution& o) const;

 private:
  Matrix probs_;
  std::vector<double> row_marginal_;
  std::vector<double> col_marginal_;
};

}  // namespace beliefd
