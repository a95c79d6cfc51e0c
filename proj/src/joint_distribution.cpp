#include "beliefd/joint_distribution.hpp"

#include <cmath>
#include <string>

#include "beliefd/errors.hpp"

namespace beliefd {

JointDistribution::JointDistribution(Matrix probs) : probs_(std::move(probs)) {
  const std::size_t n = probs_.rows();
  const std::size_t m = probs_.cols();
  if (n < 1 || m < 1) throw shape_mismatch("empty joint distribution");

  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      double& p = probs_(i, j);
      if (p < 0.0) {
        if (p < -1e-12)
          throw marginal_mismatch("negative probability at (" + std::to_string(i) + "," +
                                  std::to_string(j) + "): " + std::to_string(p));
        p = 0.0;
      }
      if (p > 1.0 + 1e-12)
        throw marginal_mismatch("probability above 1 at (" + std::to_string(i) + "," +
                                std::to_string(j) + ")");
      total += p;
    }
  }
  if (std::abs(total - 1.0) >= 1e-9)
    throw marginal_mismatch("total mass " + std::to_string(total) + " deviates from 1 by >= 1e-9");
  // Only renormalize genuine drift; sums within a few ulps of 1 are kept
  // verbatim so that echoing and re-validating a scenario is bit-stable.
  if (std::abs(total - 1.0) > 1e-12) {
    for (double& v : probs_.data()) v /= total;
  }

  row_marginal_.assign(n, 0.0);
  col_marginal_.assign(m, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      row_marginal_[i] += probs_(i, j);
      col_marginal_[j] += probs_(i, j);
    }
}

bool JointDistribution::full_support(double tol) const {
  for (double v : probs_.data())
    if (v <= tol) return false;
  return true;
}

JointDistribution JointDistribution::independent_product() const {
  Matrix p(states(), signals());
  for (std::size_t i = 0; i < states(); ++i)
    for (std::size_t j = 0; j < signals(); ++j) p(i, j) = row_marginal_[i] * col_marginal_[j];
  return JointDistribution(std::move(p));
}

double JointDistribution::marginal_distance(const JointDistribution& o) const {
  if (states() != o.states() || signals() != o.signals()) return 1.0;
  double d = 0.0;
  for (std::size_t i = 0; i < states(); ++i)
    d = std::max(d, std::abs(row_marginal_[i] - o.row_marginal_[i]));
  for (std::size_t j = 0; j < signals(); ++j)
    d = std::max(d, std::abs(col_marginal_[j] - o.col_marginal_[j]));
  return d;
}

}  // namespace beliefd
