#include "beliefd/stochastic_order.hpp"

#include <cmath>

#include "beliefd/errors.hpp"

namespace beliefd {

std::string to_string(ConfidenceTag tag) {
  switch (tag) {
    case ConfidenceTag::WellCalibrated: return "WellCalibrated";
    case ConfidenceTag::Overconfident: return "Overconfident";
    case ConfidenceTag::Underconfident: return "Underconfident";
    case ConfidenceTag::Unranked: return "Unranked";
  }
  return "?";
}

namespace {

void require_common_marginals(const JointDistribution& f, const JointDistribution& g) {
  if (f.states() != g.states() || f.signals() != g.signals())
    throw shape_mismatch("distributions have different shapes");
  if (f.marginal_distance(g) > 1e-10)
    throw marginal_mismatch("row/column marginals differ by more than 1e-10");
}

// Cumulative sums of (g - f) over {1..k} x {1..l}; only the interior
// (k <= n-1, l <= m-1) cells are free, the rest vanish by equal marginals.
Matrix cumulative_difference(const JointDistribution& f, const JointDistribution& g) {
  const std::size_t n = f.states(), m = f.signals();
  Matrix t(n - 1, m - 1);
  for (std::size_t k = 0; k < n - 1; ++k)
    for (std::size_t l = 0; l < m - 1; ++l) {
      double acc = (k > 0) ? t(k - 1, l) : 0.0;
      double row = 0.0;
      for (std::size_t j = 0; j <= l; ++j) row += g(k, j) - f(k, j);
      t(k, l) = acc + row;
    }
  return t;
}

}  // namespace

TransformationMatrix extract_transformation(const JointDistribution& f,
                                            const JointDistribution& g) {
  require_common_marginals(f, g);
  return TransformationMatrix{cumulative_difference(f, g)};
}

Matrix apply_transformation(const JointDistribution& f, const Matrix& t) {
  const std::size_t n = f.states(), m = f.signals();
  // (D_n^T t D_m)(i,j) = t(i,j) - t(i-1,j) - t(i,j-1) + t(i-1,j-1) with
  // zero padding outside the (n-1)x(m-1) interior.
  auto at = [&](std::ptrdiff_t i, std::ptrdiff_t j) -> double {
    if (i < 0 || j < 0 || i >= static_cast<std::ptrdiff_t>(n - 1) ||
        j >= static_cast<std::ptrdiff_t>(m - 1))
      return 0.0;
    return t(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  };
  Matrix g(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const auto ii = static_cast<std::ptrdiff_t>(i), jj = static_cast<std::ptrdiff_t>(j);
      g(i, j) = f(i, j) + at(ii, jj) - at(ii - 1, jj) - at(ii, jj - 1) + at(ii - 1, jj - 1);
    }
  return g;
}

ConfidenceClass classify_transformation(TransformationMatrix tm) {
  const Matrix& t = tm.t;
  bool any_pos = false, any_neg = false;
  std::optional<std::pair<std::size_t, std::size_t>> first_pos, first_neg;
  for (std::size_t k = 0; k < t.rows(); ++k)
    for (std::size_t l = 0; l < t.cols(); ++l) {
      const double v = t(k, l);
      if (v >= kSignTol) {
        any_pos = true;
        if (!first_pos) first_pos = {k, l};
      } else if (v <= -kSignTol) {
        any_neg = true;
        if (!first_neg) first_neg = {k, l};
      }
    }

  ConfidenceClass out;
  if (!any_pos && !any_neg) {
    out.tag = ConfidenceTag::WellCalibrated;
  } else if (any_pos && !any_neg) {
    out.tag = ConfidenceTag::Overconfident;
  } else if (any_neg && !any_pos) {
    out.tag = ConfidenceTag::Underconfident;
  } else {
    out.tag = ConfidenceTag::Unranked;
    // Report the cell whose sign breaks the majority: first negative when
    // positives come first in row-major order, and vice versa.
    out.violation = (first_pos < first_neg) ? first_neg : first_pos;
  }
  out.evidence = std::move(tm);
  return out;
}

ConfidenceClass concordance_compare(const JointDistribution& f, const JointDistribution& g) {
  return classify_transformation(extract_transformation(f, g));
}

bool association_floor_check(const JointDistribution& f, const JointDistribution& g) {
  require_common_marginals(f, g);
  const JointDistribution product = f.independent_product();
  const ConfidenceClass cls = concordance_compare(product, g);
  return cls.tag == ConfidenceTag::Overconfident || cls.tag == ConfidenceTag::WellCalibrated;
}

}  // namespace beliefd
