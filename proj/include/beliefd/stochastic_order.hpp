#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "beliefd/joint_distribution.hpp"
#include "beliefd/matrix.hpp"

namespace beliefd {

// Sign tolerance for concordance comparisons: entries in (-kSignTol, kSignTol)
// count as exact zeros.
inline constexpr double kSignTol = 1e-10;

// The (n-1)x(m-1) matrix of elementary transformations encoding g - f:
// t(k,l) is the cumulative sum of (g - f) over the lower-left block up to
// (k,l), and g = f + D_n^T t D_m with D the first-difference operator.
struct TransformationMatrix {
  Matrix t;
};

enum class ConfidenceTag { WellCalibrated, Overconfident, Underconfident, Unranked };

std::string to_string(ConfidenceTag tag);

struct ConfidenceClass {
  ConfidenceTag tag = ConfidenceTag::WellCalibrated;
  TransformationMatrix evidence;
  // First cell (row-major) with sign opposite to the rest, set when Unranked.
  std::optional<std::pair<std::size_t, std::size_t>> violation;
};

// Cumulative-difference extraction; requires common marginals within 1e-10.
TransformationMatrix extract_transformation(const JointDistribution& f,
                                            const JointDistribution& g);

// Rebuilds f + D^T t D as a plain matrix (no pmf validation).
Matrix apply_transformation(const JointDistribution& f, const Matrix& t);

// Classifies g against f under the concordance order.
ConfidenceClass concordance_compare(const JointDistribution& f, const JointDistribution& g);

// Classifies a sign pattern directly (used for solver-produced t).
ConfidenceClass classify_transformation(TransformationMatrix t);

// True iff g dominates the independent product of its own marginals.
bool association_floor_check(const JointDistribution& f, const JointDistribution& g);

}  // namespace beliefd
