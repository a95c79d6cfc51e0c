#pragma once

#include <vector>

namespace beliefd::lp {

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
  Status status = Status::Infeasible;
  std::vector<double> x;
  double objective = 0.0;
};

// max c^T x  s.t.  A x = b, x >= 0.
// Dense two-phase simplex with Bland's rule; deterministic. Intended for
// the small programs arising here (tens of rows, a few hundred columns).
Result maximize(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
                const std::vector<double>& c);

}  // namespace beliefd::lp
