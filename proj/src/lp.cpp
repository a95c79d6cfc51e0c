#include "beliefd/lp.hpp"

#include <cassert>
#include <cmath>
#include <cstddef>
#include <limits>

namespace beliefd::lp {

namespace {

constexpr double kRcTol = 1e-9;
constexpr double kPivotTol = 1e-11;

struct Tableau {
  std::size_t rows = 0;
  std::size_t cols = 0;  // structural + artificial
  std::vector<std::vector<double>> t;  // rows x (cols + 1), last entry is rhs
  std::vector<double> rc;              // reduced costs, size cols
  double objective = 0.0;              // current -z for the minimization
  std::vector<std::size_t> basis;      // basic variable per row

  void pivot(std::size_t pr, std::size_t pc) {
    const double p = t[pr][pc];
    for (double& v : t[pr]) v /= p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == pr) continue;
      const double factor = t[i][pc];
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j <= cols; ++j) t[i][j] -= factor * t[pr][j];
    }
    const double rfac = rc[pc];
    if (rfac != 0.0) {
      for (std::size_t j = 0; j < cols; ++j) rc[j] -= rfac * t[pr][j];
      objective -= rfac * t[pr][cols];
    }
    basis[pr] = pc;
  }

  // Bland's rule on a minimization: enter the lowest-index column with
  // negative reduced cost; leave by min-ratio, ties by lowest basis index.
  Status iterate(std::size_t active_cols) {
    for (;;) {
      std::size_t pc = active_cols;
      for (std::size_t j = 0; j < active_cols; ++j)
        if (rc[j] < -kRcTol) {
          pc = j;
          break;
        }
      if (pc == active_cols) return Status::Optimal;

      std::size_t pr = rows;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < rows; ++i) {
        if (t[i][pc] <= kPivotTol) continue;
        const double ratio = t[i][cols] / t[i][pc];
        if (ratio < best - 1e-12 || (ratio < best + 1e-12 && (pr == rows || basis[i] < basis[pr]))) {
          best = ratio;
          pr = i;
        }
      }
      if (pr == rows) return Status::Unbounded;
      pivot(pr, pc);
    }
  }
};

}  // namespace

Result maximize(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
                const std::vector<double>& c) {
  const std::size_t m = A.size();
  const std::size_t n = c.size();

  Tableau tab;
  tab.rows = m;
  tab.cols = n + m;  // structural followed by one artificial per row
  tab.t.assign(m, std::vector<double>(tab.cols + 1, 0.0));
  tab.basis.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    assert(A[i].size() == n);
    const double sign = (b[i] < 0.0) ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) tab.t[i][j] = sign * A[i][j];
    tab.t[i][n + i] = 1.0;
    tab.t[i][tab.cols] = sign * b[i];
    tab.basis[i] = n + i;
  }

  // Phase 1: minimize the sum of artificials. Reduced costs of the
  // artificial basis start at zero, so rc_j = -sum_i a_ij for structurals.
  tab.rc.assign(tab.cols, 0.0);
  tab.objective = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) tab.rc[j] -= tab.t[i][j];
    tab.objective -= tab.t[i][tab.cols];
  }
  if (tab.iterate(tab.cols) == Status::Unbounded) return {Status::Infeasible, {}, 0.0};
  if (tab.objective < -1e-8) return {Status::Infeasible, {}, 0.0};

  // Drive leftover artificials out of the basis; drop redundant rows by
  // leaving them in place with an all-zero structural part.
  for (std::size_t i = 0; i < m; ++i) {
    if (tab.basis[i] < n) continue;
    std::size_t pc = n;
    for (std::size_t j = 0; j < n; ++j)
      if (std::abs(tab.t[i][j]) > 1e-9) {
        pc = j;
        break;
      }
    if (pc < n) {
      tab.rc.assign(tab.cols, 0.0);  // reduced costs rebuilt below anyway
      tab.pivot(i, pc);
    }
  }

  // Phase 2: minimize -c over the structural columns only.
  tab.rc.assign(tab.cols, 0.0);
  tab.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) tab.rc[j] = -c[j];
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t bi = tab.basis[i];
    if (bi >= n) continue;  // artificial stuck on a redundant row, cost 0
    const double cb = -c[bi];
    if (cb == 0.0) continue;
    for (std::size_t j = 0; j < tab.cols; ++j) tab.rc[j] -= cb * tab.t[i][j];
    tab.objective -= cb * tab.t[i][tab.cols];
  }
  // Artificial columns are excluded from pricing.
  const Status st = tab.iterate(n);
  if (st == Status::Unbounded) return {Status::Unbounded, {}, 0.0};

  Result out;
  out.status = Status::Optimal;
  out.x.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    if (tab.basis[i] < n) out.x[tab.basis[i]] = tab.t[i][tab.cols];
  double obj = 0.0;
  for (std::size_t j = 0; j < n; ++j) obj += c[j] * out.x[j];
  out.objective = obj;
  return out;
}

}  // namespace beliefd::lp
