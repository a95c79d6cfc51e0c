#include "beliefd/design.hpp"

#include <algorithm>
#include <cmath>

#include "beliefd/binary.hpp"
#include "beliefd/errors.hpp"
#include "beliefd/lp.hpp"

namespace beliefd {

std::string to_string(DesignMethod m) {
  switch (m) {
    case DesignMethod::ClosedFormBinary: return "ClosedFormBinary";
    case DesignMethod::TPhiConstruction: return "TPhiConstruction";
    case DesignMethod::FallbackQP: return "FallbackQP";
  }
  return "?";
}

ResponseDeviation ideal_deviation(const Scenario& sc) {
  const ConflictMoments cm = conflict_moments(sc);
  ResponseDeviation out;
  out.delta.resize(sc.m());
  for (std::size_t j = 0; j < sc.m(); ++j)
    out.delta[j] = cm.mean_conflict - cm.conditional_conflict[j];
  return out;
}

ResponseDeviation response_deviation(const Scenario& sc, const JointDistribution& g) {
  std::vector<double> y(sc.n());
  for (std::size_t i = 0; i < sc.n(); ++i) y[i] = sc.bias_value(i);
  ResponseDeviation out;
  out.delta.resize(sc.m());
  for (std::size_t j = 0; j < sc.m(); ++j)
    out.delta[j] = conditional_mean(g, y, j) - conditional_mean(sc.joint(), y, j);
  return out;
}

double foc_residual(const Scenario& sc, const ResponseDeviation& delta) {
  const ConflictMoments cm = conflict_moments(sc);
  double worst = 0.0;
  for (std::size_t l = 0; l + 1 < sc.m(); ++l) {
    const double lhs = delta.delta[l] + cm.conditional_conflict[l];
    const double rhs = delta.delta[l + 1] + cm.conditional_conflict[l + 1];
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

namespace {

// Partial sums A_l = sum_{j<=l} f_S(s_j) (E_f[c|s_j] - E_f[c]), l = 0..m-2.
std::vector<double> conflict_partial_sums(const Scenario& sc) {
  const ConflictMoments cm = conflict_moments(sc);
  const auto& f_s = sc.joint().col_marginal();
  std::vector<double> a(sc.m() - 1);
  double acc = 0.0;
  for (std::size_t l = 0; l + 1 < sc.m(); ++l) {
    acc += f_s[l] * (cm.conditional_conflict[l] - cm.mean_conflict);
    a[l] = acc;
  }
  return a;
}

}  // namespace

TransformationMatrix construct_t_phi(const Scenario& sc, const PhiWeights& phi) {
  if (phi.phi.size() != sc.n() - 1) throw shape_mismatch("phi length must be n-1");
  const std::vector<double> a = conflict_partial_sums(sc);
  Matrix t(sc.n() - 1, sc.m() - 1);
  for (std::size_t k = 0; k + 1 < sc.n(); ++k) {
    const double dy = sc.bias_value(k + 1) - sc.bias_value(k);
    for (std::size_t l = 0; l + 1 < sc.m(); ++l) t(k, l) = a[l] * phi.phi[k] / dy;
  }
  return TransformationMatrix{std::move(t)};
}

std::optional<PhiWeights> feasibility_search(const Scenario& sc) {
  const std::size_t n = sc.n(), m = sc.m();
  const std::size_t nv = n - 1;
  const std::vector<double> a = conflict_partial_sums(sc);

  // B(j) = A_j - A_{j-1} with A outside [0, m-2] equal to zero.
  std::vector<double> bdiff(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double aj = (j + 1 < m) ? a[j] : 0.0;
    const double ajm = (j >= 1) ? a[j - 1] : 0.0;
    bdiff[j] = aj - ajm;
  }

  // Box constraints on the second difference of t^phi, which is linear in
  // phi: dd(i,j) = B(j) * (phi_i/dy_i - phi_{i-1}/dy_{i-1}), zero-padded.
  // Columns: phi (nv), z+ and z-, then one slack per inequality.
  const std::size_t n_ineq = 2 * n * m;
  const std::size_t cols = nv + 2 + n_ineq;
  std::vector<std::vector<double>> A;
  std::vector<double> b;
  std::vector<double> c(cols, 0.0);
  c[nv] = 1.0;
  c[nv + 1] = -1.0;

  std::size_t slack = nv + 2;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<double> coef(nv, 0.0);
      if (i < nv) coef[i] += bdiff[j] / (sc.bias_value(i + 1) - sc.bias_value(i));
      if (i >= 1) coef[i - 1] -= bdiff[j] / (sc.bias_value(i) - sc.bias_value(i - 1));

      // dd + z <= 1 - f_ij
      std::vector<double> row(cols, 0.0);
      for (std::size_t k = 0; k < nv; ++k) row[k] = coef[k];
      row[nv] = 1.0;
      row[nv + 1] = -1.0;
      row[slack++] = 1.0;
      A.push_back(std::move(row));
      b.push_back(1.0 - sc.joint()(i, j));

      // -dd + z <= f_ij
      std::vector<double> row2(cols, 0.0);
      for (std::size_t k = 0; k < nv; ++k) row2[k] = -coef[k];
      row2[nv] = 1.0;
      row2[nv + 1] = -1.0;
      row2[slack++] = 1.0;
      A.push_back(std::move(row2));
      b.push_back(sc.joint()(i, j));
    }

  std::vector<double> simplex_row(cols, 0.0);
  for (std::size_t k = 0; k < nv; ++k) simplex_row[k] = 1.0;
  A.push_back(std::move(simplex_row));
  b.push_back(1.0);

  const lp::Result res = lp::maximize(A, b, c);
  if (res.status != lp::Status::Optimal || res.objective < -1e-12) return std::nullopt;
  PhiWeights out;
  out.phi.assign(res.x.begin(), res.x.begin() + static_cast<std::ptrdiff_t>(nv));
  return out;
}

Matrix transportation_vertex(const JointDistribution& f, const Matrix& weights) {
  const std::size_t n = f.states(), m = f.signals();
  if (weights.rows() != n || weights.cols() != m)
    throw shape_mismatch("weight matrix shape mismatch");

  // Flattened h_ij >= 0 with n row-sum constraints and m-1 column-sum
  // constraints (the last column sum is implied).
  const std::size_t cols = n * m;
  std::vector<std::vector<double>> A;
  std::vector<double> b;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row(cols, 0.0);
    for (std::size_t j = 0; j < m; ++j) row[i * m + j] = 1.0;
    A.push_back(std::move(row));
    b.push_back(f.row_marginal()[i]);
  }
  for (std::size_t j = 0; j + 1 < m; ++j) {
    std::vector<double> row(cols, 0.0);
    for (std::size_t i = 0; i < n; ++i) row[i * m + j] = 1.0;
    A.push_back(std::move(row));
    b.push_back(f.col_marginal()[j]);
  }
  std::vector<double> c(cols);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) c[i * m + j] = weights(i, j);

  const lp::Result res = lp::maximize(A, b, c);
  if (res.status != lp::Status::Optimal)
    throw ConvergenceFailure("transportation subproblem did not solve");
  Matrix h(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) h(i, j) = std::max(0.0, res.x[i * m + j]);
  return h;
}

namespace {

double dot(const Matrix& a, const Matrix& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a.data()[k] * b.data()[k];
  return s;
}

struct Objective {
  const Scenario& sc;
  std::vector<double> y;
  std::vector<double> pm;  // E_f[theta|s_j]
  const std::vector<double>& f_s;

  explicit Objective(const Scenario& s)
      : sc(s), pm(posterior_means(s)), f_s(s.joint().col_marginal()) {
    y.resize(s.n());
    for (std::size_t i = 0; i < s.n(); ++i) y[i] = s.bias_value(i);
  }

  std::vector<double> actions(const Matrix& g) const {
    std::vector<double> a(sc.m());
    for (std::size_t j = 0; j < sc.m(); ++j) {
      double acc = 0.0;
      for (std::size_t i = 0; i < sc.n(); ++i) acc += y[i] * g(i, j);
      a[j] = acc / f_s[j];
    }
    return a;
  }

  Matrix gradient(const std::vector<double>& a) const {
    Matrix grad(sc.n(), sc.m());
    for (std::size_t j = 0; j < sc.m(); ++j) {
      const double resid = a[j] - pm[j];
      for (std::size_t i = 0; i < sc.n(); ++i) grad(i, j) = -2.0 * y[i] * resid;
    }
    return grad;
  }

  // Curvature -d^2U/2 along a marginal-preserving direction d.
  double curvature(const Matrix& d) const {
    double q = 0.0;
    for (std::size_t j = 0; j < sc.m(); ++j) {
      double da = 0.0;
      for (std::size_t i = 0; i < sc.n(); ++i) da += y[i] * d(i, j);
      da /= f_s[j];
      q += f_s[j] * da * da;
    }
    return q;
  }
};

}  // namespace

DesignSolution solve_fallback(const Scenario& sc, const SolverConfig& config,
                              std::optional<JointDistribution> start) {
  const JointDistribution& f = sc.joint();
  const Objective obj(sc);

  std::vector<Matrix> atoms;
  std::vector<double> weights;
  atoms.push_back(start ? start->probs() : f.probs());
  weights.push_back(1.0);

  auto current = [&]() {
    Matrix g(f.states(), f.signals());
    for (std::size_t k = 0; k < atoms.size(); ++k)
      for (std::size_t e = 0; e < g.size(); ++e)
        g.data()[e] += weights[k] * atoms[k].data()[e];
    return g;
  };

  Matrix g = current();
  double gap = 0.0;
  std::size_t it = 0;
  for (; it < config.max_iterations; ++it) {
    const std::vector<double> a = obj.actions(g);
    const Matrix grad = obj.gradient(a);

    const Matrix vertex = transportation_vertex(f, grad);
    gap = dot(grad, vertex) - dot(grad, g);
    if (gap <= config.gap_tolerance) break;

    // Away atom: the active atom the gradient likes least.
    std::size_t worst = 0;
    double worst_val = dot(grad, atoms[0]);
    for (std::size_t k = 1; k < atoms.size(); ++k) {
      const double v = dot(grad, atoms[k]);
      if (v < worst_val) {
        worst_val = v;
        worst = k;
      }
    }

    const double fw_improve = gap;
    const double away_improve = dot(grad, g) - worst_val;
    const bool use_away = away_improve > fw_improve && weights[worst] < 1.0 - 1e-12;

    Matrix dir = use_away ? g - atoms[worst] : vertex - g;
    const double improve = use_away ? away_improve : fw_improve;
    const double alpha_max = use_away ? weights[worst] / (1.0 - weights[worst]) : 1.0;

    const double q = obj.curvature(dir);
    double alpha = (q > 1e-18) ? improve / (2.0 * q) : alpha_max;
    alpha = std::clamp(alpha, 0.0, alpha_max);
    if (alpha <= 0.0) break;

    if (use_away) {
      for (double& w : weights) w *= 1.0 + alpha;
      weights[worst] -= alpha;
    } else {
      for (double& w : weights) w *= 1.0 - alpha;
      // Merge with an existing atom when the vertex repeats.
      std::size_t hit = atoms.size();
      for (std::size_t k = 0; k < atoms.size(); ++k)
        if (atoms[k].max_abs_diff(vertex) < 1e-12) {
          hit = k;
          break;
        }
      if (hit == atoms.size()) {
        atoms.push_back(vertex);
        weights.push_back(alpha);
      } else {
        weights[hit] += alpha;
      }
    }

    // Prune dead atoms and renormalize.
    for (std::size_t k = atoms.size(); k-- > 0;) {
      if (weights[k] < 1e-14) {
        atoms.erase(atoms.begin() + static_cast<std::ptrdiff_t>(k));
        weights.erase(weights.begin() + static_cast<std::ptrdiff_t>(k));
      }
    }
    double total = 0.0;
    for (double w : weights) total += w;
    for (double& w : weights) w /= total;
    g = current();
  }

  if (gap > config.gap_tolerance)
    throw ConvergenceFailure("conditional gradient hit the iteration cap with duality gap " +
                             std::to_string(gap));

  JointDistribution g_star{g};
  DesignSolution out{.g_star = g_star,
                     .delta_star = response_deviation(sc, g_star),
                     .classification = concordance_compare(sc.joint(), g_star),
                     .payoff_terms = payoff_decomposition(sc, g_star),
                     .method = DesignMethod::FallbackQP,
                     .foc_residual = 0.0,
                     .phi = std::nullopt,
                     .payoff = principal_payoff(sc, g_star),
                     .duality_gap = gap,
                     .iterations = it};
  out.foc_residual = foc_residual(sc, out.delta_star);
  return out;
}

DesignSolution solve_design(const Scenario& sc, const SolverConfig& config) {
  const JointDistribution& f = sc.joint();

  if (sc.n() == 2 && sc.m() == 2) {
    const BinarySolution bin = solve_binary(sc);
    JointDistribution g_star = binary_belief(sc, bin.tau_star);
    DesignSolution out{.g_star = g_star,
                       .delta_star = response_deviation(sc, g_star),
                       .classification = concordance_compare(f, g_star),
                       .payoff_terms = payoff_decomposition(sc, g_star),
                       .method = DesignMethod::ClosedFormBinary,
                       .foc_residual = 0.0,
                       .phi = std::nullopt,
                       .payoff = bin.payoff,
                       .duality_gap = 0.0,
                       .iterations = 0};
    // A clamped binary optimum keeps the interior-candidate classification.
    out.classification.tag = bin.classification;
    out.foc_residual = foc_residual(sc, out.delta_star);
    return out;
  }

  const ConflictMoments cm = conflict_moments(sc);
  double max_dev = 0.0;
  for (double cc : cm.conditional_conflict)
    max_dev = std::max(max_dev, std::abs(cc - cm.mean_conflict));

  if (max_dev <= 1e-10) {
    // Constant conditional conflict: the true distribution is optimal.
    PhiWeights uniform;
    uniform.phi.assign(sc.n() - 1, 1.0 / static_cast<double>(sc.n() - 1));
    DesignSolution out{.g_star = f,
                       .delta_star = response_deviation(sc, f),
                       .classification = concordance_compare(f, f),
                       .payoff_terms = payoff_decomposition(sc, f),
                       .method = DesignMethod::TPhiConstruction,
                       .foc_residual = 0.0,
                       .phi = uniform,
                       .payoff = principal_payoff(sc, f),
                       .duality_gap = 0.0,
                       .iterations = 0};
    return out;
  }

  if (std::optional<PhiWeights> phi = feasibility_search(sc)) {
    const TransformationMatrix t = construct_t_phi(sc, *phi);
    JointDistribution g_star{apply_transformation(f, t.t)};
    DesignSolution out{.g_star = g_star,
                       .delta_star = response_deviation(sc, g_star),
                       .classification = classify_transformation(t),
                       .payoff_terms = payoff_decomposition(sc, g_star),
                       .method = DesignMethod::TPhiConstruction,
                       .foc_residual = 0.0,
                       .phi = std::move(phi),
                       .payoff = principal_payoff(sc, g_star),
                       .duality_gap = 0.0,
                       .iterations = 0};
    out.foc_residual = foc_residual(sc, out.delta_star);
    return out;
  }

  return solve_fallback(sc, config);
}

}  // namespace beliefd
