#include "horder/order.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "horder/errors.hpp"

namespace horder {

namespace {

double abs_sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return s;
}

std::vector<double> sorted_desc(std::vector<double> v) {
  std::sort(v.begin(), v.end(), std::greater<double>());
  return v;
}

}  // namespace

DoublyStochasticMatrix::DoublyStochasticMatrix(int n,
                                               std::vector<double> row_major)
    : n_(n), entries_(std::move(row_major)) {
  if (n_ < 1) throw DimensionError("matrix order must be >= 1");
  if (entries_.size() != static_cast<std::size_t>(n_) * n_)
    throw DimensionError("matrix data does not match its order");
  for (double& e : entries_) {
    if (e < -1e-12)
      throw NotDoublyStochastic("negative entry " + std::to_string(e));
    if (e < 0.0) e = 0.0;
  }
  for (int i = 0; i < n_; ++i) {
    double row = 0.0;
    double col = 0.0;
    for (int j = 0; j < n_; ++j) {
      row += entries_[i * n_ + j];
      col += entries_[j * n_ + i];
    }
    if (std::abs(row - 1.0) > 1e-9)
      throw NotDoublyStochastic("row " + std::to_string(i) + " sums to " +
                                std::to_string(row));
    if (std::abs(col - 1.0) > 1e-9)
      throw NotDoublyStochastic("column " + std::to_string(i) + " sums to " +
                                std::to_string(col));
  }
}

DoublyStochasticMatrix DoublyStochasticMatrix::identity(int n) {
  std::vector<double> e(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) e[i * n + i] = 1.0;
  return DoublyStochasticMatrix(n, std::move(e));
}

std::vector<double> DoublyStochasticMatrix::apply(
    const std::vector<double>& y) const {
  if (static_cast<int>(y.size()) != n_)
    throw DimensionError("vector length does not match matrix order");
  std::vector<double> out(n_, 0.0);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) out[i] += entries_[i * n_ + j] * y[j];
  return out;
}

const char* to_string(Relation r) {
  switch (r) {
    case Relation::Less:
      return "Less";
    case Relation::Greater:
      return "Greater";
    case Relation::Equivalent:
      return "Equivalent";
    case Relation::Incomparable:
      return "Incomparable";
  }
  return "?";
}

HlpResult hlp_majorize(const RootMultiset& X, const RootMultiset& Y,
                       double tol) {
  if (X.size() != Y.size())
    throw DimensionError("majorization needs equal multiset sizes");
  const int n = X.size();
  if (n == 0) throw DimensionError("majorization of empty multisets");
  const double scale = std::max(1.0, abs_sum(Y.values));
  const double allow = tol * scale;
  const std::vector<double> x = sorted_desc(X.values);
  const std::vector<double> y = sorted_desc(Y.values);

  const double sum_gap = std::accumulate(y.begin(), y.end(), 0.0) -
                         std::accumulate(x.begin(), x.end(), 0.0);
  if (std::abs(sum_gap) > allow) return {false, -1, -std::abs(sum_gap)};

  double sx = 0.0;
  double sy = 0.0;
  double slack = std::numeric_limits<double>::infinity();
  for (int k = 0; k + 1 < n; ++k) {
    sx += x[k];
    sy += y[k];
    const double margin = sy - sx;
    if (margin < -allow) return {false, k, margin};
    slack = std::min(slack, margin);
  }
  if (n == 1) slack = std::abs(sum_gap);
  return {true, -2, slack};
}

DoublyStochasticMatrix classical_witness(const RootMultiset& X,
                                         const RootMultiset& Y, double tol) {
  const HlpResult pre = hlp_majorize(X, Y, tol);
  if (!pre.holds)
    throw NotMajorized("witness requested for a non-majorized pair");
  const int n = X.size();
  const std::vector<double> x = sorted_desc(X.values);
  std::vector<double> v = sorted_desc(Y.values);
  const double scale = std::max(1.0, abs_sum(v));

  // Product of T-transforms, accumulated in descending convention.
  std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) a[i * n + i] = 1.0;

  for (int round = 0; round < 2 * n; ++round) {
    int j = -1;
    for (int i = 0; i < n; ++i)
      if (v[i] - x[i] > 1e-15 * scale) {
        j = i;
        break;
      }
    if (j < 0) break;
    int k = -1;
    for (int i = j + 1; i < n; ++i)
      if (v[i] - x[i] < -1e-15 * scale) {
        k = i;
        break;
      }
    if (k < 0) break;
    const double delta = std::min(v[j] - x[j], x[k] - v[k]);
    const double span = v[j] - v[k];
    if (!(span > 0.0))
      throw Error("T-transform pivot out of order");
    const double t = std::min(1.0, delta / span);
    // Rows j and k of the accumulated product blend; others are fixed.
    for (int c = 0; c < n; ++c) {
      const double rj = a[j * n + c];
      const double rk = a[k * n + c];
      a[j * n + c] = (1.0 - t) * rj + t * rk;
      a[k * n + c] = t * rj + (1.0 - t) * rk;
    }
    const double vj = v[j];
    const double vk = v[k];
    v[j] = (1.0 - t) * vj + t * vk;
    v[k] = t * vj + (1.0 - t) * vk;
  }

  double residual = 0.0;
  for (int i = 0; i < n; ++i) residual = std::max(residual, std::abs(v[i] - x[i]));
  if (residual > 4.0 * std::max(tol, 1e-14) * scale)
    throw Error("T-transform chain failed to converge");

  // Flip to ascending convention on both sides.
  std::vector<double> asc(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < n; ++c)
      asc[i * n + c] = a[(n - 1 - i) * n + (n - 1 - c)];
  return DoublyStochasticMatrix(n, std::move(asc));
}

namespace {

struct Phase1Result {
  bool feasible = false;
  double objective = 0.0;
  std::vector<double> solution;
};

// Dense phase-1 simplex with Bland's rule; minimizes the artificial mass.
Phase1Result phase1_simplex(std::vector<std::vector<double>> rows,
                            std::vector<double> rhs, int nvars, double tol) {
  const int m = static_cast<int>(rows.size());
  for (int i = 0; i < m; ++i) {
    if (rhs[i] < 0.0) {
      rhs[i] = -rhs[i];
      for (double& e : rows[i]) e = -e;
    }
  }
  const int total = nvars + m;
  std::vector<std::vector<double>> t(m + 1, std::vector<double>(total + 1, 0.0));
  for (int i = 0; i < m; ++i) {
    std::copy(rows[i].begin(), rows[i].end(), t[i].begin());
    t[i][nvars + i] = 1.0;
    t[i][total] = rhs[i];
  }
  std::vector<double>& obj = t[m];
  for (int j = 0; j < nvars; ++j) {
    double s = 0.0;
    for (int i = 0; i < m; ++i) s += t[i][j];
    obj[j] = -s;
  }
  double z0 = 0.0;
  for (int i = 0; i < m; ++i) z0 += rhs[i];
  obj[total] = -z0;

  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = nvars + i;

  const double eps_cost = 1e-11;
  const double eps_pivot = 1e-11;
  int budget = 200000;
  while (true) {
    int enter = -1;
    for (int j = 0; j < total; ++j)
      if (obj[j] < -eps_cost) {
        enter = j;
        break;
      }
    if (enter < 0) break;
    int leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      if (t[i][enter] <= eps_pivot) continue;
      const double ratio = t[i][total] / t[i][enter];
      if (ratio < best - 1e-15 ||
          (ratio <= best + 1e-15 && (leave < 0 || basis[i] < basis[leave]))) {
        best = ratio;
        leave = i;
      }
    }
    if (leave < 0) throw SolverStall("phase-1 entering column unbounded");
    if (--budget < 0) throw SolverStall("phase-1 pivot budget exhausted");
    const double piv = t[leave][enter];
    for (double& e : t[leave]) e /= piv;
    for (int i = 0; i <= m; ++i) {
      if (i == leave) continue;
      const double f = t[i][enter];
      if (f == 0.0) continue;
      for (int j = 0; j <= total; ++j) t[i][j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }

  Phase1Result out;
  out.objective = -obj[total];
  out.feasible = out.objective <= tol;
  out.solution.assign(nvars, 0.0);
  for (int i = 0; i < m; ++i)
    if (basis[i] < nvars) out.solution[basis[i]] = std::max(0.0, t[i][total]);
  return out;
}

std::vector<std::complex<double>> lex_sorted(
    std::vector<std::complex<double>> pts) {
  std::sort(pts.begin(), pts.end(),
            [](const std::complex<double>& a, const std::complex<double>& b) {
              return a.real() != b.real() ? a.real() < b.real()
                                          : a.imag() < b.imag();
            });
  return pts;
}

}  // namespace

MultivariateResult multivariate_majorize(const PointSet2D& X,
                                         const PointSet2D& Y, double tol) {
  if (X.size() != Y.size())
    throw DimensionError("planar majorization needs equal point counts");
  const int n = X.size();
  if (n == 0) throw DimensionError("planar majorization of empty sets");
  const auto xs = lex_sorted(X.points);
  const auto ys = lex_sorted(Y.points);

  double mag = 1.0;
  for (const auto& z : xs) mag = std::max(mag, std::abs(z));
  for (const auto& z : ys) mag = std::max(mag, std::abs(z));
  const double inv = 1.0 / mag;

  const int nvars = n * n;
  const int m = 4 * n - 1;
  std::vector<std::vector<double>> rows(m, std::vector<double>(nvars, 0.0));
  std::vector<double> rhs(m, 0.0);
  int r = 0;
  for (int i = 0; i < n; ++i, ++r) {
    for (int j = 0; j < n; ++j) rows[r][i * n + j] = 1.0;
    rhs[r] = 1.0;
  }
  for (int j = 0; j + 1 < n; ++j, ++r) {
    for (int i = 0; i < n; ++i) rows[r][i * n + j] = 1.0;
    rhs[r] = 1.0;
  }
  for (int i = 0; i < n; ++i, ++r) {
    for (int j = 0; j < n; ++j) rows[r][i * n + j] = ys[j].real() * inv;
    rhs[r] = xs[i].real() * inv;
  }
  for (int i = 0; i < n; ++i, ++r) {
    for (int j = 0; j < n; ++j) rows[r][i * n + j] = ys[j].imag() * inv;
    rhs[r] = xs[i].imag() * inv;
  }

  const Phase1Result lp = phase1_simplex(std::move(rows), std::move(rhs),
                                         nvars, tol);
  MultivariateResult out;
  out.holds = lp.feasible;
  out.objective = lp.objective;
  if (lp.feasible)
    out.witness = DoublyStochasticMatrix(n, lp.solution);
  return out;
}

namespace {

// Kuhn augmenting-path matching on the residual support.
bool try_kuhn(int u, const std::vector<std::vector<int>>& adj,
              std::vector<int>& match_col, std::vector<char>& used) {
  for (int v : adj[u]) {
    if (used[v]) continue;
    used[v] = 1;
    if (match_col[v] < 0 || try_kuhn(match_col[v], adj, match_col, used)) {
      match_col[v] = u;
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<BirkhoffTerm> birkhoff_decompose(const DoublyStochasticMatrix& A,
                                             double tol) {
  const int n = A.size();
  std::vector<double> r = A.entries();
  const double support_eps = tol / std::max(1, n);
  std::vector<BirkhoffTerm> terms;
  double total = 0.0;
  const int cap = n * n + 2;
  for (int step = 0; step < cap; ++step) {
    if (1.0 - total <= tol) return terms;
    std::vector<std::vector<int>> adj(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (r[i * n + j] > support_eps) adj[i].push_back(j);
    std::vector<int> match_col(n, -1);
    int matched = 0;
    for (int i = 0; i < n; ++i) {
      std::vector<char> used(n, 0);
      if (try_kuhn(i, adj, match_col, used)) ++matched;
    }
    if (matched < n)
      throw NotDoublyStochastic(
          "residual support has no perfect matching with mass remaining");
    std::vector<int> perm(n, -1);
    for (int j = 0; j < n; ++j)
      if (match_col[j] >= 0) perm[match_col[j]] = j;
    double w = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) w = std::min(w, r[i * n + perm[i]]);
    for (int i = 0; i < n; ++i) r[i * n + perm[i]] -= w;
    terms.push_back({w, std::move(perm)});
    total += w;
  }
  throw Error("birkhoff decomposition exceeded its term cap");
}

namespace {

Relation combine(bool fwd, bool rev) {
  if (fwd && rev) return Relation::Equivalent;
  if (fwd) return Relation::Less;
  if (rev) return Relation::Greater;
  return Relation::Incomparable;
}

DirectionEvidence classical_evidence(const RootMultiset& A,
                                     const RootMultiset& B, double tol,
                                     bool attach_witness) {
  const HlpResult h = hlp_majorize(A, B, tol);
  DirectionEvidence e;
  e.holds = h.holds;
  e.failing_index = h.failing_index;
  e.slack = h.slack;
  if (h.holds && attach_witness) e.witness = classical_witness(A, B, tol);
  return e;
}

}  // namespace

ComparisonVerdict compare_multisets(const RootMultiset& X,
                                    const RootMultiset& Y, double tol,
                                    bool attach_witness) {
  ComparisonVerdict v;
  v.tolerance = tol;
  v.forward = classical_evidence(X, Y, tol, attach_witness);
  v.reverse = classical_evidence(Y, X, tol, attach_witness);
  v.relation = combine(v.forward.holds, v.reverse.holds);
  return v;
}

ComparisonVerdict compare_hyperbolic(const RealPolynomial& P,
                                     const RealPolynomial& Q,
                                     const OrderConfig& cfg) {
  if (P.degree() != Q.degree())
    throw DegreeError("comparison needs equal degrees");
  const RootMultiset X = real_root_multiset(P, cfg.eps_hyp, cfg.roots);
  const RootMultiset Y = real_root_multiset(Q, cfg.eps_hyp, cfg.roots);
  return compare_multisets(X, Y, cfg.tol, cfg.attach_witness);
}

ComparisonVerdict compare_complex(const ComplexPolynomial& P,
                                  const ComplexPolynomial& Q,
                                  const OrderConfig& cfg) {
  if (P.degree() != Q.degree())
    throw DegreeError("comparison needs equal degrees");
  const PointSet2D X = all_roots(P, cfg.roots);
  const PointSet2D Y = all_roots(Q, cfg.roots);
  ComparisonVerdict v;
  v.tolerance = cfg.tol;
  auto direction = [&](const PointSet2D& a, const PointSet2D& b) {
    const MultivariateResult r = multivariate_majorize(a, b, cfg.tol);
    DirectionEvidence e;
    e.holds = r.holds;
    e.failing_index = r.holds ? -2 : 0;
    e.slack = r.objective;
    if (r.holds && cfg.attach_witness) e.witness = r.witness;
    return e;
  };
  v.forward = direction(X, Y);
  v.reverse = direction(Y, X);
  v.relation = combine(v.forward.holds, v.reverse.holds);
  return v;
}

ComparisonVerdict compare_real_parts(const ComplexPolynomial& P,
                                     const ComplexPolynomial& Q,
                                     const OrderConfig& cfg) {
  if (P.degree() != Q.degree())
    throw DegreeError("comparison needs equal degrees");
  const RootMultiset X = all_roots(P, cfg.roots).real_parts();
  const RootMultiset Y = all_roots(Q, cfg.roots).real_parts();
  return compare_multisets(X, Y, cfg.tol, cfg.attach_witness);
}

}  // namespace horder
