#include "horder/rootfinding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <utility>

#include <Eigen/Eigenvalues>

#include "horder/errors.hpp"

namespace horder {

namespace {

using cd = std::complex<double>;
constexpr double kPi = 3.141592653589793238462643383279502884;

double max_magnitude(std::span<const cd> c) {
  double m = 0.0;
  for (const cd& x : c) m = std::max(m, std::abs(x));
  return m;
}

// Acceptance bound for a candidate root z of a degree-n polynomial.
double residual_bound(double tol, double maxcoeff, double absz, int n) {
  return tol * maxcoeff * std::pow(std::max(1.0, absz), n);
}

// p(z) and p'(z) in one Horner pass.
std::pair<cd, cd> eval_pd(std::span<const cd> c, cd z) {
  cd p{0.0, 0.0};
  cd dp{0.0, 0.0};
  for (std::size_t i = c.size(); i-- > 0;) {
    dp = dp * z + p;
    p = p * z + c[i];
  }
  return {p, dp};
}

// Unevaluated double-double value hi + lo, via Dekker/Knuth error-free
// transforms.  No fma needed; the splitting is exact for |x| < 2^996.
struct Dd {
  double hi = 0.0;
  double lo = 0.0;
};

Dd two_sum(double a, double b) {
  const double s = a + b;
  const double t = s - a;
  return {s, (a - (s - t)) + (b - t)};
}

Dd two_prod(double a, double b) {
  constexpr double split = 134217729.0;  // 2^27 + 1
  const double p = a * b;
  const double ca = split * a;
  const double ah = ca - (ca - a);
  const double al = a - ah;
  const double cb = split * b;
  const double bh = cb - (cb - b);
  const double bl = b - bh;
  return {p, ((ah * bh - p) + ah * bl + al * bh) + al * bl};
}

Dd dd_add(Dd a, Dd b) {
  Dd s = two_sum(a.hi, b.hi);
  return two_sum(s.hi, s.lo + a.lo + b.lo);
}

Dd dd_mul(Dd a, double b) {
  Dd p = two_prod(a.hi, b);
  return two_sum(p.hi, p.lo + a.lo * b);
}

Dd dd_neg(Dd a) { return {-a.hi, -a.lo}; }

// Horner with a double-double accumulator.  Plain Horner carries evaluation
// noise around eps * sum_k |c_k||z|^k, which for the badly scaled images at
// |lambda| ~ 10 caps attainable root accuracy near 1e-7; the compensated
// pass pushes that floor below the ulp of the root itself.
cd eval_compensated(std::span<const cd> c, cd z) {
  Dd re;
  Dd im;
  for (std::size_t i = c.size(); i-- > 0;) {
    const Dd nre = dd_add(dd_add(dd_mul(re, z.real()),
                                 dd_neg(dd_mul(im, z.imag()))),
                          two_sum(c[i].real(), 0.0));
    im = dd_add(dd_add(dd_mul(re, z.imag()), dd_mul(im, z.real())),
                two_sum(c[i].imag(), 0.0));
    re = nre;
  }
  return {re.hi + re.lo, im.hi + im.lo};
}

double worst_residual(std::span<const cd> c, const std::vector<cd>& z) {
  double w = 0.0;
  for (const cd& zi : z) w = std::max(w, std::abs(polyops::eval(c, zi)));
  return w;
}

bool accepted(std::span<const cd> c, const std::vector<cd>& z, double tol,
              double maxcoeff) {
  const int n = static_cast<int>(c.size()) - 1;
  for (const cd& zi : z)
    if (std::abs(polyops::eval(c, zi)) >
        residual_bound(tol, maxcoeff, std::abs(zi), n))
      return false;
  return true;
}

// Jittered circle of initial guesses; the quarter-turn offset keeps every
// guess off the real axis, where Aberth can stagnate on real inputs.
std::vector<cd> initial_guesses(int n, double radius, int attempt) {
  std::mt19937_64 eng(0x9e3779b97f4a7c15ull + static_cast<std::uint64_t>(attempt));
  std::vector<cd> z(n);
  for (int k = 0; k < n; ++k) {
    const double u = static_cast<double>(eng() >> 11) * 0x1.0p-53 - 0.5;
    const double theta = 2.0 * kPi * (k + 0.25) / n + 1e-3 * u;
    z[k] = radius * std::polar(1.0, theta);
  }
  return z;
}

// One simultaneous update; returns the largest correction applied.
double aberth_sweep(std::span<const cd> c, std::vector<cd>& z) {
  const int n = static_cast<int>(z.size());
  double maxstep = 0.0;
  for (int i = 0; i < n; ++i) {
    auto [p, dp] = eval_pd(c, z[i]);
    if (p == cd{}) continue;
    if (dp == cd{}) {
      z[i] += cd(1e-8, 1e-8) * (1.0 + std::abs(z[i]));
      continue;
    }
    const cd newton = p / dp;
    cd s{0.0, 0.0};
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const cd d = z[i] - z[j];
      if (d == cd{}) continue;
      s += 1.0 / d;
    }
    const cd denom = 1.0 - newton * s;
    const cd step = (std::abs(denom) < 1e-300) ? newton : newton / denom;
    z[i] -= step;
    maxstep = std::max(maxstep, std::abs(step));
  }
  return maxstep;
}

// Newton with compensated residuals; the plain-double derivative is enough,
// since near convergence only p(z) needs the extra digits.
void newton_polish(std::span<const cd> c, std::vector<cd>& z) {
  for (cd& zi : z) {
    for (int it = 0; it < 6; ++it) {
      const cd p = eval_compensated(c, zi);
      const cd dp = eval_pd(c, zi).second;
      if (p == cd{} || dp == cd{}) break;
      const cd step = p / dp;
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag()) ||
          std::abs(step) > 0.5 * (1.0 + std::abs(zi)))
        break;
      zi -= step;
      if (std::abs(step) <= 1e-16 * (1.0 + std::abs(zi))) break;
    }
  }
}

std::vector<cd> companion_eigenvalues(std::span<const cd> c) {
  const int n = static_cast<int>(c.size()) - 1;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) m(i + 1, i) = cd{1.0, 0.0};
  for (int i = 0; i < n; ++i) m(i, n - 1) = -c[i];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
  if (solver.info() != Eigen::Success)
    throw RootSolveError("companion eigenvalue iteration failed",
                         std::numeric_limits<double>::infinity());
  std::vector<cd> z(n);
  for (int i = 0; i < n; ++i) z[i] = solver.eigenvalues()(i);
  return z;
}

// Merge roots within eps of each other (single linkage) to their mean,
// repeated with the cluster size.
std::vector<cd> cluster_to_means(std::vector<cd> z, double eps,
                                 std::span<const cd> coeffs) {
  const int n = static_cast<int>(z.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(z[i] - z[j]) <= eps) parent[find(i)] = find(j);
  std::vector<cd> sums(n);
  std::vector<int> counts(n, 0);
  for (int i = 0; i < n; ++i) {
    const int r = find(i);
    sums[r] += z[i];
    counts[r] += 1;
  }
  std::vector<cd> out;
  out.reserve(n);
  for (int r = 0; r < n; ++r) {
    if (counts[r] == 0) continue;
    cd mean = sums[r] / static_cast<double>(counts[r]);
    if (counts[r] > 1) {
      // An m-fold cluster center is a simple zero of the (m-1)-th
      // derivative, where Newton reaches machine precision; the iterates
      // themselves are biased by O(eps^(1/m)) and their mean inherits it.
      std::vector<cd> dm(coeffs.begin(), coeffs.end());
      for (int k = 1; k < counts[r]; ++k)
        dm = polyops::derive(std::span<const cd>(dm));
      cd refined = mean;
      for (int it = 0; it < 8; ++it) {
        const cd p = eval_compensated(std::span<const cd>(dm), refined);
        const cd dp = eval_pd(std::span<const cd>(dm), refined).second;
        if (dp == cd{} || p == cd{}) break;
        const cd step = p / dp;
        refined -= step;
        if (!std::isfinite(refined.real()) || !std::isfinite(refined.imag()))
          break;
        if (std::abs(step) <= 1e-16 * (1.0 + std::abs(refined))) break;
      }
      if (std::isfinite(refined.real()) && std::isfinite(refined.imag()) &&
          std::abs(refined - mean) <= 8.0 * eps)
        mean = refined;
    }
    for (int k = 0; k < counts[r]; ++k) out.push_back(mean);
  }
  std::sort(out.begin(), out.end(), [](const cd& a, const cd& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return out;
}

PointSet2D finalize_roots(std::vector<cd> z, const RootSolveConfig& cfg,
                          std::span<const cd> coeffs) {
  double scale = 1.0;
  for (const cd& zi : z) scale = std::max(scale, std::abs(zi));
  return PointSet2D{
      cluster_to_means(std::move(z), cfg.cluster_eps * scale, coeffs)};
}

}  // namespace

double RootMultiset::sum() const {
  return std::accumulate(values.begin(), values.end(), 0.0);
}

double RootMultiset::min_gap() const {
  if (values.size() < 2) return std::numeric_limits<double>::infinity();
  std::vector<double> v = values;
  std::sort(v.begin(), v.end());
  double g = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < v.size(); ++i)
    g = std::min(g, v[i + 1] - v[i]);
  return g;
}

RootMultiset PointSet2D::real_parts() const {
  std::vector<double> v;
  v.reserve(points.size());
  for (const cd& z : points) v.push_back(z.real());
  std::sort(v.begin(), v.end());
  return RootMultiset{std::move(v)};
}

PointSet2D all_roots(const ComplexPolynomial& p, const RootSolveConfig& cfg) {
  std::span<const cd> c = p.span();
  const int n = p.degree();
  if (n == 1) return PointSet2D{{-c[0]}};

  const double maxcoeff = max_magnitude(c);
  double radius = 0.0;
  for (int i = 0; i < n; ++i) radius = std::max(radius, std::abs(c[i]));
  radius += 1.0;

  double best = std::numeric_limits<double>::infinity();
  for (int attempt = 0; attempt <= cfg.restarts; ++attempt) {
    std::vector<cd> z = initial_guesses(n, radius, attempt);
    for (int it = 0; it < cfg.max_iterations; ++it) {
      const double step = aberth_sweep(c, z);
      if (step <= 1e-15 * radius) break;
    }
    newton_polish(c, z);
    if (accepted(c, z, cfg.tol, maxcoeff)) return finalize_roots(std::move(z), cfg, c);
    best = std::min(best, worst_residual(c, z));
  }

  std::vector<cd> z = companion_eigenvalues(c);
  newton_polish(c, z);
  for (int it = 0; it < 8; ++it)
    if (aberth_sweep(c, z) <= 1e-15 * radius) break;
  newton_polish(c, z);
  if (accepted(c, z, cfg.tol, maxcoeff)) return finalize_roots(std::move(z), cfg, c);
  best = std::min(best, worst_residual(c, z));
  throw RootSolveError("root residual target not reached", best);
}

PointSet2D all_roots(const RealPolynomial& p, const RootSolveConfig& cfg) {
  return all_roots(to_complex(p), cfg);
}

RootMultiset real_root_multiset(const RealPolynomial& p, double eps_hyp,
                                const RootSolveConfig& cfg) {
  const PointSet2D pts = all_roots(p, cfg);
  std::vector<double> vals;
  vals.reserve(pts.points.size());
  for (const cd& z : pts.points) {
    if (std::abs(z.imag()) > eps_hyp * (1.0 + std::abs(z)))
      throw NotHyperbolic("zero off the real axis", z);
    vals.push_back(z.real());
  }
  std::sort(vals.begin(), vals.end());
  return RootMultiset{std::move(vals)};
}

bool is_hyperbolic(const RealPolynomial& p, double eps_hyp,
                   const RootSolveConfig& cfg) {
  try {
    real_root_multiset(p, eps_hyp, cfg);
    return true;
  } catch (const NotHyperbolic&) {
    return false;
  }
}

RootMultiset strictify(const RootMultiset& r, double eps) {
  if (!(eps > 0.0)) throw ParameterDomainError("strictify: eps must be > 0");
  if (r.values.empty()) throw DimensionError("strictify: empty multiset");
  std::vector<double> v = r.values;
  std::sort(v.begin(), v.end());
  const int n = static_cast<int>(v.size());
  for (int i = 0; i + 1 < n; ++i) v[i] -= (n - 1 - i) * eps;
  v[n - 1] += 0.5 * n * (n - 1) * eps;
  return RootMultiset{std::move(v)};
}

namespace {

// Minimal gap between consecutive sorted values, ignoring coincidences
// (true multiplicities carry identical label values either way).
double effective_gap(const std::vector<double>& v, double scale) {
  double g = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const double d = v[i + 1] - v[i];
    if (d > 1e-9 * scale) g = std::min(g, d);
  }
  return g;
}

template <typename RootsAt>
std::vector<double> continue_tracks(RootsAt& roots_at, std::vector<double> cur,
                                    double a, double b) {
  std::vector<double> nxt = roots_at(b);
  double maxmove = 0.0;
  double scale = 1.0;
  for (std::size_t i = 0; i < cur.size(); ++i) {
    maxmove = std::max(maxmove, std::abs(nxt[i] - cur[i]));
    scale = std::max({scale, std::abs(cur[i]), std::abs(nxt[i])});
  }
  if (4.0 * maxmove <= effective_gap(cur, scale)) return nxt;
  if (std::abs(b - a) <=
      1e-12 * std::max({1.0, std::abs(a), std::abs(b)}))
    throw LabelAmbiguity("root labels ambiguous below the step floor");
  const double mid = 0.5 * (a + b);
  std::vector<double> at_mid = continue_tracks(roots_at, std::move(cur), a, mid);
  return continue_tracks(roots_at, std::move(at_mid), mid, b);
}

}  // namespace

Trajectory root_trajectory(const RealPolynomial& p,
                           const std::vector<double>& lambda_grid,
                           double eps_hyp, const RootSolveConfig& cfg) {
  if (lambda_grid.empty())
    throw ParameterDomainError("root_trajectory: empty lambda grid");
  auto roots_at = [&](double lam) {
    return real_root_multiset(apply_d_lambda(p, lam), eps_hyp, cfg).values;
  };
  const int n = p.degree();
  Trajectory t;
  t.grid = lambda_grid;
  t.tracks.assign(n, std::vector<double>(lambda_grid.size(), 0.0));
  std::vector<double> cur = roots_at(lambda_grid[0]);
  for (int i = 0; i < n; ++i) t.tracks[i][0] = cur[i];
  for (std::size_t g = 1; g < lambda_grid.size(); ++g) {
    cur = continue_tracks(roots_at, std::move(cur), lambda_grid[g - 1],
                          lambda_grid[g]);
    for (int i = 0; i < n; ++i) t.tracks[i][g] = cur[i];
  }
  return t;
}

double root_velocity(const RealPolynomial& p, double lambda, double x) {
  const std::vector<double> d1 = derivative(p);
  const std::vector<double> d2 = polyops::derive(std::span<const double>(d1));
  const double y = x + lambda;
  const double p1 = polyops::eval(std::span<const double>(d1), y);
  const double p2 = polyops::eval(std::span<const double>(d2), y);
  const double num = lambda * p2;
  const double den = p1 - num;
  if (den == 0.0 || !std::isfinite(num / den) ||
      std::abs(num) > 1e14 * std::abs(den))
    throw SingularVelocity("velocity undefined: root is not simple here");
  return num / den;
}

bool interlaces(const RealPolynomial& p, const RealPolynomial& q,
                double eps_hyp, const RootSolveConfig& cfg) {
  if (q.degree() != p.degree() && q.degree() != p.degree() - 1)
    throw DegreeError("interlaces: degree of q must be deg p or deg p - 1");
  const std::vector<double> pr = real_root_multiset(p, eps_hyp, cfg).values;
  const std::vector<double> qr = real_root_multiset(q, eps_hyp, cfg).values;
  double scale = 1.0;
  for (double v : pr) scale = std::max(scale, std::abs(v));
  for (double v : qr) scale = std::max(scale, std::abs(v));
  const double band = cfg.cluster_eps * scale;

  // Cancel coincident zeros pairwise, then merge what is left.
  std::vector<std::pair<double, int>> merged;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < pr.size() && j < qr.size()) {
    if (std::abs(pr[i] - qr[j]) <= band) {
      ++i;
      ++j;
    } else if (pr[i] < qr[j]) {
      merged.emplace_back(pr[i++], 0);
    } else {
      merged.emplace_back(qr[j++], 1);
    }
  }
  for (; i < pr.size(); ++i) merged.emplace_back(pr[i], 0);
  for (; j < qr.size(); ++j) merged.emplace_back(qr[j], 1);

  for (std::size_t k = 0; k + 1 < merged.size(); ++k) {
    if (merged[k].second == merged[k + 1].second) return false;
    if (merged[k + 1].first - merged[k].first <= band) return false;
  }
  return true;
}

}  // namespace horder
