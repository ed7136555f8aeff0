#pragma once

#include <complex>
#include <vector>

#include "horder/polynomials.hpp"

namespace horder {

/// Sorted ascending real zeros, multiplicities by repetition.
struct RootMultiset {
  std::vector<double> values;

  int size() const { return static_cast<int>(values.size()); }
  double sum() const;
  double min_gap() const;  // +inf for a single value
};

/// Zeros of a complex polynomial viewed as points of the plane.
struct PointSet2D {
  std::vector<std::complex<double>> points;

  int size() const { return static_cast<int>(points.size()); }
  /// Real parts as a sorted multiset.
  RootMultiset real_parts() const;
};

/// Labeled root paths lambda -> x_i(lambda) over a grid. tracks[i][g] is
/// the position of label i (ascending at lambda=0) at grid point g.
struct Trajectory {
  std::vector<double> grid;
  std::vector<std::vector<double>> tracks;
};

struct RootSolveConfig {
  double tol = 1e-10;        // residual acceptance, relative to coeff scale
  int max_iterations = 200;  // Aberth sweeps per attempt
  int restarts = 3;          // jittered re-initializations before fallback
  double cluster_eps = 1e-6;  // relative cluster radius for multiplicities
};

/// All n roots with multiplicity by Aberth-Ehrlich simultaneous iteration;
/// companion-matrix eigenvalues as fallback initialization. Each returned
/// root z satisfies |p(z)| <= tol * maxcoeff * max(1,|z|)^n. Nearby roots
/// (within cluster_eps * scale) are merged to their mean and repeated.
PointSet2D all_roots(const ComplexPolynomial& p,
                     const RootSolveConfig& cfg = {});
PointSet2D all_roots(const RealPolynomial& p, const RootSolveConfig& cfg = {});

/// Sorted real zeros if every root lies within |Im z| <= eps_hyp * (1+|z|);
/// otherwise throws NotHyperbolic with the offending root.
RootMultiset real_root_multiset(const RealPolynomial& p, double eps_hyp = 1e-8,
                                const RootSolveConfig& cfg = {});

bool is_hyperbolic(const RealPolynomial& p, double eps_hyp = 1e-8,
                   const RootSolveConfig& cfg = {});

/// Epsilon-strictification: (x_1-(n-1)e, ..., x_{n-1}-e, x_n+n(n-1)e/2).
/// Strictly increasing, same sum, and majorizes the input.
RootMultiset strictify(const RootMultiset& r, double eps);

/// Labeled continuation of the zeros of D_lambda p over a grid starting at
/// 0. Sub-steps adaptively whenever the step-induced motion exceeds a
/// quarter of the minimal root gap; gives up (LabelAmbiguity) at step floor
/// 1e-12.
Trajectory root_trajectory(const RealPolynomial& p,
                           const std::vector<double>& lambda_grid,
                           double eps_hyp = 1e-8,
                           const RootSolveConfig& cfg = {});

/// dx/dlambda for a simple root x of D_lambda p:
///   lambda p''(x+lambda) / (p'(x+lambda) - lambda p''(x+lambda)).
double root_velocity(const RealPolynomial& p, double lambda, double x);

/// Obreschkoff separation test: after cancelling common zeros (within the
/// coincidence band), the remaining zeros of p and q must alternate.
/// Requires deg q in {deg p, deg p - 1}.
bool interlaces(const RealPolynomial& p, const RealPolynomial& q,
                double eps_hyp = 1e-8, const RootSolveConfig& cfg = {});

}  // namespace horder
