#pragma once

#include <optional>
#include <vector>

#include "horder/polynomials.hpp"
#include "horder/rootfinding.hpp"

namespace horder {

/// Square nonnegative matrix with unit row and column sums; the witness
/// object of the spectral order.
class DoublyStochasticMatrix {
 public:
  /// Validates entries >= -1e-12 and row/column sums within 1e-9 of 1.
  DoublyStochasticMatrix(int n, std::vector<double> row_major);

  static DoublyStochasticMatrix identity(int n);

  int size() const { return n_; }
  double operator()(int i, int j) const { return entries_[i * n_ + j]; }
  const std::vector<double>& entries() const { return entries_; }

  /// y -> A y.
  std::vector<double> apply(const std::vector<double>& y) const;

 private:
  int n_;
  std::vector<double> entries_;
};

enum class Relation { Less, Greater, Equivalent, Incomparable };

const char* to_string(Relation r);

/// Outcome of one direction of a comparison. failing_index: -2 when the
/// direction holds, -1 for a sum mismatch, k >= 0 for the first failing
/// top-(k+1) partial sum (classical) or 0 for LP infeasibility (planar).
struct DirectionEvidence {
  bool holds = false;
  int failing_index = -2;
  double slack = 0.0;  // smallest margin by which the direction passed
  std::optional<DoublyStochasticMatrix> witness;
};

struct ComparisonVerdict {
  Relation relation = Relation::Incomparable;
  DirectionEvidence forward;  // first argument <= second
  DirectionEvidence reverse;
  double tolerance = 0.0;
};

struct HlpResult {
  bool holds = false;
  int failing_index = -2;  // -1 sum mismatch, k >= 0 first failing top sum
  double slack = 0.0;
};

/// Hardy-Littlewood-Polya criterion: X majorized by Y iff the sums agree
/// and every descending partial sum of X is dominated. Slack tol * scale,
/// scale = max(1, sum |y_i|).
HlpResult hlp_majorize(const RootMultiset& X, const RootMultiset& Y,
                       double tol = 1e-9);

/// Doubly stochastic A with A * sorted(Y) = sorted(X), built as a product
/// of at most n-1 T-transforms. Requires hlp_majorize(X, Y).
DoublyStochasticMatrix classical_witness(const RootMultiset& X,
                                         const RootMultiset& Y,
                                         double tol = 1e-9);

struct MultivariateResult {
  bool holds = false;
  std::optional<DoublyStochasticMatrix> witness;
  double objective = 0.0;  // phase-1 artificial objective at optimum
};

/// Planar majorization: feasibility of {A >= 0, rows/cols sum to 1,
/// A*Y = X in both coordinates}, decided by a dense phase-1 simplex with
/// Bland's rule. Points are matched in lexicographic order.
MultivariateResult multivariate_majorize(const PointSet2D& X,
                                         const PointSet2D& Y,
                                         double tol = 1e-9);

/// Weights and permutations with sum(w_k P_k) = A; at most (n-1)^2 + 1
/// terms. Each permutation is a perfect matching on the support graph of
/// the residual (entries > tol).
struct BirkhoffTerm {
  double weight;
  std::vector<int> permutation;  // row i maps to column permutation[i]
};
std::vector<BirkhoffTerm> birkhoff_decompose(const DoublyStochasticMatrix& A,
                                             double tol = 1e-9);

struct OrderConfig {
  double tol = 1e-9;
  double eps_hyp = 1e-8;
  RootSolveConfig roots;
  bool attach_witness = true;
};

/// Spectral-order comparison of two hyperbolic polynomials of equal degree
/// via the classical criterion in both directions.
ComparisonVerdict compare_hyperbolic(const RealPolynomial& P,
                                     const RealPolynomial& Q,
                                     const OrderConfig& cfg = {});

/// Planar spectral-order comparison of two complex polynomials.
ComparisonVerdict compare_complex(const ComplexPolynomial& P,
                                  const ComplexPolynomial& Q,
                                  const OrderConfig& cfg = {});

/// Classical comparison of the real parts of the zero sets.
ComparisonVerdict compare_real_parts(const ComplexPolynomial& P,
                                     const ComplexPolynomial& Q,
                                     const OrderConfig& cfg = {});

/// Direct comparison of two real multisets (the polynomial-free core of
/// compare_hyperbolic).
ComparisonVerdict compare_multisets(const RootMultiset& X,
                                    const RootMultiset& Y, double tol = 1e-9,
                                    bool attach_witness = true);

}  // namespace horder
