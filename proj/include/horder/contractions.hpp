#pragma once

#include <vector>

#include "horder/order.hpp"
#include "horder/rootfinding.hpp"

namespace horder {

/// Move the k-th and l-th sorted entries toward each other by t.
/// Indices are 1-based positions in the sorted multiset; simple when
/// l = k+1, non-degenerate when t is strictly below half the gap.
struct ContractionStep {
  int k = 0;
  int l = 0;
  double t = 0.0;

  bool simple() const { return l == k + 1; }
};

/// A start multiset plus steps applicable in sequence; realizes a
/// majorization as elementary moves.
struct ContractionChain {
  RootMultiset start;
  std::vector<ContractionStep> steps;
};

/// Applies one contraction and re-sorts. Requires x_k != x_l and
/// 0 < t <= (x_l - x_k)/2 (the degenerate boundary is accepted).
RootMultiset apply_contraction(const RootMultiset& r,
                               const ContractionStep& step);

struct ChainConfig {
  double degeneracy_margin = 1e-3;  // shave factor on the half-gap
  double stop_tol = 1e-12;          // relative slack at which to stop
  /// Accept equal entries and boundary steps t = half-gap (the degenerate
  /// variant of the decomposition).
  bool allow_degenerate = false;
};

/// Chain of simple non-degenerate contractions from Y down to X, where
/// X is majorized by Y and both are strictly increasing. Greedy: at each
/// step contract the adjacent pair whose achievable slack reduction is
/// largest; descent of the total partial-sum slack is strict and capped.
ContractionChain chain_decompose(const RootMultiset& Y, const RootMultiset& X,
                                 const ChainConfig& cfg = {});

/// Re-applies the chain: every step must be simple, non-degenerate and
/// applicable, every intermediate must majorize its successor (HLP), and
/// the final multiset must equal X within tol * scale.
bool verify_chain(const ContractionChain& chain, const RootMultiset& X,
                  double tol = 1e-9, bool allow_degenerate = false);

}  // namespace horder
