#include "horder/contractions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "horder/errors.hpp"

namespace horder {

namespace {

double abs_sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return s;
}

}  // namespace

RootMultiset apply_contraction(const RootMultiset& r,
                               const ContractionStep& step) {
  const int n = r.size();
  if (step.k < 1 || step.l <= step.k || step.l > n)
    throw InvalidContraction("indices must satisfy 1 <= k < l <= n");
  std::vector<double> v = r.values;
  std::sort(v.begin(), v.end());
  const double xk = v[step.k - 1];
  const double xl = v[step.l - 1];
  if (!(xl > xk))
    throw InvalidContraction("contracted entries must be distinct");
  if (!(step.t > 0.0) || step.t > 0.5 * (xl - xk))
    throw InvalidContraction("step size must lie in (0, (x_l - x_k)/2]");
  v[step.k - 1] = xk + step.t;
  v[step.l - 1] = xl - step.t;
  std::sort(v.begin(), v.end());
  return RootMultiset{std::move(v)};
}

ContractionChain chain_decompose(const RootMultiset& Y, const RootMultiset& X,
                                 const ChainConfig& cfg) {
  if (X.size() != Y.size())
    throw DimensionError("chain endpoints need equal sizes");
  const int n = X.size();
  if (n == 0) throw DimensionError("chain on empty multisets");
  if (!cfg.allow_degenerate &&
      (!(X.min_gap() > 0.0) || !(Y.min_gap() > 0.0)))
    throw MultipleRoots("strictly increasing endpoints required");
  if (!hlp_majorize(X, Y, 1e-9).holds)
    throw NotMajorized("chain target is not majorized by the start");

  std::vector<double> x = X.values;
  std::vector<double> c = Y.values;
  std::sort(x.begin(), x.end());
  std::sort(c.begin(), c.end());
  const double scale = std::max(1.0, abs_sum(Y.values));
  const double stop = cfg.stop_tol * scale;

  // Aggregate top-(n-j) surplus of the current multiset over the target;
  // the contraction at boundary j removes exactly this slack, t at a time.
  auto slack = [&](int j) {
    double s = 0.0;
    for (int i = j; i < n; ++i) s += c[i] - x[i];
    return s;
  };

  double phi0 = 0.0;
  for (int j = 1; j < n; ++j) phi0 += std::max(0.0, slack(j));
  long cap = 1;
  if (phi0 > stop)
    cap = 16L * n * n *
          std::max(1L, std::lround(std::ceil(std::log2(phi0 / stop))));

  ContractionChain chain;
  chain.start = RootMultiset{c};
  for (long iter = 0;; ++iter) {
    int best_j = -1;
    double best_t = 0.0;
    bool any_slack = false;
    for (int j = 1; j < n; ++j) {
      const double s = slack(j);
      if (s <= stop) continue;
      any_slack = true;
      const double gap = c[j] - c[j - 1];
      if (!(gap > 0.0)) continue;
      const double room = cfg.allow_degenerate
                              ? 0.5 * gap
                              : 0.5 * gap * (1.0 - cfg.degeneracy_margin);
      const double t = std::min(s, room);
      if (t > best_t) {
        best_t = t;
        best_j = j;
      }
    }
    if (!any_slack) break;
    if (best_j < 0)
      throw Error("no contractible boundary despite remaining slack");
    if (iter >= cap)
      throw StepCapExceeded("contraction chain exceeded its step cap");
    c[best_j - 1] += best_t;
    c[best_j] -= best_t;
    chain.steps.push_back({best_j, best_j + 1, best_t});
  }
  return chain;
}

bool verify_chain(const ContractionChain& chain, const RootMultiset& X,
                  double tol, bool allow_degenerate) {
  std::vector<double> cur = chain.start.values;
  std::sort(cur.begin(), cur.end());
  const int n = static_cast<int>(cur.size());
  if (n == 0 || X.size() != n) return false;
  for (const ContractionStep& step : chain.steps) {
    if (!step.simple() || step.k < 1 || step.l > n) return false;
    const double gap = cur[step.l - 1] - cur[step.k - 1];
    if (!(gap > 0.0)) return false;
    const double half = 0.5 * gap;
    if (!(step.t > 0.0)) return false;
    if (allow_degenerate ? step.t > half : step.t >= half) return false;
    std::vector<double> next = cur;
    next[step.k - 1] += step.t;
    next[step.l - 1] -= step.t;
    if (!hlp_majorize(RootMultiset{next}, RootMultiset{cur}, tol).holds)
      return false;
    cur = std::move(next);
  }
  std::vector<double> xs = X.values;
  std::sort(xs.begin(), xs.end());
  const double scale = std::max(1.0, abs_sum(xs));
  for (int i = 0; i < n; ++i)
    if (std::abs(cur[i] - xs[i]) > tol * scale) return false;
  return true;
}

}  // namespace horder
