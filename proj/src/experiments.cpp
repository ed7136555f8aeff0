#include "horder/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <map>
#include <thread>
#include <utility>

#include "horder/errors.hpp"
#include "horder/io.hpp"

namespace horder {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double abs_sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return s;
}

// D_lambda on a raw ascending coefficient vector (no monic normalization).
std::vector<double> d_lambda_raw(std::span<const double> c, double lambda) {
  auto shifted = polyops::taylor_shift(c, lambda);
  const auto d = polyops::derive(c);
  const auto dshift = polyops::taylor_shift(std::span<const double>(d), lambda);
  polyops::axpy(shifted, -lambda, std::span<const double>(dshift));
  return shifted;
}

std::vector<double> conv(std::span<const double> a, std::span<const double> b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  const std::uint64_t mixed =
      splitmix64(splitmix64(seed) ^ splitmix64(stream * 0xd1342543de82ef95ull + 1));
  eng_.seed(mixed);
}

double Rng::unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

int Rng::uniform_int(int lo, int hi) {
  if (hi < lo) throw ParameterDomainError("uniform_int: empty range");
  const int v = lo + static_cast<int>(unit() * (hi - lo + 1));
  return std::min(v, hi);
}

double Rng::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = unit();
  while (u1 <= 0.0) u1 = unit();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * kPi * unit();
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

std::vector<double> TrialConfig::effective_lambda_grid() const {
  if (!lambda_grid.empty()) return lambda_grid;
  return {-10.0, -1.0, -0.1, -0.01, 0.0, 0.01, 0.1, 1.0, 10.0};
}

std::vector<double> TrialConfig::positive_lambda_grid() const {
  std::vector<double> out;
  for (double l : effective_lambda_grid())
    if (l > 0.0) out.push_back(l);
  if (out.empty()) out = {0.01, 0.1, 1.0, 10.0};
  return out;
}

ordered_json TrialConfig::echo() const {
  const char* fam = sampling == ComplexSampling::Roots ? "roots"
                    : sampling == ComplexSampling::Coefficients
                        ? "coefficients"
                        : "both";
  return ordered_json{{"degree_min", degree_min},
                      {"degree_max", degree_max},
                      {"root_bound", root_bound},
                      {"lambda_grid", effective_lambda_grid()},
                      {"trials", trials},
                      {"seed", seed},
                      {"tol", tol},
                      {"eps_hyp", eps_hyp},
                      {"convexity_tol", convexity_tol},
                      {"velocity_fd_tol", velocity_fd_tol},
                      {"curvature_fd_tol", curvature_fd_tol},
                      {"min_gap", min_gap},
                      {"delta", delta},
                      {"sampling", fam}};
}

namespace {

std::vector<double> random_strict_roots(int n, const TrialConfig& cfg,
                                        Rng& rng, double min_gap) {
  const double bound = cfg.root_bound;
  for (int attempt = 0; attempt < 20000; ++attempt) {
    std::vector<double> r(n);
    for (double& x : r) x = rng.uniform(-bound, bound);
    std::sort(r.begin(), r.end());
    bool ok = true;
    for (int i = 0; i + 1 < n; ++i)
      if (r[i + 1] - r[i] < min_gap) {
        ok = false;
        break;
      }
    if (ok) return r;
  }
  throw Error("failed to draw a separated root set");
}

}  // namespace

RealPolynomial random_hyperbolic(int n, const TrialConfig& cfg, Rng& rng,
                                 bool strict) {
  if (n < 1) throw DegreeError("random_hyperbolic: degree must be >= 1");
  if (!strict || n == 1) {
    std::vector<double> r(n);
    for (double& x : r) x = rng.uniform(-cfg.root_bound, cfg.root_bound);
    return from_roots(r);
  }
  return from_roots(random_strict_roots(n, cfg, rng, cfg.min_gap));
}

namespace {

// Theorem-suite instance: one draw in four carries a collapsed root pair
// separated again by strictify, emulating the multiple-zero limit.
RealPolynomial random_theorem_instance(int n, const TrialConfig& cfg,
                                       Rng& rng) {
  if (n >= 2 && rng.uniform(0.0, 1.0) < 0.25) {
    std::vector<double> r(n);
    for (double& x : r) x = rng.uniform(-cfg.root_bound, cfg.root_bound);
    std::sort(r.begin(), r.end());
    const int j = rng.uniform_int(0, n - 2);
    r[j + 1] = r[j];
    const double eps = rng.coin() ? 1e-2 : 1e-3;
    return from_roots(strictify(RootMultiset{std::move(r)}, eps).values);
  }
  return random_hyperbolic(n, cfg, rng, true);
}

struct TrialOutcome {
  std::vector<TrialRecord> failures;
  std::vector<TrialRecord> findings;
  int warnings = 0;
  int numeric_errors = 0;
};

class TrialContext {
 public:
  TrialContext(const TrialConfig& cfg, int trial) : cfg_(cfg), trial_(trial) {}

  const TrialConfig& cfg() const { return cfg_; }

  void fail(ordered_json input, std::string assertion, ordered_json evidence) {
    out_.failures.push_back(
        {trial_, std::move(input), std::move(assertion), std::move(evidence)});
  }
  void find(ordered_json input, std::string assertion, ordered_json evidence) {
    out_.findings.push_back(
        {trial_, std::move(input), std::move(assertion), std::move(evidence)});
  }
  void warn() { ++out_.warnings; }
  void numeric(const std::string& what) {
    ++out_.numeric_errors;
    out_.findings.push_back(
        {trial_, ordered_json::object(), "numeric error",
         ordered_json{{"what", what}}});
  }

  TrialOutcome take() { return std::move(out_); }

 private:
  const TrialConfig& cfg_;
  int trial_;
  TrialOutcome out_;
};

int resolve_threads(const TrialConfig& cfg) {
  long t = cfg.threads;
  if (t < 0) {
    const char* env = std::getenv("HORDER_THREADS");
    t = env ? std::strtol(env, nullptr, 10) : 0;
  }
  if (t <= 0) t = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<int>(std::min(t, 64L));
}

using TrialBody = std::function<void(int, Rng&, TrialContext&)>;

SuiteReport run_trials(const std::string& name, const TrialConfig& cfg,
                       int trials, const TrialBody& body) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<TrialOutcome> results(trials);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i; (i = next.fetch_add(1)) < trials;) {
      Rng rng(cfg.seed, static_cast<std::uint64_t>(i));
      TrialContext ctx(cfg, i);
      try {
        body(i, rng, ctx);
      } catch (const std::exception& e) {
        ctx.numeric(e.what());
      }
      results[i] = ctx.take();
    }
  };
  const int nthreads = std::min(resolve_threads(cfg), std::max(1, trials));
  if (nthreads <= 1 || trials <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  SuiteReport rep;
  rep.suite = name;
  rep.seed = cfg.seed;
  rep.config = cfg;
  rep.trials = trials;
  for (TrialOutcome& r : results) {
    for (auto& f : r.failures) rep.failures.push_back(std::move(f));
    for (auto& f : r.findings) rep.findings.push_back(std::move(f));
    rep.warnings += r.warnings;
    rep.numeric_errors += r.numeric_errors;
  }
  rep.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  return rep;
}

// ---------------------------------------------------------------------
// Shared assertion helpers

ordered_json poly_json(const RealPolynomial& p) {
  return io::polynomial_to_json(p);
}

struct CompareOutcome {
  ComparisonVerdict verdict;
  double scale = 1.0;
};

CompareOutcome compare_roots(const TrialConfig& cfg, const RealPolynomial& a,
                             const RealPolynomial& b) {
  const RootMultiset x = real_root_multiset(a, cfg.eps_hyp);
  const RootMultiset y = real_root_multiset(b, cfg.eps_hyp);
  CompareOutcome out;
  out.scale = std::max(1.0, abs_sum(y.values));
  out.verdict = compare_multisets(x, y, cfg.tol, false);
  return out;
}

void check_precedes(TrialContext& ctx, const RealPolynomial& a,
                    const RealPolynomial& b, ordered_json input,
                    const char* assertion) {
  const TrialConfig& cfg = ctx.cfg();
  const CompareOutcome c = compare_roots(cfg, a, b);
  const Relation rel = c.verdict.relation;
  if (rel != Relation::Less && rel != Relation::Equivalent) {
    ctx.fail(std::move(input), assertion,
             io::verdict_to_json(c.verdict, false));
    return;
  }
  if (rel == Relation::Less && c.verdict.forward.slack < 10.0 * cfg.tol * c.scale)
    ctx.warn();
}

// ---------------------------------------------------------------------
// Suites

void suite_orbit(int, Rng& rng, TrialContext& ctx) {
  const TrialConfig& cfg = ctx.cfg();
  const int n = rng.uniform_int(cfg.degree_min, cfg.degree_max);
  const RealPolynomial p = random_theorem_instance(n, cfg, rng);
  for (double lam : cfg.effective_lambda_grid()) {
    ordered_json input{{"polynomial", poly_json(p)}, {"lambda", lam}};
    check_precedes(ctx, p, apply_d_lambda(p, lam), std::move(input),
                   "zeros(P) majorized by zeros(D_lambda P)");
  }
}

struct MajorPair {
  RealPolynomial p;  // zeros majorized by those of q
  RealPolynomial q;
};

MajorPair random_major_pair(Rng& rng, const TrialConfig& cfg) {
  const int n = rng.uniform_int(std::max(2, cfg.degree_min), cfg.degree_max);
  const std::vector<double> y = random_strict_roots(n, cfg, rng, cfg.min_gap);
  RootMultiset cur{y};
  const int moves = rng.coin() ? 1 : rng.uniform_int(2, 4);
  for (int m = 0; m < moves; ++m) {
    const int k = rng.uniform_int(1, n - 1);
    const int l = rng.coin() ? k + 1 : rng.uniform_int(k + 1, n);
    const double gap = cur.values[l - 1] - cur.values[k - 1];
    if (!(gap > 0.0)) continue;
    cur = apply_contraction(cur, {k, l, rng.uniform(0.05, 0.45) * gap});
  }
  return {from_roots(cur.values), from_roots(y)};
}

void suite_semigroup_order(int, Rng& rng, TrialContext& ctx) {
  const TrialConfig& cfg = ctx.cfg();
  const MajorPair pair = random_major_pair(rng, cfg);
  for (double lam : cfg.effective_lambda_grid()) {
    ordered_json input{{"P", poly_json(pair.p)},
                       {"Q", poly_json(pair.q)},
                       {"lambda", lam}};
    check_precedes(ctx, derivative_pencil(pair.p, lam),
                   derivative_pencil(pair.q, lam), std::move(input),
                   "zeros(P + lambda P') majorized by zeros(Q + lambda Q')");
  }
}

void suite_derivative_order(int, Rng& rng, TrialContext& ctx) {
  const TrialConfig& cfg = ctx.cfg();
  const MajorPair pair = random_major_pair(rng, cfg);
  ordered_json input{{"P", poly_json(pair.p)}, {"Q", poly_json(pair.q)}};
  check_precedes(ctx, normalized_derivative(pair.p),
                 normalized_derivative(pair.q), std::move(input),
                 "zeros(P'/n) majorized by zeros(Q'/n)");
}

void suite_global_monotone(int, Rng& rng, TrialContext& ctx) {
  const TrialConfig& cfg = ctx.cfg();
  const int n = rng.uniform_int(cfg.degree_min, cfg.degree_max);
  const RealPolynomial p = random_theorem_instance(n, cfg, rng);
  for (int s = 0; s < 10; ++s) {
    const double sign = rng.coin() ? 1.0 : -1.0;
    double m1 = rng.uniform(0.0, 1.0) < 0.1
                    ? 0.0
                    : std::pow(10.0, rng.uniform(-2.0, 1.0));
    double m2 = std::pow(10.0, rng.uniform(-2.0, 1.0));
    if (m1 > m2) std::swap(m1, m2);
    const double l1 = sign * m1;
    const double l2 = sign * m2;
    ordered_json input{{"polynomial", poly_json(p)},
                       {"lambda1", l1},
                       {"lambda2", l2}};
    check_precedes(ctx, apply_d_lambda(p, l1), apply_d_lambda(p, l2),
                   std::move(input),
                   "zeros(D_lambda1 P) majorized by zeros(D_lambda2 P)");
  }
}

void suite_convexity(int, Rng& rng, TrialContext& ctx) {
  const TrialConfig& cfg = ctx.cfg();
  const int n = rng.uniform_int(cfg.degree_min, cfg.degree_max);
  const RealPolynomial p = random_theorem_instance(n, cfg, rng);
  constexpr int kPoints = 41;
  constexpr int kCenter = kPoints / 2;
  std::vector<double> grid(kPoints);
  std::vector<double> fmax(kPoints);
  std::vector<double> fmin(kPoints);
  for (int k = 0; k < kPoints; ++k) {
    grid[k] = -2.0 + 4.0 * k / (kPoints - 1);
    const RootMultiset r = real_root_multiset(apply_d_lambda(p, grid[k]),
                                              cfg.eps_hyp);
    fmax[k] = r.values.back();
    fmin[k] = r.values.front();
  }
  const ordered_json input{{"polynomial", poly_json(p)}};
  const double tol = cfg.convexity_tol;

  auto check_curve = [&](const std::vector<double>& f, bool convex,
                         const char* what) {
    const double dir = convex ? 1.0 : -1.0;
    for (int k = 1; k + 1 < kPoints; ++k) {
      const double d2 = dir * (f[k + 1] - 2.0 * f[k] + f[k - 1]);
      if (d2 < -tol)
        ctx.fail(input, std::string(what) + " has no curvature violation",
                 ordered_json{{"lambda", grid[k]}, {"second_difference", d2}});
      else if (d2 < 0.0)
        ctx.warn();
    }
    double extreme = f[0] * dir;
    for (int k = 1; k < kPoints; ++k) extreme = std::min(extreme, f[k] * dir);
    const double at_zero = f[kCenter] * dir;
    if (at_zero > extreme + tol)
      ctx.fail(input,
               std::string(what) + " attains its grid optimum at lambda 0",
               ordered_json{{"value_at_zero", f[kCenter]},
                            {"grid_optimum", extreme * dir}});
    else if (at_zero > extreme)
      ctx.warn();
  };

  check_curve(fmax, true, "largest zero over lambda");
  check_curve(fmin, false, "smallest zero over lambda");
  std::vector<double> spread(kPoints);
  for (int k = 0; k < kPoints; ++k) spread[k] = fmax[k] - fmin[k];
  check_curve(spread, true, "zero spread over lambda");
}

std::vector<double> dyadic_ladder() {
  std::vector<double> out;
  for (int j = 20; j >= 0; --j) {
    out.push_back(std::ldexp(1.0, -j));
    out.push_back(-std::ldexp(1.0, -j));
  }
  return out;
}

void suite_local_falsify(int, Rng& rng, TrialContext& ctx) {
  const TrialConfig& cfg = ctx.cfg();
  const int n = rng.uniform_int(cfg.degree_min, cfg.degree_max);
  const RealPolynomial p = random_hyperbolic(n, cfg, rng, true);
  std::vector<double> bump(n);
  for (double& e : bump) e = rng.uniform(-1.0, 1.0);
  const std::vector<double> ladder = dyadic_ladder();

  if (cfg.delta > 0.0) {
    std::vector<double> q = derivative(p);
    polyops::axpy(q, cfg.delta, std::span<const double>(bump));
    ordered_json input{{"polynomial", poly_json(p)},
                       {"bump", bump},
                       {"delta", cfg.delta}};
    const std::optional<double> hit =
        falsify_local(p, q, ladder, cfg.tol, cfg.eps_hyp);
    if (!hit) {
      ctx.fail(std::move(input),
               "perturbed pencil violates order or hyperbolicity somewhere "
               "on the dyadic ladder",
               ordered_json{{"ladder_size", ladder.size()}});
    } else {
      // Independent recheck of the reported lambda.
      auto shifted = polyops::taylor_shift(p.span(), *hit);
      const auto qs =
          polyops::taylor_shift(std::span<const double>(q), *hit);
      polyops::axpy(shifted, -(*hit), std::span<const double>(qs));
      shifted.back() = 1.0;
      const RealPolynomial r(std::move(shifted));
      bool confirmed = !is_hyperbolic(r, cfg.eps_hyp);
      if (!confirmed) {
        const RootMultiset x0 = real_root_multiset(p, cfg.eps_hyp);
        const RootMultiset xl = real_root_multiset(r, cfg.eps_hyp);
        confirmed = !hlp_majorize(x0, xl, cfg.tol).holds;
      }
      if (!confirmed)
        ctx.fail(std::move(input), "reported violation re-verifies",
                 ordered_json{{"lambda", *hit}});
    }
  }

  const std::optional<double> phantom =
      falsify_local(p, derivative(p), ladder, cfg.tol, cfg.eps_hyp);
  if (phantom)
    ctx.fail(ordered_json{{"polynomial", poly_json(p)}, {"delta", 0.0}},
             "unperturbed derivative admits no violation",
             ordered_json{{"lambda", *phantom}});
}

const std::vector<double>& formula_lambdas() {
  static const std::vector<double> l{0.1, 0.5, 1.0};
  return l;
}

void suite_velocity_formula(int, Rng& rng, TrialContext& ctx) {
  const TrialConfig& cfg = ctx.cfg();
  const int n = rng.uniform_int(std::max(2, cfg.degree_min), cfg.degree_max);
  const std::vector<double> roots =
      random_strict_roots(n, cfg, rng, std::max(cfg.min_gap, 0.1));
  const RealPolynomial p = from_roots(roots);
  const std::vector<double> d1 = derivative(p);
  const std::vector<double> d2 = polyops::derive(std::span<const double>(d1));
  const ordered_json pj = poly_json(p);

  for (double lam : formula_lambdas()) {
    const std::vector<double> x =
        real_root_multiset(apply_d_lambda(p, lam), cfg.eps_hyp).values;
    std::vector<double> vel(n);
    for (int i = 0; i < n; ++i) vel[i] = root_velocity(p, lam, x[i]);

    // Five-point stencil at a wide step: the image coefficients are rounded
    // to doubles, which already displaces each zero by ~1e-12, so a narrow
    // step divides that noise into the quotient.
    const double h = 1e-3;
    const std::vector<double> xp =
        real_root_multiset(apply_d_lambda(p, lam + h), cfg.eps_hyp).values;
    const std::vector<double> xm =
        real_root_multiset(apply_d_lambda(p, lam - h), cfg.eps_hyp).values;
    const std::vector<double> xp2 =
        real_root_multiset(apply_d_lambda(p, lam + 2.0 * h), cfg.eps_hyp).values;
    const std::vector<double> xm2 =
        real_root_multiset(apply_d_lambda(p, lam - 2.0 * h), cfg.eps_hyp).values;
    for (int i = 0; i < n; ++i) {
      const double fd =
          (-xp2[i] + 8.0 * xp[i] - 8.0 * xm[i] + xm2[i]) / (12.0 * h);
      if (std::abs(vel[i] - fd) > cfg.velocity_fd_tol) {
        ctx.fail(ordered_json{{"polynomial", pj}, {"lambda", lam}},
                 "closed-form zero velocity matches central differences",
                 ordered_json{{"index", i + 1},
                              {"closed_form", vel[i]},
                              {"finite_difference", fd}});
      }
    }

    double partial = 0.0;
    for (int m = 1; m <= n - 1; ++m) {
      partial += vel[m - 1];
      if (!(partial < 0.0))
        ctx.fail(ordered_json{{"polynomial", pj}, {"lambda", lam}},
                 "leading velocity sums are negative for positive lambda",
                 ordered_json{{"m", m}, {"sum", partial}});
      else if (partial > -10.0 * cfg.tol)
        ctx.warn();
    }

    // Right-hand side of the velocity identity, under both readings of
    // its denominator; they coincide algebraically, so agreement of
    // either with the left side is reported rather than asserted.
    const std::vector<double> g = d_lambda_raw(std::span<const double>(d1), lam);
    std::vector<double> ghat = g;
    for (double& c : ghat) c /= static_cast<double>(n);
    ghat.back() = 1.0;
    const std::vector<double> w =
        real_root_multiset(RealPolynomial(ghat), cfg.eps_hyp).values;
    const std::vector<double> gprime =
        polyops::derive(std::span<const double>(g));
    const std::vector<double> hb = d_lambda_raw(std::span<const double>(d2), lam);
    double err_a = 0.0;
    double err_b = 0.0;
    double lhs_mag = 1.0;
    double sum = 0.0;
    for (int m = 1; m <= n - 1; ++m) {
      sum += vel[m - 1];
      double rhs_a = 0.0;
      double rhs_b = 0.0;
      for (int j = 0; j < n - 1; ++j) {
        const double num =
            polyops::eval(std::span<const double>(d2), w[j] + lam);
        double inv = 0.0;
        for (int i = 0; i < m; ++i) inv += 1.0 / (x[i] - w[j]);
        rhs_a += num / polyops::eval(std::span<const double>(gprime), w[j]) * inv;
        rhs_b += num / polyops::eval(std::span<const double>(hb), w[j]) * inv;
      }
      err_a = std::max(err_a, std::abs(sum - lam * rhs_a));
      err_b = std::max(err_b, std::abs(sum - lam * rhs_b));
      lhs_mag = std::max(lhs_mag, std::abs(sum));
    }
    if (std::min(err_a, err_b) > 1e-6 * lhs_mag)
      ctx.find(ordered_json{{"polynomial", pj}, {"lambda", lam}},
               "velocity identity right-hand side differs from the "
               "velocity sums",
               ordered_json{{"error_derivative_reading", err_a},
                            {"error_operator_reading", err_b}});
  }
}

void suite_curvature_formula(int, Rng& rng, TrialContext& ctx) {
  const TrialConfig& cfg = ctx.cfg();
  const int n = rng.uniform_int(std::max(2, cfg.degree_min), cfg.degree_max);
  const std::vector<double> roots =
      random_strict_roots(n, cfg, rng, std::max(cfg.min_gap, 0.1));
  const RealPolynomial p = from_roots(roots);
  const std::vector<double> w =
      n >= 2 ? real_root_multiset(normalized_derivative(p), cfg.eps_hyp).values
             : std::vector<double>{};
  const ordered_json pj = poly_json(p);

  for (double lam : formula_lambdas()) {
    const std::vector<double> x =
        real_root_multiset(apply_d_lambda(p, lam), cfg.eps_hyp).values;
    const double xn = x[n - 1];
    const double vn = root_velocity(p, lam, xn);
    double sum = 0.0;
    for (int i = 0; i + 1 < n; ++i)
      sum += (w[i] - x[i] - lam) / ((xn + lam - w[i]) * (xn - x[i]));
    const double closed = 2.0 * (vn + 1.0) * (vn + 1.0) * sum;

    if (!(closed > 0.0))
      ctx.fail(ordered_json{{"polynomial", pj}, {"lambda", lam}},
               "largest-zero curve has positive curvature",
               ordered_json{{"closed_form", closed}});

    // Second differences amplify the coefficient-rounding noise by 1/h^2;
    // a five-point stencil at a moderate step keeps both that and the
    // truncation term well under the gate.
    const double h = 1e-3;
    const double xp =
        real_root_multiset(apply_d_lambda(p, lam + h), cfg.eps_hyp)
            .values.back();
    const double xm =
        real_root_multiset(apply_d_lambda(p, lam - h), cfg.eps_hyp)
            .values.back();
    const double xp2 =
        real_root_multiset(apply_d_lambda(p, lam + 2.0 * h), cfg.eps_hyp)
            .values.back();
    const double xm2 =
        real_root_multiset(apply_d_lambda(p, lam - 2.0 * h), cfg.eps_hyp)
            .values.back();
    const double fd2 =
        (-xp2 + 16.0 * xp - 30.0 * xn + 16.0 * xm - xm2) / (12.0 * h * h);
    if (std::abs(closed - fd2) > cfg.curvature_fd_tol)
      ctx.fail(ordered_json{{"polynomial", pj}, {"lambda", lam}},
               "closed-form curvature matches second differences",
               ordered_json{{"closed_form", closed},
                            {"finite_difference", fd2}});
  }
}

void suite_interlace_trajectory(int, Rng& rng, TrialContext& ctx) {
  const TrialConfig& cfg = ctx.cfg();
  const int n = rng.uniform_int(std::max(2, cfg.degree_min), cfg.degree_max);
  const RealPolynomial p = random_hyperbolic(n, cfg, rng, true);
  const RealPolynomial dp = normalized_derivative(p);
  const ordered_json pj = poly_json(p);
  for (double lam : cfg.effective_lambda_grid()) {
    const std::vector<double> x =
        real_root_multiset(apply_d_lambda(p, lam), cfg.eps_hyp).values;
    const std::vector<double> w =
        real_root_multiset(apply_d_lambda(dp, lam), cfg.eps_hyp).values;
    double scale = 1.0;
    for (double v : x) scale = std::max(scale, std::abs(v));
    const double allow = cfg.tol * scale;
    for (int i = 0; i + 1 < n; ++i) {
      const double left = w[i] - x[i];
      const double right = x[i + 1] - w[i];
      if (left < -allow || right < -allow)
        ctx.fail(ordered_json{{"polynomial", pj}, {"lambda", lam}},
                 "shifted-derivative zeros separate the shifted zeros",
                 ordered_json{{"index", i + 1},
                              {"x_i", x[i]},
                              {"w_i", w[i]},
                              {"x_next", x[i + 1]}});
      else if (left < 10.0 * allow || right < 10.0 * allow)
        ctx.warn();
    }
  }
}

std::vector<double> pencil_ladder() {
  std::vector<double> out{0.0};
  for (int j = -10; j <= 10; ++j) {
    out.push_back(std::ldexp(1.0, j));
    out.push_back(-std::ldexp(1.0, j));
  }
  return out;
}

RealPolynomial linear_pencil(const RealPolynomial& p, const RealPolynomial& q,
                             double lam) {
  std::vector<double> c = p.coefficients();
  polyops::axpy(c, lam, q.span());
  c.back() = 1.0;
  return RealPolynomial(std::move(c));
}

// Candidate pencil parameters where two zeros of p + lambda q can merge:
// real zeros x0 of the Wronskian p q' - p' q give lambda = -p(x0)/q(x0);
// the violating parameter set is bounded by these values.
std::vector<double> wronskian_candidates(const RealPolynomial& p,
                                         const RealPolynomial& q) {
  std::vector<double> wr = conv(p.span(), std::span<const double>(derivative(q)));
  const std::vector<double> pq =
      conv(std::span<const double>(derivative(p)), q.span());
  if (wr.size() < pq.size()) wr.resize(pq.size(), 0.0);
  for (std::size_t i = 0; i < pq.size(); ++i) wr[i] -= pq[i];
  double maxc = 0.0;
  for (double c : wr) maxc = std::max(maxc, std::abs(c));
  if (maxc == 0.0) return {};
  while (wr.size() > 1 && std::abs(wr.back()) <= 1e-10 * maxc) wr.pop_back();
  if (wr.size() < 2 || static_cast<int>(wr.size()) - 1 > kDegreeCap) return {};
  const double lead = wr.back();
  for (double& c : wr) c /= lead;
  std::vector<double> base;
  try {
    const PointSet2D zs = all_roots(RealPolynomial(std::move(wr)));
    for (const auto& z : zs.points) {
      if (std::abs(z.imag()) > 1e-6 * (1.0 + std::abs(z))) continue;
      const double x0 = z.real();
      const double qv = evaluate(q, x0);
      if (std::abs(qv) < 1e-12 * (1.0 + std::abs(x0))) continue;
      base.push_back(-evaluate(p, x0) / qv);
    }
  } catch (const RootSolveError&) {
    return {};
  }
  std::sort(base.begin(), base.end());
  std::vector<double> out;
  for (std::size_t i = 0; i < base.size(); ++i) {
    const double l = base[i];
    const double step = 1e-3 * (1.0 + std::abs(l));
    out.insert(out.end(), {l, l - step, l + step});
    if (i + 1 < base.size()) out.push_back(0.5 * (l + base[i + 1]));
  }
  return out;
}

void suite_obreschkoff_pencil(int, Rng& rng, TrialContext& ctx) {
  const TrialConfig& cfg = ctx.cfg();
  const int n = rng.uniform_int(std::max(3, cfg.degree_min), cfg.degree_max);
  const std::vector<double> pr =
      random_strict_roots(n, cfg, rng, std::max(cfg.min_gap, 1e-2));
  const RealPolynomial p = from_roots(pr);

  std::vector<double> qr(n - 1);
  for (int i = 0; i + 1 < n; ++i) {
    const double gap = pr[i + 1] - pr[i];
    qr[i] = rng.uniform(pr[i] + 0.1 * gap, pr[i + 1] - 0.1 * gap);
  }
  const RealPolynomial q_in = from_roots(qr);
  for (double lam : pencil_ladder()) {
    if (!is_hyperbolic(linear_pencil(p, q_in, lam), cfg.eps_hyp))
      ctx.fail(ordered_json{{"P", poly_json(p)},
                            {"Q", poly_json(q_in)},
                            {"lambda", lam}},
               "pencil of an interlacing pair stays hyperbolic",
               ordered_json::object());
  }

  RealPolynomial q_out = p;  // placeholder, reassigned below
  bool have_out = false;
  for (int attempt = 0; attempt < 50 && !have_out; ++attempt) {
    std::vector<double> r(n - 1);
    for (double& v : r) v = rng.uniform(-cfg.root_bound, cfg.root_bound);
    std::sort(r.begin(), r.end());
    const RealPolynomial cand = from_roots(r);
    if (!interlaces(p, cand, cfg.eps_hyp)) {
      q_out = cand;
      have_out = true;
    }
  }
  if (!have_out) return;
  std::vector<double> params = pencil_ladder();
  const std::vector<double> extra = wronskian_candidates(p, q_out);
  params.insert(params.end(), extra.begin(), extra.end());
  bool violated = false;
  for (double lam : params) {
    if (lam == 0.0) continue;
    if (!is_hyperbolic(linear_pencil(p, q_out, lam), cfg.eps_hyp)) {
      violated = true;
      break;
    }
  }
  if (!violated)
    ctx.fail(ordered_json{{"P", poly_json(p)}, {"Q", poly_json(q_out)}},
             "pencil of a non-interlacing pair leaves hyperbolicity",
             ordered_json{{"parameters_tried", params.size()}});
}

OrderConfig complex_order_cfg(const TrialConfig& cfg) {
  OrderConfig oc;
  oc.tol = cfg.tol;
  oc.eps_hyp = cfg.eps_hyp;
  oc.attach_witness = false;
  return oc;
}

void suite_counterexample_zn(int trial, Rng&, TrialContext& ctx) {
  const TrialConfig& cfg = ctx.cfg();
  static const int degs[3] = {3, 4, 5};
  static const double mags[3] = {0.2, 0.1, 0.05};
  const std::complex<double> dirs[3] = {
      {1.0, 0.0}, {0.0, 1.0}, {std::sqrt(0.5), std::sqrt(0.5)}};
  const int n = degs[trial / 9];
  const std::complex<double> lam = mags[(trial % 9) / 3] * dirs[trial % 3];

  std::vector<std::complex<double>> c(n + 1, {0.0, 0.0});
  c[0] = {-1.0, 0.0};
  c[n] = {1.0, 0.0};
  const ComplexPolynomial p(std::move(c));
  const ComparisonVerdict v =
      compare_complex(p, apply_d_lambda(p, lam), complex_order_cfg(cfg));
  if (v.relation != Relation::Incomparable)
    ctx.fail(ordered_json{{"degree", n},
                          {"lambda", io::complex_to_json(lam)}},
             "P and D_lambda P are incomparable in the planar order",
             io::verdict_to_json(v, false));
}

void suite_counterexample_complex_lambda(int, Rng& rng, TrialContext& ctx) {
  const TrialConfig& cfg = ctx.cfg();
  const int n = rng.uniform_int(cfg.degree_min, cfg.degree_max);
  const RealPolynomial p = random_hyperbolic(n, cfg, rng, true);
  const ComplexPolynomial pc = to_complex(p);
  const std::complex<double> lams[2] = {{0.0, 0.1}, {0.05, 0.05}};
  for (const auto& lam : lams) {
    const ComparisonVerdict v =
        compare_complex(pc, apply_d_lambda(p, lam), complex_order_cfg(cfg));
    if (v.relation != Relation::Incomparable)
      ctx.fail(ordered_json{{"polynomial", poly_json(p)},
                            {"lambda", io::complex_to_json(lam)}},
               "hyperbolic P and D_lambda P are incomparable for non-real "
               "lambda",
               io::verdict_to_json(v, false));
  }
}

ComplexPolynomial random_complex_polynomial(int n, const TrialConfig& cfg,
                                            Rng& rng, bool by_roots) {
  if (by_roots) {
    std::vector<std::complex<double>> r(n);
    for (auto& z : r) {
      const double rad = cfg.root_bound * std::sqrt(rng.uniform(0.0, 1.0));
      const double th = 2.0 * kPi * rng.uniform(0.0, 1.0);
      z = std::polar(rad, th);
    }
    return from_roots(r);
  }
  std::vector<std::complex<double>> c(n + 1);
  for (int j = 0; j < n; ++j) c[j] = {rng.gaussian(), rng.gaussian()};
  c[n] = {1.0, 0.0};
  return ComplexPolynomial(std::move(c));
}

void suite_conjecture1(int trial, Rng& rng, TrialContext& ctx) {
  const TrialConfig& cfg = ctx.cfg();
  const int n = rng.uniform_int(cfg.degree_min, cfg.degree_max);
  const bool by_roots = cfg.sampling == ComplexSampling::Roots ||
                        (cfg.sampling == ComplexSampling::Both && trial % 2 == 0);
  const ComplexPolynomial p = random_complex_polynomial(n, cfg, rng, by_roots);
  const double lam = (rng.coin() ? 1.0 : -1.0) *
                     std::pow(10.0, rng.uniform(-2.0, 1.0));

  const ComplexPolynomial q = apply_d_lambda(p, std::complex<double>(lam, 0.0));
  const RootMultiset x = all_roots(p).real_parts();
  const RootMultiset y = all_roots(q).real_parts();
  const ComparisonVerdict v = compare_multisets(x, y, cfg.tol, false);
  if (v.relation != Relation::Less && v.relation != Relation::Equivalent) {
    ctx.find(ordered_json{{"polynomial", io::polynomial_to_json(p)},
                          {"lambda", lam},
                          {"sampling", by_roots ? "roots" : "coefficients"}},
             "real parts of zeros stay majorized under D_lambda",
             ordered_json{{"verdict", io::verdict_to_json(v, false)},
                          {"re_zeros", x.values},
                          {"re_zeros_after", y.values}});
  } else if (v.relation == Relation::Less &&
             v.forward.slack <
                 10.0 * cfg.tol * std::max(1.0, abs_sum(y.values))) {
    ctx.warn();
  }
}

using SuiteFn = void (*)(int, Rng&, TrialContext&);

const std::map<std::string, SuiteFn>& suite_table() {
  static const std::map<std::string, SuiteFn> table{
      {"orbit", suite_orbit},
      {"semigroup_order", suite_semigroup_order},
      {"derivative_order", suite_derivative_order},
      {"global_monotone", suite_global_monotone},
      {"convexity", suite_convexity},
      {"local_falsify", suite_local_falsify},
      {"velocity_formula", suite_velocity_formula},
      {"curvature_formula", suite_curvature_formula},
      {"interlace_trajectory", suite_interlace_trajectory},
      {"obreschkoff_pencil", suite_obreschkoff_pencil},
      {"counterexample_zn", suite_counterexample_zn},
      {"counterexample_complex_lambda", suite_counterexample_complex_lambda},
      {"conjecture1", suite_conjecture1}};
  return table;
}

}  // namespace

const std::vector<std::string>& registered_suites() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : suite_table()) out.push_back(name);
    return out;
  }();
  return names;
}

SuiteReport run_suite(const std::string& name, const TrialConfig& cfg) {
  const auto& table = suite_table();
  const auto it = table.find(name);
  if (it == table.end()) throw UnknownSuite("unknown suite: " + name);
  if (cfg.trials < 0) throw ParameterDomainError("trial count must be >= 0");
  if (cfg.degree_min < 2 || cfg.degree_max < cfg.degree_min ||
      cfg.degree_max > kDegreeCap)
    throw ParameterDomainError("degree range must satisfy 2 <= min <= max <= " +
                               std::to_string(kDegreeCap));
  if (!(cfg.tol > 0.0) || !(cfg.eps_hyp > 0.0) || !(cfg.root_bound > 0.0))
    throw ParameterDomainError("tolerances and root bound must be positive");
  const int trials = name == "counterexample_zn" ? 27 : cfg.trials;
  const SuiteFn fn = it->second;
  return run_trials(name, cfg, trials,
                    [fn](int i, Rng& rng, TrialContext& ctx) { fn(i, rng, ctx); });
}

std::optional<double> falsify_local(const RealPolynomial& P,
                                    const std::vector<double>& q_coeffs,
                                    const std::vector<double>& lambda_ladder,
                                    double tol, double eps_hyp) {
  if (q_coeffs.empty() || q_coeffs.size() >= P.coefficients().size())
    throw DegreeError("perturbation degree must be below deg P");
  const RootMultiset x0 = real_root_multiset(P, eps_hyp);

  std::vector<double> ladder = lambda_ladder;
  std::stable_sort(ladder.begin(), ladder.end(),
                   [](double a, double b) { return std::abs(a) < std::abs(b); });
  for (double lam : ladder) {
    if (lam == 0.0) continue;
    auto shifted = polyops::taylor_shift(P.span(), lam);
    const auto qs = polyops::taylor_shift(
        std::span<const double>(q_coeffs), lam);
    polyops::axpy(shifted, -lam, std::span<const double>(qs));
    shifted.back() = 1.0;
    const RealPolynomial r(std::move(shifted));
    try {
      const RootMultiset xl = real_root_multiset(r, eps_hyp);
      // Partial-sum dips inside the 10x band are float noise (tight zero
      // clusters move ~eps * condition just from rounding the pencil's
      // coefficients), the same triage the suites apply near thresholds.
      if (!hlp_majorize(x0, xl, 10.0 * tol).holds) return lam;
    } catch (const NotHyperbolic&) {
      return lam;
    }
  }
  return std::nullopt;
}

bool reverify_record(const std::string& suite, const TrialRecord& record) {
  if (suite == "conjecture1") {
    const ComplexPolynomial p = io::parse_polynomial(record.input.at("polynomial"));
    const double lam = record.input.at("lambda").get<double>();
    const ComplexPolynomial q =
        apply_d_lambda(p, std::complex<double>(lam, 0.0));
    OrderConfig oc;
    oc.attach_witness = false;
    const ComparisonVerdict v = compare_real_parts(p, q, oc);
    return v.relation != Relation::Less && v.relation != Relation::Equivalent;
  }
  throw UnknownSuite("standalone recheck not defined for suite: " + suite);
}

}  // namespace horder
