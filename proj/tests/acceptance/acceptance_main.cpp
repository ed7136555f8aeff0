// Acceptance harness: one PASS/FAIL line per criterion, nonzero exit on
// any failure. Criteria use pinned seeds so reruns are comparable.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "horder/contractions.hpp"
#include "horder/errors.hpp"
#include "horder/experiments.hpp"
#include "horder/io.hpp"
#include "horder/order.hpp"
#include "horder/polynomials.hpp"
#include "horder/rootfinding.hpp"

using namespace horder;

namespace {

int g_failed = 0;

void line(int idx, const std::string& name, bool ok, const std::string& detail) {
  std::printf("C%02d %s %s%s%s\n", idx, ok ? "PASS" : "FAIL", name.c_str(),
              detail.empty() ? "" : " | ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failed;
}

std::string report_digest(const SuiteReport& rep) {
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "trials=%d failures=%zu findings=%zu warnings=%d numeric=%d "
                "wall=%lldms",
                rep.trials, rep.failures.size(), rep.findings.size(),
                rep.warnings, rep.numeric_errors,
                static_cast<long long>(rep.wall_ms));
  return buf;
}

std::vector<double> acceptance_grid() {
  return {-10.0, -1.0, -0.1, -0.01, 0.01, 0.1, 1.0, 10.0};
}

TrialConfig base_config(int trials, std::uint64_t seed) {
  TrialConfig cfg;
  cfg.trials = trials;
  cfg.seed = seed;
  return cfg;
}

// --- random pair builders shared by the direct criteria ---------------

std::vector<double> draw_strict(Rng& rng, int n, double gap) {
  for (;;) {
    std::vector<double> v(n);
    for (double& x : v) x = rng.uniform(-5.0, 5.0);
    std::sort(v.begin(), v.end());
    bool ok = true;
    for (int i = 0; i + 1 < n; ++i)
      if (v[i + 1] - v[i] < gap) ok = false;
    if (ok) return v;
  }
}

RootMultiset contract_down(Rng& rng, const RootMultiset& y, int moves) {
  RootMultiset cur = y;
  const int n = y.size();
  for (int m = 0; m < moves; ++m) {
    const int k = rng.uniform_int(1, n - 1);
    const int l = rng.uniform_int(k + 1, n);
    const double gap = cur.values[l - 1] - cur.values[k - 1];
    if (!(gap > 1e-9)) continue;
    cur = apply_contraction(cur,
                            ContractionStep{k, l, rng.uniform(0.1, 0.45) * gap});
  }
  return cur;
}

// --- criteria ----------------------------------------------------------

void c1_orbit() {
  TrialConfig cfg = base_config(1000, 101);
  cfg.lambda_grid = acceptance_grid();
  const SuiteReport rep = run_suite("orbit", cfg);
  line(1, "orbit: P precedes D_lambda P", rep.failures.empty(),
       report_digest(rep));
}

void c2_semigroup_and_derivative() {
  TrialConfig cfg = base_config(500, 102);
  cfg.lambda_grid = acceptance_grid();
  const SuiteReport sg = run_suite("semigroup_order", cfg);
  const SuiteReport dv = run_suite("derivative_order", cfg);
  line(2, "pencil and normalized derivative preserve the order",
       sg.failures.empty() && dv.failures.empty(),
       "semigroup: " + report_digest(sg) + " ; derivative: " +
           report_digest(dv));
}

void c3_global_monotone() {
  const SuiteReport rep = run_suite("global_monotone", base_config(500, 103));
  line(3, "same-sign lambda pairs are ordered by magnitude",
       rep.failures.empty(), report_digest(rep));
}

void c4_convexity() {
  const SuiteReport rep = run_suite("convexity", base_config(300, 104));
  line(4, "extreme-zero curves convex/concave with optimum at 0",
       rep.failures.empty(), report_digest(rep));
}

void c5_velocity_curvature() {
  const SuiteReport v = run_suite("velocity_formula", base_config(200, 105));
  const SuiteReport c = run_suite("curvature_formula", base_config(200, 105));
  line(5, "closed-form velocity/curvature match finite differences and signs",
       v.failures.empty() && c.failures.empty(),
       "velocity: " + report_digest(v) + " ; curvature: " + report_digest(c));
}

void c6_local_falsify() {
  const SuiteReport rep = run_suite("local_falsify", base_config(200, 106));
  int misses = 0;
  int bad_reverify = 0;
  int phantoms = 0;
  for (const auto& f : rep.failures) {
    if (f.assertion.find("re-verifies") != std::string::npos)
      ++bad_reverify;
    else if (f.assertion.find("unperturbed") != std::string::npos)
      ++phantoms;
    else
      ++misses;
  }
  const bool ok = misses <= 10 && bad_reverify == 0 && phantoms == 0 &&
                  rep.numeric_errors == 0;
  char extra[96];
  std::snprintf(extra, sizeof extra,
                "misses=%d/200 reverify_fails=%d phantoms=%d", misses,
                bad_reverify, phantoms);
  line(6, "perturbed derivatives are falsified locally, exact ones are not",
       ok, std::string(extra) + " ; " + report_digest(rep));
}

void c7_counterexamples() {
  const SuiteReport zn =
      run_suite("counterexample_zn", base_config(27, 107));
  const SuiteReport cl =
      run_suite("counterexample_complex_lambda", base_config(100, 107));
  line(7, "planar incomparability cells reproduce",
       zn.failures.empty() && cl.failures.empty(),
       "zn: " + report_digest(zn) + " ; complex lambda: " + report_digest(cl));
}

void c8_conjecture1() {
  TrialConfig cfg = base_config(10000, 108);
  const SuiteReport rep = run_suite("conjecture1", cfg);
  int genuine = 0;
  int confirmed = 0;
  for (const auto& f : rep.findings) {
    if (f.assertion == "numeric error") continue;
    ++genuine;
    try {
      if (reverify_record("conjecture1", f)) ++confirmed;
    } catch (const Error&) {
    }
  }
  // The suite is finding-only: a counterexample is a research result, not
  // a failure, so the gate is completion plus standalone re-verification
  // of every reported instance.
  char extra[64];
  std::snprintf(extra, sizeof extra, "findings=%d reverified=%d", genuine,
                confirmed);
  line(8, "real-part order search over 10000 random complex instances",
       confirmed == genuine && rep.failures.empty() &&
           rep.numeric_errors == 0,
       std::string(extra) + " ; " + report_digest(rep));
}

void c9_witness_soundness() {
  int bad = 0;
  for (int trial = 0; trial < 500; ++trial) {
    Rng rng(7009, trial);
    const int n = rng.uniform_int(3, 10);
    const RootMultiset y{draw_strict(rng, n, 1e-3)};
    const RootMultiset x = contract_down(rng, y, rng.uniform_int(1, 4));

    const DoublyStochasticMatrix a = classical_witness(x, y);
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      double row = 0.0, col = 0.0;
      for (int j = 0; j < n; ++j) {
        row += a(i, j);
        col += a(j, i);
        if (a(i, j) < -1e-12) ok = false;
      }
      if (std::abs(row - 1.0) > 1e-9 || std::abs(col - 1.0) > 1e-9) ok = false;
    }
    const std::vector<double> mapped = a.apply(y.values);
    for (int i = 0; i < n; ++i)
      if (std::abs(mapped[i] - x.values[i]) > 1e-8) ok = false;

    const auto terms = birkhoff_decompose(a);
    if (static_cast<int>(terms.size()) > (n - 1) * (n - 1) + 1) ok = false;
    std::vector<double> recon(n * n, 0.0);
    for (const auto& t : terms)
      for (int i = 0; i < n; ++i) recon[i * n + t.permutation[i]] += t.weight;
    for (int k = 0; k < n * n; ++k)
      if (std::abs(recon[k] - a.entries()[k]) > 1e-8) ok = false;

    if (!ok) ++bad;
  }
  char extra[48];
  std::snprintf(extra, sizeof extra, "bad_pairs=%d/500", bad);
  line(9, "witness matrices are doubly stochastic, exact, and decomposable",
       bad == 0, extra);
}

void c10_criteria_equivalence() {
  int disagree = 0;
  for (int trial = 0; trial < 500; ++trial) {
    Rng rng(7010, trial);
    const int n = rng.uniform_int(2, 8);
    RootMultiset x, y;
    y.values = draw_strict(rng, n, 1e-6);
    if (rng.coin()) {
      x = contract_down(rng, y, rng.uniform_int(1, 3));
    } else {
      x.values = draw_strict(rng, n, 1e-6);
    }
    auto embed = [](const RootMultiset& r) {
      PointSet2D s;
      for (double v : r.values) s.points.emplace_back(v, 0.0);
      return s;
    };
    const bool hlp_fwd = hlp_majorize(x, y).holds;
    const bool mv_fwd = multivariate_majorize(embed(x), embed(y)).holds;
    const bool hlp_rev = hlp_majorize(y, x).holds;
    const bool mv_rev = multivariate_majorize(embed(y), embed(x)).holds;
    if (hlp_fwd != mv_fwd || hlp_rev != mv_rev) ++disagree;
  }
  char extra[48];
  std::snprintf(extra, sizeof extra, "disagreements=%d/500", disagree);
  line(10, "partial-sum and linear-program criteria agree on the line",
       disagree == 0, extra);
}

void c11_chain_decompose() {
  int bad = 0;
  for (int trial = 0; trial < 300; ++trial) {
    Rng rng(7011, trial);
    const int n = rng.uniform_int(3, 10);
    RootMultiset y{draw_strict(rng, n, 1e-3)};
    RootMultiset x = contract_down(rng, y, rng.uniform_int(1, 5));
    int guard = 0;
    while (x.min_gap() < 1e-6 && guard++ < 50)
      x = contract_down(rng, y, rng.uniform_int(1, 5));
    if (x.min_gap() < 1e-6) continue;
    try {
      const ContractionChain chain = chain_decompose(y, x);
      bool simple = true;
      for (const auto& s : chain.steps) simple = simple && s.simple();
      if (!simple || !verify_chain(chain, x, 1e-9)) ++bad;
    } catch (const Error&) {
      ++bad;
    }
  }
  char extra[48];
  std::snprintf(extra, sizeof extra, "bad_chains=%d/300", bad);
  line(11, "pinch chains verify end to end", bad == 0, extra);
}

void c12_determinism() {
  auto stripped = [](const SuiteReport& rep) {
    ordered_json j = io::report_to_json(rep);
    j.erase("wall_ms");
    return j.dump();
  };
  bool ok = true;
  {
    TrialConfig cfg = base_config(100, 11);
    cfg.threads = 1;
    const std::string s1 = stripped(run_suite("orbit", cfg));
    const std::string s2 = stripped(run_suite("orbit", cfg));
    cfg.threads = 2;
    const std::string s3 = stripped(run_suite("orbit", cfg));
    ok = ok && s1 == s2 && s1 == s3;
  }
  {
    TrialConfig cfg = base_config(150, 12);
    cfg.threads = 1;
    const std::string s1 = stripped(run_suite("conjecture1", cfg));
    cfg.threads = 2;
    const std::string s2 = stripped(run_suite("conjecture1", cfg));
    ok = ok && s1 == s2;
  }
  {
    TrialConfig cfg = base_config(40, 13);
    cfg.threads = 1;
    const std::string s1 = stripped(run_suite("local_falsify", cfg));
    cfg.threads = 2;
    const std::string s2 = stripped(run_suite("local_falsify", cfg));
    ok = ok && s1 == s2;
  }
  line(12, "reports are byte-identical across reruns and thread counts", ok,
       "");
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  c1_orbit();
  c2_semigroup_and_derivative();
  c3_global_monotone();
  c4_convexity();
  c5_velocity_curvature();
  c6_local_falsify();
  c7_counterexamples();
  c8_conjecture1();
  c9_witness_soundness();
  c10_criteria_equivalence();
  c11_chain_decompose();
  c12_determinism();
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  std::printf("%s (%d/12 criteria, %lld ms total)\n",
              g_failed == 0 ? "ALL PASS" : "FAILURES PRESENT", 12 - g_failed,
              static_cast<long long>(ms));
  return g_failed == 0 ? 0 : 1;
}
