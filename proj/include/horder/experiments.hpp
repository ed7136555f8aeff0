#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "horder/contractions.hpp"
#include "horder/order.hpp"
#include "horder/polynomials.hpp"
#include "horder/rootfinding.hpp"

namespace horder {

using ordered_json = nlohmann::ordered_json;

/// Deterministic per-trial random stream. Double conversion is done by
/// hand from the mt19937_64 output so results do not depend on the
/// standard library's distribution implementations.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream);

  double uniform(double lo, double hi);
  int uniform_int(int lo, int hi);  // inclusive bounds
  double gaussian();                // standard normal, Box-Muller
  bool coin() { return next_u64() & 1u; }

 private:
  std::uint64_t next_u64() { return eng_(); }
  double unit();  // [0, 1)
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

enum class ComplexSampling { Roots, Coefficients, Both };

struct TrialConfig {
  int degree_min = 3;
  int degree_max = 8;
  double root_bound = 5.0;           // roots i.i.d. uniform on [-L, L]
  std::vector<double> lambda_grid;   // empty -> {0, ±0.01, ±0.1, ±1, ±10}
  int trials = 100;
  std::uint64_t seed = 0;
  double tol = 1e-9;                 // order comparison slack
  double eps_hyp = 1e-8;
  double convexity_tol = 1e-6;       // second-difference floor
  double velocity_fd_tol = 1e-6;     // |closed form - central difference|
  double curvature_fd_tol = 1e-4;
  double min_gap = 1e-3;             // strict-hyperbolic redraw threshold
  double delta = 0.1;                // local_falsify perturbation size
  ComplexSampling sampling = ComplexSampling::Both;
  int threads = -1;                  // -1: HORDER_THREADS env (0 = auto)

  std::vector<double> effective_lambda_grid() const;
  std::vector<double> positive_lambda_grid() const;
  ordered_json echo() const;
};

struct TrialRecord {
  int trial = 0;
  ordered_json input;
  std::string assertion;
  ordered_json evidence;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  TrialConfig config;
  int trials = 0;
  std::vector<TrialRecord> failures;
  std::vector<TrialRecord> findings;
  int warnings = 0;
  int numeric_errors = 0;
  std::int64_t wall_ms = 0;
};

/// Monic polynomial with n i.i.d. uniform roots; when strict, redraws
/// until the minimal root gap reaches config.min_gap.
RealPolynomial random_hyperbolic(int n, const TrialConfig& cfg, Rng& rng,
                                 bool strict = true);

/// Names accepted by run_suite.
const std::vector<std::string>& registered_suites();

/// Executes the named randomized suite; deterministic given (name, config
/// (incl. seed)) apart from wall_ms.
SuiteReport run_suite(const std::string& name, const TrialConfig& cfg);

/// Smallest-|lambda| ladder value violating (R_lambda hyperbolic and
/// R_0 <= R_lambda), where R_lambda(x) = P(x+lambda) - lambda Q(x+lambda),
/// or nullopt. Q is given by its raw ascending coefficients, deg Q <= n-1.
std::optional<double> falsify_local(const RealPolynomial& P,
                                    const std::vector<double>& q_coeffs,
                                    const std::vector<double>& lambda_ladder,
                                    double tol = 1e-9, double eps_hyp = 1e-8);

/// Recomputes a recorded violation/finding from its serialized input;
/// true when the violation still holds standalone.
bool reverify_record(const std::string& suite, const TrialRecord& record);

}  // namespace horder
