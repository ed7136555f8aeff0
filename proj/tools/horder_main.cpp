#include <complex>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "horder/contractions.hpp"
#include "horder/errors.hpp"
#include "horder/experiments.hpp"
#include "horder/io.hpp"
#include "horder/order.hpp"
#include "horder/polynomials.hpp"
#include "horder/rootfinding.hpp"

namespace {

using horder::ordered_json;

ordered_json arg_json(const std::string& arg) {
  if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) {
    return horder::io::parse_json_text(arg);
  }
  return horder::io::load_json_file(arg);
}

horder::ComplexPolynomial poly_arg(const std::string& arg) {
  return horder::io::parse_polynomial(arg_json(arg));
}

horder::RealPolynomial real_poly_arg(const std::string& arg) {
  return horder::io::parse_real_polynomial(arg_json(arg));
}

std::vector<double> vector_arg(const std::string& arg) {
  const ordered_json j = arg_json(arg);
  if (j.is_array()) return horder::io::parse_real_vector(j);
  return horder::real_root_multiset(horder::io::parse_real_polynomial(j)).values;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw horder::ParseError("cannot open output file: " + path);
  out << text;
}

void emit_json(const std::string& path, const ordered_json& j) {
  emit(path, j.dump(2) + "\n");
}

int genuine_findings(const horder::SuiteReport& rep) {
  int n = 0;
  for (const auto& f : rep.findings)
    if (f.assertion != "numeric error") ++n;
  return n;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for the spectral order on polynomial zeros"};
  app.require_subcommand(1);
  std::function<int()> action;

  std::string out_path;
  std::string poly_a;
  std::string poly_b;

  auto* c_roots = app.add_subcommand("roots", "all zeros of a polynomial");
  c_roots->add_option("polynomial", poly_a)->required();
  c_roots->add_option("-o,--output", out_path);
  c_roots->callback([&] {
    action = [&] {
      const horder::PointSet2D z = horder::all_roots(poly_arg(poly_a));
      emit_json(out_path, ordered_json{{"roots", horder::io::point_set_to_json(z)}});
      return 0;
    };
  });

  auto* c_hyp = app.add_subcommand("hyperbolic", "test whether all zeros are real");
  c_hyp->add_option("polynomial", poly_a)->required();
  c_hyp->add_option("-o,--output", out_path);
  c_hyp->callback([&] {
    action = [&] {
      const horder::RealPolynomial p = real_poly_arg(poly_a);
      if (!horder::is_hyperbolic(p)) {
        emit_json(out_path, ordered_json{{"hyperbolic", false}});
        return 1;
      }
      const horder::RootMultiset r = horder::real_root_multiset(p);
      emit_json(out_path, ordered_json{{"hyperbolic", true},
                                       {"roots", r.values}});
      return 0;
    };
  });

  double lambda = 0.0;
  std::vector<double> clam;
  auto* c_dlam = app.add_subcommand("dlam", "apply the operator D_lambda");
  c_dlam->add_option("polynomial", poly_a)->required();
  auto* lam_opt = c_dlam->add_option("--lambda", lambda, "real parameter");
  auto* clam_opt = c_dlam->add_option("--complex-lambda", clam,
                                      "complex parameter as re,im")
                       ->delimiter(',')
                       ->expected(2)
                       ->excludes(lam_opt);
  c_dlam->add_option("-o,--output", out_path);
  c_dlam->callback([&] {
    action = [&] {
      if (clam_opt->count() > 0) {
        const std::complex<double> l(clam[0], clam[1]);
        const horder::ComplexPolynomial q =
            horder::apply_d_lambda(poly_arg(poly_a), l);
        emit_json(out_path, horder::io::polynomial_to_json(q));
        return 0;
      }
      const horder::RealPolynomial q =
          horder::apply_d_lambda(real_poly_arg(poly_a), lambda);
      emit_json(out_path, horder::io::polynomial_to_json(q));
      return 0;
    };
  });

  std::string mode = "hyperbolic";
  auto* c_cmp = app.add_subcommand("compare", "spectral comparison of two polynomials");
  c_cmp->add_option("P", poly_a)->required();
  c_cmp->add_option("Q", poly_b)->required();
  c_cmp->add_option("--mode", mode)
      ->check(CLI::IsMember({"hyperbolic", "complex", "realparts"}));
  c_cmp->add_option("-o,--output", out_path);
  c_cmp->callback([&] {
    action = [&] {
      horder::ComparisonVerdict v;
      horder::OrderConfig cfg;
      if (mode == "hyperbolic") {
        v = horder::compare_hyperbolic(real_poly_arg(poly_a),
                                       real_poly_arg(poly_b), cfg);
      } else if (mode == "complex") {
        v = horder::compare_complex(poly_arg(poly_a), poly_arg(poly_b), cfg);
      } else {
        v = horder::compare_real_parts(poly_arg(poly_a), poly_arg(poly_b), cfg);
      }
      emit_json(out_path, horder::io::verdict_to_json(v));
      return v.relation == horder::Relation::Incomparable ? 1 : 0;
    };
  });

  auto* c_wit = app.add_subcommand(
      "witness", "doubly stochastic matrix carrying zeros of Q to zeros of P");
  c_wit->add_option("P", poly_a)->required();
  c_wit->add_option("Q", poly_b)->required();
  c_wit->add_option("-o,--output", out_path);
  c_wit->callback([&] {
    action = [&] {
      const horder::RootMultiset x{vector_arg(poly_a)};
      const horder::RootMultiset y{vector_arg(poly_b)};
      const horder::DoublyStochasticMatrix a = horder::classical_witness(x, y);
      emit_json(out_path,
                ordered_json{{"matrix", horder::io::matrix_to_json(a)}});
      return 0;
    };
  });

  auto* c_birk = app.add_subcommand(
      "birkhoff", "decompose a doubly stochastic matrix into permutations");
  c_birk->add_option("matrix", poly_a)->required();
  c_birk->add_option("-o,--output", out_path);
  c_birk->callback([&] {
    action = [&] {
      const horder::DoublyStochasticMatrix a =
          horder::io::parse_matrix(arg_json(poly_a));
      const auto terms = horder::birkhoff_decompose(a);
      emit_json(out_path,
                ordered_json{{"terms", horder::io::birkhoff_to_json(terms)}});
      return 0;
    };
  });

  std::string from_arg;
  std::string to_arg;
  auto* c_chain = app.add_subcommand(
      "chain", "pinch chain carrying one zero multiset down to another");
  c_chain->add_option("--from", from_arg, "majorizing multiset")->required();
  c_chain->add_option("--to", to_arg, "majorized multiset")->required();
  c_chain->add_option("-o,--output", out_path);
  c_chain->callback([&] {
    action = [&] {
      const horder::RootMultiset y{vector_arg(from_arg)};
      const horder::RootMultiset x{vector_arg(to_arg)};
      const horder::ContractionChain chain = horder::chain_decompose(y, x);
      horder::RootMultiset cur = chain.start;
      for (const auto& s : chain.steps) cur = horder::apply_contraction(cur, s);
      ordered_json j = horder::io::chain_to_json(chain);
      j["final"] = cur.values;
      emit_json(out_path, j);
      return 0;
    };
  });

  double lam_min = -1.0;
  double lam_max = 1.0;
  int steps = 21;
  auto* c_sweep = app.add_subcommand(
      "sweep", "CSV of zero trajectories of D_lambda P over a lambda range");
  c_sweep->add_option("polynomial", poly_a)->required();
  c_sweep->add_option("--lambda-min", lam_min);
  c_sweep->add_option("--lambda-max", lam_max);
  c_sweep->add_option("--steps", steps)->check(CLI::PositiveNumber);
  c_sweep->add_option("-o,--output", out_path);
  c_sweep->callback([&] {
    action = [&] {
      if (lam_max < lam_min)
        throw horder::ParameterDomainError("--lambda-max below --lambda-min");
      const horder::RealPolynomial p = real_poly_arg(poly_a);
      std::vector<double> grid(steps);
      for (int i = 0; i < steps; ++i)
        grid[i] = steps == 1 ? lam_min
                             : lam_min + (lam_max - lam_min) * i / (steps - 1);
      const horder::Trajectory traj = horder::root_trajectory(p, grid);
      std::ostringstream csv;
      horder::io::write_sweep_csv(csv, traj);
      emit(out_path, csv.str());
      return 0;
    };
  });

  horder::TrialConfig tcfg;
  std::string suite;
  auto* c_verify = app.add_subcommand("verify", "run a registered suite");
  c_verify->add_option("--suite", suite)->required();
  c_verify->add_option("--trials", tcfg.trials);
  c_verify->add_option("--seed", tcfg.seed);
  c_verify->add_option("--degree-min", tcfg.degree_min);
  c_verify->add_option("--degree-max", tcfg.degree_max);
  c_verify->add_option("-o,--output", out_path);
  c_verify->callback([&] {
    action = [&] {
      const horder::SuiteReport rep = horder::run_suite(suite, tcfg);
      emit_json(out_path, horder::io::report_to_json(rep));
      return rep.failures.empty() ? 0 : 1;
    };
  });

  auto* c_conj = app.add_subcommand(
      "conjecture1", "search for violations of the real-part conjecture");
  c_conj->add_option("--trials", tcfg.trials);
  c_conj->add_option("--seed", tcfg.seed);
  c_conj->add_option("-o,--output", out_path);
  c_conj->callback([&] {
    action = [&] {
      const horder::SuiteReport rep = horder::run_suite("conjecture1", tcfg);
      emit_json(out_path, horder::io::report_to_json(rep));
      return genuine_findings(rep) > 0 ? 1 : 0;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    return action();
  } catch (const horder::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const horder::DegreeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const horder::ParameterDomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const horder::DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const horder::UnknownSuite& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const horder::NotDoublyStochastic& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const horder::NotHyperbolic& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const horder::InvalidContraction& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const horder::NotMajorized& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  }
}
