#include "horder/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "horder/errors.hpp"

namespace horder::io {

namespace {

double number_from(const ordered_json& j, const char* what) {
  if (!j.is_number())
    throw ParseError(std::string(what) + ": expected a number, got " +
                     j.dump());
  return j.get<double>();
}

// 17 significant digits round-trip any double exactly.
std::string csv_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

ordered_json complex_to_json(const std::complex<double>& z) {
  return ordered_json::array({z.real(), z.imag()});
}

std::complex<double> complex_from_json(const ordered_json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ParseError("expected a number or an [re, im] pair, got " + j.dump());
}

ComplexPolynomial parse_polynomial(const ordered_json& j) {
  if (!j.is_object())
    throw ParseError("polynomial must be an object with coeffs or roots");
  const bool has_coeffs = j.contains("coeffs");
  const bool has_roots = j.contains("roots");
  if (has_coeffs == has_roots)
    throw ParseError("polynomial needs exactly one of coeffs or roots");
  const ordered_json& arr = has_coeffs ? j.at("coeffs") : j.at("roots");
  if (!arr.is_array() || arr.empty())
    throw ParseError("polynomial data must be a non-empty array");
  std::vector<std::complex<double>> v;
  v.reserve(arr.size());
  for (const auto& e : arr) v.push_back(complex_from_json(e));
  if (has_coeffs) return ComplexPolynomial(std::move(v));
  return from_roots(v);
}

RealPolynomial parse_real_polynomial(const ordered_json& j) {
  if (!j.is_object())
    throw ParseError("polynomial must be an object with coeffs or roots");
  const bool has_coeffs = j.contains("coeffs");
  const bool has_roots = j.contains("roots");
  if (has_coeffs == has_roots)
    throw ParseError("polynomial needs exactly one of coeffs or roots");
  const ordered_json& arr = has_coeffs ? j.at("coeffs") : j.at("roots");
  if (!arr.is_array() || arr.empty())
    throw ParseError("polynomial data must be a non-empty array");
  std::vector<double> v;
  v.reserve(arr.size());
  for (const auto& e : arr) {
    const std::complex<double> z = complex_from_json(e);
    if (z.imag() != 0.0)
      throw ParseError("real polynomial has a non-real entry: " + e.dump());
    v.push_back(z.real());
  }
  if (has_coeffs) return RealPolynomial(std::move(v));
  return from_roots(v);
}

ordered_json polynomial_to_json(const RealPolynomial& p) {
  return ordered_json{{"coeffs", p.coefficients()}};
}

ordered_json polynomial_to_json(const ComplexPolynomial& p) {
  ordered_json coeffs = ordered_json::array();
  for (const auto& z : p.coefficients()) coeffs.push_back(complex_to_json(z));
  return ordered_json{{"coeffs", std::move(coeffs)}};
}

std::vector<double> parse_real_vector(const ordered_json& j) {
  if (!j.is_array() || j.empty())
    throw ParseError("expected a non-empty array of numbers");
  std::vector<double> v;
  v.reserve(j.size());
  for (const auto& e : j) v.push_back(number_from(e, "vector entry"));
  return v;
}

ordered_json real_vector_to_json(const std::vector<double>& v) {
  return ordered_json(v);
}

ordered_json point_set_to_json(const PointSet2D& s) {
  ordered_json pts = ordered_json::array();
  for (const auto& z : s.points) pts.push_back(complex_to_json(z));
  return pts;
}

DoublyStochasticMatrix parse_matrix(const ordered_json& j) {
  if (!j.is_array() || j.empty())
    throw ParseError("matrix must be a non-empty array of rows");
  const int n = static_cast<int>(j.size());
  std::vector<double> entries;
  entries.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& row : j) {
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw ParseError("matrix rows must all have length " +
                       std::to_string(n));
    for (const auto& e : row) entries.push_back(number_from(e, "matrix entry"));
  }
  return DoublyStochasticMatrix(n, std::move(entries));
}

ordered_json matrix_to_json(const DoublyStochasticMatrix& a) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < a.size(); ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < a.size(); ++j) row.push_back(a(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

ContractionChain parse_chain(const ordered_json& j) {
  if (!j.is_object() || !j.contains("start") || !j.contains("steps"))
    throw ParseError("chain must be an object with start and steps");
  ContractionChain chain;
  chain.start = RootMultiset{parse_real_vector(j.at("start"))};
  std::sort(chain.start.values.begin(), chain.start.values.end());
  if (!j.at("steps").is_array()) throw ParseError("steps must be an array");
  for (const auto& s : j.at("steps")) {
    if (!s.is_object() || !s.contains("k") || !s.contains("t"))
      throw ParseError("each step needs fields k and t");
    ContractionStep step;
    if (!s.at("k").is_number_integer())
      throw ParseError("step index k must be an integer");
    step.k = s.at("k").get<int>();
    step.l = s.contains("l") ? s.at("l").get<int>() : step.k + 1;
    step.t = number_from(s.at("t"), "step size t");
    chain.steps.push_back(step);
  }
  return chain;
}

ordered_json chain_to_json(const ContractionChain& chain) {
  ordered_json steps = ordered_json::array();
  for (const auto& s : chain.steps) {
    ordered_json step{{"k", s.k}};
    if (!s.simple()) step["l"] = s.l;
    step["t"] = s.t;
    steps.push_back(std::move(step));
  }
  return ordered_json{{"start", chain.start.values}, {"steps", std::move(steps)}};
}

namespace {

ordered_json direction_to_json(const DirectionEvidence& e,
                               bool include_witness) {
  ordered_json j{{"holds", e.holds},
                 {"failing_index", e.failing_index},
                 {"slack", e.slack}};
  if (include_witness && e.witness) j["witness"] = matrix_to_json(*e.witness);
  return j;
}

}  // namespace

ordered_json verdict_to_json(const ComparisonVerdict& v, bool include_witness) {
  return ordered_json{{"relation", to_string(v.relation)},
                      {"tolerance", v.tolerance},
                      {"forward", direction_to_json(v.forward, include_witness)},
                      {"reverse", direction_to_json(v.reverse, include_witness)}};
}

ordered_json birkhoff_to_json(const std::vector<BirkhoffTerm>& terms) {
  ordered_json out = ordered_json::array();
  for (const auto& t : terms)
    out.push_back(ordered_json{{"weight", t.weight},
                               {"permutation", t.permutation}});
  return out;
}

namespace {

ordered_json records_to_json(const std::vector<TrialRecord>& records) {
  ordered_json out = ordered_json::array();
  for (const auto& r : records)
    out.push_back(ordered_json{{"trial", r.trial},
                               {"input", r.input},
                               {"assertion", r.assertion},
                               {"evidence", r.evidence}});
  return out;
}

}  // namespace

ordered_json report_to_json(const SuiteReport& r) {
  return ordered_json{{"suite", r.suite},
                      {"seed", r.seed},
                      {"config", r.config.echo()},
                      {"trials", r.trials},
                      {"failures", records_to_json(r.failures)},
                      {"findings", records_to_json(r.findings)},
                      {"warnings", r.warnings},
                      {"numeric_errors", r.numeric_errors},
                      {"wall_ms", r.wall_ms}};
}

ordered_json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str());
}

ordered_json parse_json_text(const std::string& text) {
  ordered_json j = ordered_json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("malformed JSON: " + text);
  return j;
}

void write_sweep_csv(std::ostream& out, const Trajectory& t) {
  const int n = static_cast<int>(t.tracks.size());
  out << "lambda";
  for (int i = 1; i <= n; ++i) out << ",x_" << i;
  out << ",max,min,spread";
  for (int k = 1; k < n; ++k) out << ",top_" << k;
  out << "\n";
  for (std::size_t g = 0; g < t.grid.size(); ++g) {
    out << csv_number(t.grid[g]);
    std::vector<double> vals(n);
    for (int i = 0; i < n; ++i) {
      vals[i] = t.tracks[i][g];
      out << "," << csv_number(vals[i]);
    }
    std::sort(vals.begin(), vals.end());
    const double lo = vals.front();
    const double hi = vals.back();
    out << "," << csv_number(hi) << "," << csv_number(lo) << ","
        << csv_number(hi - lo);
    double acc = 0.0;
    for (int k = 1; k < n; ++k) {
      acc += vals[n - k];
      out << "," << csv_number(acc);
    }
    out << "\n";
  }
}

}  // namespace horder::io
