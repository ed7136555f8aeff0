#include <cmath>
#include <complex>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "horder/errors.hpp"
#include "horder/io.hpp"

using namespace horder;
using cd = std::complex<double>;

TEST_CASE("polynomial parsing accepts exactly one of coeffs/roots") {
  const ComplexPolynomial a =
      io::parse_polynomial(io::parse_json_text(R"({"coeffs":[-1,0,1]})"));
  CHECK(a.degree() == 2);
  CHECK(a.coefficients()[0].real() == doctest::Approx(-1.0));

  const ComplexPolynomial b =
      io::parse_polynomial(io::parse_json_text(R"({"roots":[1,2]})"));
  CHECK(b.coefficients()[0].real() == doctest::Approx(2.0));
  CHECK(b.coefficients()[1].real() == doctest::Approx(-3.0));

  const ComplexPolynomial c = io::parse_polynomial(
      io::parse_json_text(R"({"roots":[[0,1],[0,-1]]})"));
  CHECK(c.coefficients()[0].real() == doctest::Approx(1.0));

  CHECK_THROWS_AS(io::parse_polynomial(io::parse_json_text(
                      R"({"coeffs":[-1,0,1],"roots":[1]})")),
                  ParseError);
  CHECK_THROWS_AS(io::parse_polynomial(io::parse_json_text(R"({})")),
                  ParseError);
  CHECK_THROWS_AS(io::parse_polynomial(io::parse_json_text(R"({"coeffs":[]})")),
                  ParseError);
}

TEST_CASE("real polynomial parsing rejects non-real input") {
  CHECK_THROWS_AS(io::parse_real_polynomial(
                      io::parse_json_text(R"({"roots":[[0,1],[0,-1]]})")),
                  ParseError);
  const RealPolynomial p = io::parse_real_polynomial(
      io::parse_json_text(R"({"coeffs":[-1,0,1]})"));
  CHECK(p.coefficients() == std::vector<double>{-1.0, 0.0, 1.0});
}

TEST_CASE("polynomial JSON round trip") {
  const RealPolynomial p = from_roots({-2.5, 0.125, 3.75});
  const RealPolynomial back = io::parse_real_polynomial(io::polynomial_to_json(p));
  CHECK(back.coefficients() == p.coefficients());

  const ComplexPolynomial q = from_roots({cd(1.0, 2.0), cd(-0.5, -0.25)});
  const ComplexPolynomial qback = io::parse_polynomial(io::polynomial_to_json(q));
  CHECK(qback.coefficients() == q.coefficients());
}

TEST_CASE("matrix and chain round trips") {
  const DoublyStochasticMatrix a(2, {0.25, 0.75, 0.75, 0.25});
  const DoublyStochasticMatrix back = io::parse_matrix(io::matrix_to_json(a));
  CHECK(back.entries() == a.entries());
  CHECK_THROWS_AS(io::parse_matrix(io::parse_json_text("[[1,0],[1]]")),
                  ParseError);

  ContractionChain chain;
  chain.start = RootMultiset{{0.0, 2.0, 5.0}};
  chain.steps = {ContractionStep{1, 2, 0.5}, ContractionStep{1, 3, 0.25}};
  const ContractionChain cback = io::parse_chain(io::chain_to_json(chain));
  CHECK(cback.start.values == chain.start.values);
  REQUIRE(cback.steps.size() == 2);
  CHECK(cback.steps[0].k == 1);
  CHECK(cback.steps[0].l == 2);
  CHECK(cback.steps[1].l == 3);
  CHECK(cback.steps[1].t == doctest::Approx(0.25));
}

TEST_CASE("verdict serialization") {
  const ComparisonVerdict v =
      compare_hyperbolic(from_roots({1.0, 3.0}), from_roots({0.0, 4.0}));
  const ordered_json j = io::verdict_to_json(v);
  CHECK(j.at("relation") == "Less");
  CHECK(j.at("forward").at("holds") == true);
  CHECK(j.at("reverse").at("holds") == false);
  CHECK(j.at("forward").contains("witness"));
  const ordered_json bare = io::verdict_to_json(v, false);
  CHECK(!bare.at("forward").contains("witness"));
}

TEST_CASE("report serialization key order and content") {
  SuiteReport rep;
  rep.suite = "orbit";
  rep.seed = 9;
  rep.trials = 0;
  const ordered_json j = io::report_to_json(rep);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  const std::vector<std::string> want{"suite",    "seed",     "config",
                                      "trials",   "failures", "findings",
                                      "warnings", "numeric_errors", "wall_ms"};
  CHECK(keys == want);
  CHECK(j.at("failures").is_array());
  CHECK(j.at("trials") == 0);
}

TEST_CASE("sweep CSV golden rows") {
  const Trajectory t{{0.0, 1.0},
                     {{-1.0, -std::sqrt(2.0)}, {1.0, std::sqrt(2.0)}}};
  std::ostringstream out;
  io::write_sweep_csv(out, t);
  std::istringstream in(out.str());
  std::string header, row0, row1;
  std::getline(in, header);
  std::getline(in, row0);
  std::getline(in, row1);
  CHECK(header == "lambda,x_1,x_2,max,min,spread,top_1");
  CHECK(row0 == "0,-1,1,1,-1,2,1");

  std::istringstream cells(row1);
  std::string cell;
  std::vector<double> vals;
  while (std::getline(cells, cell, ',')) vals.push_back(std::stod(cell));
  REQUIRE(vals.size() == 7);
  CHECK(vals[0] == doctest::Approx(1.0));
  CHECK(vals[1] == doctest::Approx(-std::sqrt(2.0)));
  CHECK(vals[2] == doctest::Approx(std::sqrt(2.0)));
  CHECK(vals[3] == doctest::Approx(std::sqrt(2.0)));
  CHECK(vals[4] == doctest::Approx(-std::sqrt(2.0)));
  CHECK(vals[5] == doctest::Approx(2.0 * std::sqrt(2.0)));
  CHECK(vals[6] == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("parse_json_text failure becomes ParseError") {
  CHECK_THROWS_AS(io::parse_json_text("{not json"), ParseError);
  CHECK_THROWS_AS(io::load_json_file("/no/such/file.json"), ParseError);
}
