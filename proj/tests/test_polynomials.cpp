#include <complex>
#include <vector>

#include <doctest.h>

#include "horder/errors.hpp"
#include "horder/polynomials.hpp"

using namespace horder;
using cd = std::complex<double>;

namespace {

void check_coeffs(const std::vector<double>& got,
                  const std::vector<double>& want, double tol = 1e-12) {
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i)
    CHECK(got[i] == doctest::Approx(want[i]).epsilon(0).scale(1).epsilon(tol));
}

}  // namespace

TEST_CASE("from_roots expands linear factors") {
  check_coeffs(from_roots({1.0, 2.0}).coefficients(), {2.0, -3.0, 1.0});
  check_coeffs(from_roots({0.0}).coefficients(), {0.0, 1.0});
  const RealPolynomial p = from_roots({1.0, 2.0, 3.0});
  check_coeffs(p.coefficients(), {-6.0, 11.0, -6.0, 1.0});
  CHECK(p.degree() == 3);
}

TEST_CASE("from_roots rejects empty and over-cap inputs") {
  CHECK_THROWS_AS(from_roots(std::vector<double>{}), DegreeError);
  CHECK_THROWS_AS(from_roots(std::vector<double>(kDegreeCap + 1, 0.0)),
                  DegreeError);
}

TEST_CASE("monic validation") {
  CHECK_THROWS_AS(RealPolynomial({1.0, 2.0, 2.0}), ParameterDomainError);
  CHECK_THROWS_AS(RealPolynomial({1.0}), DegreeError);
  CHECK_NOTHROW(RealPolynomial({1.0, 2.0, 1.0 + 1e-13}));
}

TEST_CASE("evaluate by Horner") {
  const RealPolynomial p({0.0, 2.0, -3.0, 1.0});  // x^3 - 3x^2 + 2x
  CHECK(evaluate(p, -1.0) == doctest::Approx(-6.0));
  CHECK(evaluate(p, 0.0) == doctest::Approx(0.0));
  CHECK(evaluate(p, cd(0.0, 1.0)).real() == doctest::Approx(3.0));
  CHECK(evaluate(p, cd(0.0, 1.0)).imag() == doctest::Approx(1.0));
}

TEST_CASE("derivative and its monic normalization") {
  const RealPolynomial p = from_roots({1.0, 2.0, 3.0});
  check_coeffs(derivative(p), {11.0, -12.0, 3.0});
  check_coeffs(normalized_derivative(p).coefficients(),
               {11.0 / 3.0, -4.0, 1.0});
  CHECK_THROWS_AS(normalized_derivative(RealPolynomial({-1.0, 1.0})),
                  DegreeError);
}

TEST_CASE("taylor shift") {
  const RealPolynomial p({0.0, -1.0, 0.0, 1.0});  // x^3 - x
  check_coeffs(taylor_shift(p, -1.0).coefficients(), {0.0, 2.0, -3.0, 1.0});
  check_coeffs(taylor_shift(taylor_shift(p, 0.7), -0.7).coefficients(),
               p.coefficients(), 1e-12);
}

TEST_CASE("apply_d_lambda on x^2 - 1") {
  const RealPolynomial p({-1.0, 0.0, 1.0});
  check_coeffs(apply_d_lambda(p, 0.0).coefficients(), {-1.0, 0.0, 1.0});
  check_coeffs(apply_d_lambda(p, 1.0).coefficients(), {-2.0, 0.0, 1.0});
  check_coeffs(apply_d_lambda(p, 2.0).coefficients(), {-5.0, 0.0, 1.0});
  check_coeffs(apply_d_lambda(p, -1.0).coefficients(), {-2.0, 0.0, 1.0});
}

TEST_CASE("apply_d_lambda on x^3 - x") {
  const RealPolynomial p({0.0, -1.0, 0.0, 1.0});
  // D_lambda(x^3 - x) = x^3 - (1 + 3 lambda^2) x - 2 lambda^3
  for (double lam : {0.5, 1.0, -2.0}) {
    check_coeffs(apply_d_lambda(p, lam).coefficients(),
                 {-2.0 * lam * lam * lam, -(1.0 + 3.0 * lam * lam), 0.0, 1.0});
  }
}

TEST_CASE("apply_d_lambda preserves the zero mean") {
  const RealPolynomial p = from_roots({-3.0, 0.5, 1.0, 4.0});
  const double mean = -p.coefficients()[p.degree() - 1];
  for (double lam : {0.3, -7.0}) {
    const RealPolynomial q = apply_d_lambda(p, lam);
    CHECK(-q.coefficients()[q.degree() - 1] == doctest::Approx(mean));
  }
}

TEST_CASE("complex apply_d_lambda") {
  std::vector<cd> c{cd(-1.0, 0.0), cd(0.0, 0.0), cd(0.0, 0.0), cd(1.0, 0.0)};
  const ComplexPolynomial p(c);  // z^3 - 1
  const ComplexPolynomial q = apply_d_lambda(p, cd(0.1, 0.0));
  CHECK(q.coefficients()[0].real() == doctest::Approx(-1.002));
  CHECK(q.coefficients()[1].real() == doctest::Approx(-0.03));
  CHECK(std::abs(q.coefficients()[2]) == doctest::Approx(0.0));

  const ComplexPolynomial r = apply_d_lambda(from_roots({-1.0, 1.0}), cd(0.0, 1.0));
  // x^2 - lambda^2 - 1 with lambda = i
  CHECK(r.coefficients()[0].real() == doctest::Approx(0.0));
  CHECK(r.coefficients()[0].imag() == doctest::Approx(0.0));
}

TEST_CASE("derivative pencil") {
  const RealPolynomial p({-1.0, 0.0, 1.0});
  check_coeffs(derivative_pencil(p, -1.0).coefficients(), {-1.0, -2.0, 1.0});
  check_coeffs(derivative_pencil(p, 0.0).coefficients(), p.coefficients());
}

TEST_CASE("operator words compose left to right") {
  const RealPolynomial p({-1.0, 0.0, 1.0});
  OperatorWord w;
  w.factors.push_back(OperatorFactor::one_minus_lambda_d(1.0));
  check_coeffs(apply_operator_word(p, w).coefficients(), {-1.0, -2.0, 1.0});

  OperatorWord dd;
  dd.factors.push_back(OperatorFactor::d_lambda(1.0));
  dd.factors.push_back(OperatorFactor::d_lambda(-1.0));
  check_coeffs(apply_operator_word(p, dd).coefficients(), {-3.0, 0.0, 1.0});

  OperatorWord sh;
  sh.factors.push_back(OperatorFactor::shift(1.0));
  check_coeffs(apply_operator_word(p, sh).coefficients(), {0.0, 2.0, 1.0});
}

TEST_CASE("operator word real/complex parameter rules") {
  const RealPolynomial p({-1.0, 0.0, 1.0});
  OperatorWord w;
  w.factors.push_back(OperatorFactor::d_lambda(cd(0.0, 1.0)));
  CHECK_THROWS_AS(apply_operator_word(p, w), ParameterDomainError);
  CHECK_NOTHROW(apply_operator_word_promoted(p, w));

  OperatorWord bad;
  bad.factors.push_back(OperatorFactor::shift(cd(0.0, 1.0)));
  CHECK_THROWS_AS(apply_operator_word_promoted(p, bad), ParameterDomainError);

  const ComplexPolynomial pc = to_complex(p);
  CHECK_NOTHROW(apply_operator_word(pc, bad));
}

TEST_CASE("operator factors commute, being functions of d/dx") {
  const RealPolynomial p({-1.0, 0.0, 1.0});
  OperatorWord a, b;
  a.factors = {OperatorFactor::d_lambda(1.0), OperatorFactor::d_lambda(2.0)};
  b.factors = {OperatorFactor::d_lambda(2.0), OperatorFactor::d_lambda(1.0)};
  check_coeffs(apply_operator_word(p, a).coefficients(),
               apply_operator_word(p, b).coefficients());
}
