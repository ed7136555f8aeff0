#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "horder/errors.hpp"

namespace horder {

/// Largest supported degree. Root-finding conditioning degrades well before
/// this, so higher degrees are rejected rather than silently mishandled.
inline constexpr int kDegreeCap = 64;

namespace polyops {

// Low-level coefficient kernels. Coefficients are ascending by degree;
// callers own normalization.

template <typename Scalar, typename Arg>
auto eval(std::span<const Scalar> coeffs, Arg z) {
  using R = decltype(Scalar{} * Arg{});
  R acc{};
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * z + coeffs[i];
  return acc;
}

template <typename Scalar>
std::vector<Scalar> derive(std::span<const Scalar> coeffs) {
  std::vector<Scalar> out;
  out.reserve(coeffs.size() > 1 ? coeffs.size() - 1 : 1);
  for (std::size_t i = 1; i < coeffs.size(); ++i)
    out.push_back(coeffs[i] * static_cast<double>(i));
  if (out.empty()) out.push_back(Scalar{});
  return out;
}

// q(x) = p(x + a) by repeated synthetic division; stable and in-place.
template <typename Scalar, typename Arg>
std::vector<decltype(Scalar{} * Arg{})> taylor_shift(
    std::span<const Scalar> coeffs, Arg a) {
  using R = decltype(Scalar{} * Arg{});
  std::vector<R> c(coeffs.begin(), coeffs.end());
  const std::size_t n = c.size();
  for (std::size_t k = 0; k + 1 < n; ++k)
    for (std::size_t j = n - 1; j-- > k;) c[j] += a * c[j + 1];
  return c;
}

template <typename Scalar>
void axpy(std::vector<Scalar>& y, Scalar alpha, std::span<const Scalar> x) {
  if (y.size() < x.size()) y.resize(x.size(), Scalar{});
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const std::complex<double>& x) { return std::abs(x); }

}  // namespace polyops

/// Monic polynomial of degree >= 1 with coefficients ascending by degree.
/// Immutable after construction; all operations return new values.
template <typename Scalar>
class MonicPolynomial {
 public:
  /// Takes a full ascending coefficient sequence whose last entry must be 1.
  explicit MonicPolynomial(std::vector<Scalar> coeffs)
      : coeffs_(std::move(coeffs)) {
    if (coeffs_.size() < 2)
      throw DegreeError("monic polynomial needs degree >= 1");
    if (static_cast<int>(coeffs_.size()) - 1 > kDegreeCap)
      throw DegreeError("degree exceeds cap " + std::to_string(kDegreeCap));
    if (polyops::magnitude(coeffs_.back() - Scalar{1}) > 1e-12)
      throw ParameterDomainError("polynomial is not monic");
    coeffs_.back() = Scalar{1};
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Scalar>& coefficients() const { return coeffs_; }
  std::span<const Scalar> span() const { return coeffs_; }

  bool operator==(const MonicPolynomial&) const = default;

 private:
  std::vector<Scalar> coeffs_;
};

using RealPolynomial = MonicPolynomial<double>;
using ComplexPolynomial = MonicPolynomial<std::complex<double>>;

/// Monic polynomial with the given zero multiset, by incremental
/// multiplication of linear factors.
template <typename Scalar>
MonicPolynomial<Scalar> from_roots(std::span<const Scalar> roots) {
  if (roots.empty()) throw DegreeError("from_roots: empty root list");
  if (static_cast<int>(roots.size()) > kDegreeCap)
    throw DegreeError("from_roots: degree exceeds cap");
  std::vector<Scalar> c{Scalar{1}};
  for (const Scalar& r : roots) {
    c.push_back(Scalar{1});
    for (std::size_t j = c.size() - 1; j-- > 1;)
      c[j] = c[j - 1] - r * c[j];
    c[0] = -r * c[0];
  }
  return MonicPolynomial<Scalar>(std::move(c));
}

inline RealPolynomial from_roots(const std::vector<double>& roots) {
  return from_roots<double>(std::span<const double>(roots));
}
inline ComplexPolynomial from_roots(
    const std::vector<std::complex<double>>& roots) {
  return from_roots<std::complex<double>>(
      std::span<const std::complex<double>>(roots));
}
inline RealPolynomial from_roots(std::initializer_list<double> roots) {
  return from_roots(std::vector<double>(roots));
}

template <typename Scalar, typename Arg>
auto evaluate(const MonicPolynomial<Scalar>& p, Arg z) {
  return polyops::eval(p.span(), z);
}

/// Coefficientwise derivative; degree n-1 with leading coefficient n,
/// so the result is returned as a raw coefficient vector.
template <typename Scalar>
std::vector<Scalar> derivative(const MonicPolynomial<Scalar>& p) {
  return polyops::derive(p.span());
}

/// The monic polynomial (1/n) P' of degree n-1.
inline RealPolynomial normalized_derivative(const RealPolynomial& p) {
  if (p.degree() < 2)
    throw DegreeError("normalized_derivative: degree must be >= 2");
  std::vector<double> d = derivative(p);
  const double inv = 1.0 / p.degree();
  for (double& c : d) c *= inv;
  d.back() = 1.0;
  return RealPolynomial(std::move(d));
}

inline ComplexPolynomial normalized_derivative(const ComplexPolynomial& p) {
  if (p.degree() < 2)
    throw DegreeError("normalized_derivative: degree must be >= 2");
  std::vector<std::complex<double>> d = derivative(p);
  const double inv = 1.0 / p.degree();
  for (auto& c : d) c *= inv;
  d.back() = 1.0;
  return ComplexPolynomial(std::move(d));
}

/// q with q(x) = p(x + a); monic of the same degree.
template <typename Scalar>
MonicPolynomial<Scalar> taylor_shift(const MonicPolynomial<Scalar>& p,
                                     Scalar a) {
  auto c = polyops::taylor_shift(p.span(), a);
  c.back() = Scalar{1};
  return MonicPolynomial<Scalar>(std::move(c));
}

inline ComplexPolynomial to_complex(const RealPolynomial& p) {
  std::vector<std::complex<double>> c(p.coefficients().begin(),
                                      p.coefficients().end());
  return ComplexPolynomial(std::move(c));
}

/// D_lambda p  =  p(x+lambda) - lambda p'(x+lambda); monic of equal degree.
/// For real p and real lambda the mean of the zeros is preserved.
template <typename Scalar>
MonicPolynomial<Scalar> apply_d_lambda(const MonicPolynomial<Scalar>& p,
                                       Scalar lambda) {
  auto shifted = polyops::taylor_shift(p.span(), lambda);
  std::vector<Scalar> dp = derivative(p);
  auto dshift = polyops::taylor_shift(std::span<const Scalar>(dp), lambda);
  polyops::axpy(shifted, -lambda, std::span<const Scalar>(dshift));
  shifted.back() = Scalar{1};
  return MonicPolynomial<Scalar>(std::move(shifted));
}

inline ComplexPolynomial apply_d_lambda(const RealPolynomial& p,
                                        std::complex<double> lambda) {
  return apply_d_lambda(to_complex(p), lambda);
}

/// p + lambda p', monic because deg p' < deg p. This is (1 - mu d/dx) p
/// with mu = -lambda.
template <typename Scalar>
MonicPolynomial<Scalar> derivative_pencil(const MonicPolynomial<Scalar>& p,
                                          Scalar lambda) {
  std::vector<Scalar> c = p.coefficients();
  std::vector<Scalar> dp = derivative(p);
  polyops::axpy(c, lambda, std::span<const Scalar>(dp));
  c.back() = Scalar{1};
  return MonicPolynomial<Scalar>(std::move(c));
}

/// One factor of an operator word. Parameters are complex-capable; the
/// real application path rejects complex parameters where the real
/// semigroup requires real ones.
struct OperatorFactor {
  enum class Kind { Shift, OneMinusLambdaD, DLambda };
  Kind kind;
  std::complex<double> param;

  static OperatorFactor shift(std::complex<double> mu) {
    return {Kind::Shift, mu};
  }
  static OperatorFactor one_minus_lambda_d(std::complex<double> lambda) {
    return {Kind::OneMinusLambdaD, lambda};
  }
  static OperatorFactor d_lambda(std::complex<double> lambda) {
    return {Kind::DLambda, lambda};
  }
};

/// Ordered factor sequence; factors apply left to right.
struct OperatorWord {
  std::vector<OperatorFactor> factors;
};

namespace detail {
inline bool is_real_param(std::complex<double> z) { return z.imag() == 0.0; }
}  // namespace detail

template <typename Scalar>
MonicPolynomial<Scalar> apply_factor(const MonicPolynomial<Scalar>& p,
                                     const OperatorFactor& f, Scalar param) {
  switch (f.kind) {
    case OperatorFactor::Kind::Shift:
      return taylor_shift(p, param);
    case OperatorFactor::Kind::OneMinusLambdaD:
      return derivative_pencil(p, -param);
    case OperatorFactor::Kind::DLambda:
      return apply_d_lambda(p, param);
  }
  throw Error("unreachable factor kind");
}

inline ComplexPolynomial apply_operator_word(const ComplexPolynomial& p,
                                             const OperatorWord& w) {
  ComplexPolynomial q = p;
  for (const auto& f : w.factors)
    q = apply_factor<std::complex<double>>(q, f, f.param);
  return q;
}

/// Real path: every factor parameter must be real.
inline RealPolynomial apply_operator_word(const RealPolynomial& p,
                                          const OperatorWord& w) {
  RealPolynomial q = p;
  for (const auto& f : w.factors) {
    if (!detail::is_real_param(f.param))
      throw ParameterDomainError(
          "complex parameter in operator word applied to a real polynomial; "
          "use apply_operator_word_promoted");
    q = apply_factor<double>(q, f, f.param.real());
  }
  return q;
}

/// Real input promoted to complex output. Complex parameters are allowed
/// for DLambda factors only; a complex Shift or OneMinusLambdaD parameter
/// is a domain error for a real input.
inline ComplexPolynomial apply_operator_word_promoted(const RealPolynomial& p,
                                                      const OperatorWord& w) {
  for (const auto& f : w.factors) {
    if (f.kind != OperatorFactor::Kind::DLambda &&
        !detail::is_real_param(f.param))
      throw ParameterDomainError(
          "complex parameter allowed only in DLambda factors for real input");
  }
  return apply_operator_word(to_complex(p), w);
}

}  // namespace horder
