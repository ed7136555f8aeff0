#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "horder/contractions.hpp"
#include "horder/experiments.hpp"
#include "horder/order.hpp"
#include "horder/polynomials.hpp"
#include "horder/rootfinding.hpp"

namespace horder::io {

using ordered_json = nlohmann::ordered_json;

// Scalars: reals as JSON numbers, complex values as [re, im].
ordered_json complex_to_json(const std::complex<double>& z);
std::complex<double> complex_from_json(const ordered_json& j);

// Polynomial objects carry exactly one of "coeffs" (ascending, monic)
// or "roots". Roots may be real or [re, im] pairs.
ComplexPolynomial parse_polynomial(const ordered_json& j);
RealPolynomial parse_real_polynomial(const ordered_json& j);
ordered_json polynomial_to_json(const RealPolynomial& p);
ordered_json polynomial_to_json(const ComplexPolynomial& p);

std::vector<double> parse_real_vector(const ordered_json& j);
ordered_json real_vector_to_json(const std::vector<double>& v);

/// Bare array of [re, im] pairs.
ordered_json point_set_to_json(const PointSet2D& s);

DoublyStochasticMatrix parse_matrix(const ordered_json& j);
ordered_json matrix_to_json(const DoublyStochasticMatrix& a);

ContractionChain parse_chain(const ordered_json& j);
ordered_json chain_to_json(const ContractionChain& chain);

ordered_json verdict_to_json(const ComparisonVerdict& v,
                             bool include_witness = true);
ordered_json birkhoff_to_json(const std::vector<BirkhoffTerm>& terms);

ordered_json report_to_json(const SuiteReport& r);

ordered_json load_json_file(const std::string& path);
ordered_json parse_json_text(const std::string& text);

/// CSV for a lambda sweep: columns lambda, x_1..x_n, max, min, spread,
/// top_1..top_{n-1} (descending partial sums).
void write_sweep_csv(std::ostream& out, const Trajectory& t);

}  // namespace horder::io
