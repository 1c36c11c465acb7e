#pragma once

#include <span>
#include <vector>

#include "eqloc/linear_form.hpp"
#include "eqloc/poly.hpp"

namespace eqloc {

/// Polynomial in h with coefficients in Q[t]; index i holds the h^i coefficient.
using HPoly = std::vector<MultiPoly>;

/// sum a_i t^i + t^n for the cone over a projective variety with CSM
/// coefficients a_0..a_{n-1}, under scalar action with character t (one variable).
MultiPoly scalar_cone_class(std::span<const Rational> a);

/// b0 + prod w_i: the class at the vertex of a cone in a representation with weights w.
MultiPoly projective_cone_class(const MultiPoly& b0, std::span<const LinearForm> weights);

/// b with sum b_j h^j = sum a_i (h + t)^i, in the one-variable ring Q[t].
HPoly h_substitution(std::span<const Rational> a);

/// Elementary symmetric polynomials sigma_0..sigma_n of the weights.
std::vector<MultiPoly> elementary_symmetric(std::size_t nvars, std::span<const LinearForm> weights);

/// Reduction modulo sum_i sigma_i(w) h^(n-i); the result has h-degree < n.
HPoly h_reduce(const HPoly& p, std::span<const LinearForm> weights, std::size_t nvars);

/// sigma_n(w) * h^-1 = -sum_{i<n} sigma_i(w) h^(n-1-i), kept scaled since
/// sigma_n is not a unit in Q[t].
HPoly h_inverse_scaled(std::span<const LinearForm> weights, std::size_t nvars);

HPoly h_multiply(const HPoly& a, const HPoly& b, std::size_t nvars);

}  // namespace eqloc
