#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "eqloc/grass.hpp"
#include "eqloc/linear_form.hpp"
#include "eqloc/poly.hpp"

namespace eqloc {

/// prod(normal w) * prod(1 + tangent w): the local class of a smooth
/// invariant subvariety.
MultiPoly smooth_local_class(std::size_t nvars, std::span<const LinearForm> tangent,
                             std::span<const LinearForm> normal);

/// Top-degree part of a local class: the Euler class for members, else zero.
MultiPoly degree_zero_anchor(const GrassPoint& p, bool member);

struct RecoveryOptions {
  unsigned workers = 1;
  /// Degrees below this must vanish; a nonzero value there is reported.
  unsigned codim = 0;
};

struct Recovery {
  MultiPoly local;
  /// -sum over the other points in the top degree, before anchoring.
  MultiPoly raw_top;
};

/// Solves the localization identity sum_p c_p / e_p = global class for the
/// unknown c_{p0}: each degree below the dimension is
/// -sum_{p != p0} (e_{p0} / e_p * c_p) in that degree; the top degree is the anchor.
Recovery recover_local_class(const LocalClassTable& known, const GrassPoint& p0, bool member,
                             const RecoveryOptions& options = {});

/// Same computation with the fixed points split into groups: each group's
/// contribution is summed on its own before the groups are added.
Recovery recover_local_class_grouped(const LocalClassTable& known, const GrassPoint& p0,
                                     bool member,
                                     const std::vector<std::vector<GrassPoint>>& groups,
                                     const RecoveryOptions& options = {});

/// Unique solution of the GKM congruences c_{p0} = c_q mod label on every
/// edge at p0, per degree below the dimension; the top degree is the anchor.
/// Throws Inconsistent or Underdetermined.
MultiPoly gkm_solve(const GKMGraph& graph, const LocalClassTable& neighbors, const GrassPoint& p0,
                    bool member);

/// sum_p (top-degree part of c_p) / e_p.
Rational euler_characteristic(const LocalClassTable& table);

/// sum_p (c_p)_d / e_p for one degree d below the dimension; zero for a
/// consistent table. Throws NotPolynomial if the sum is not even a polynomial.
MultiPoly degreewise_sum(const LocalClassTable& table, unsigned degree, unsigned workers = 1);

/// All monomials of total degree d in n variables, grlex descending.
std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned d);

}  // namespace eqloc
