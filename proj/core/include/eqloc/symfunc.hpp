#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "eqloc/partition.hpp"
#include "eqloc/poly.hpp"

namespace eqloc {

/// Ordered set of ring variables (0-based), optionally read as -t.
struct Alphabet {
  std::vector<std::size_t> vars;
  bool negated = false;

  bool operator==(const Alphabet&) const = default;
};

/// Coefficients of a polynomial in products of Schur functions, one
/// partition per alphabet.
struct SchurTable {
  std::size_t nvars = 0;
  std::vector<Alphabet> alphabets;
  std::map<std::vector<Partition>, Rational> entries;

  Rational coefficient(const std::vector<Partition>& key) const;
  bool operator==(const SchurTable&) const = default;
};

/// S_I in the given variables of an nvars ring, via the bialternant
/// det(x_i^(I_j + k - j)) divided by the Vandermonde. With negate, S_I(-x).
MultiPoly schur(const Partition& I, std::span<const std::size_t> vars, std::size_t nvars,
                bool negate = false);

/// S_I(t1..tk) in a ring of k variables.
MultiPoly schur(const Partition& I, std::size_t k);

/// Throws NotSymmetric unless p is invariant under permutations of vars.
void require_symmetric(const MultiPoly& p, std::span<const std::size_t> vars);
bool is_symmetric(const MultiPoly& p, std::span<const std::size_t> vars);

/// Expansion in products S_{I1}(A1) * S_{I2}(A2) * ...; p must be symmetric
/// in each alphabet and involve no other variables.
SchurTable expand_schur_multi(const MultiPoly& p, std::vector<Alphabet> alphabets);

SchurTable expand_schur(const MultiPoly& p, std::span<const std::size_t> vars);

/// p = sum a_{I,J} S_I(-x) S_J(v).
SchurTable expand_two_alphabets(const MultiPoly& p, std::span<const std::size_t> xgroup,
                                std::span<const std::size_t> vgroup);

/// The polynomial sum of coef * product of Schur functions.
MultiPoly reconstruct(const SchurTable& table);

/// Degree of Grass_m(C^n) in the Plucker embedding: (m(n-m))! / prod of hooks.
Integer hook_degree(std::size_t m, std::size_t n);

}  // namespace eqloc
