#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "eqloc/linear_form.hpp"
#include "eqloc/monomial.hpp"
#include "eqloc/rational.hpp"

namespace eqloc {

/// Exact sparse polynomial over Q in the torus characters t1..tN.
///
/// Terms are kept strictly descending in graded lexicographic order with no
/// zero coefficients, so structural equality is mathematical equality.
class MultiPoly {
 public:
  struct Term {
    Monomial mono;
    Rational coef;
  };

  MultiPoly() = default;
  explicit MultiPoly(std::size_t nvars);

  static MultiPoly constant(std::size_t nvars, const Rational& c);
  static MultiPoly variable(std::size_t nvars, std::size_t var);
  static MultiPoly monomial(std::size_t nvars, const Monomial& m, const Rational& c = 1);
  /// Combines duplicate monomials, drops zeros and sorts.
  static MultiPoly from_terms(std::size_t nvars, std::vector<Term> terms);
  /// Trusts the caller: terms already strictly descending and nonzero.
  static MultiPoly from_sorted_terms(std::size_t nvars, std::vector<Term> terms);

  std::size_t nvars() const noexcept { return nvars_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_.front().mono.is_one());
  }
  Rational constant_term() const;

  /// Total degree; -1 for the zero polynomial.
  int degree() const noexcept {
    return terms_.empty() ? -1 : static_cast<int>(terms_.front().mono.degree());
  }
  /// Lowest degree present; -1 for the zero polynomial.
  int min_degree() const noexcept {
    return terms_.empty() ? -1 : static_cast<int>(terms_.back().mono.degree());
  }
  bool is_homogeneous() const noexcept { return degree() == min_degree(); }

  Rational coefficient(const Monomial& m) const;

  /// Sum of the degree-d terms.
  MultiPoly homogeneous_component(unsigned d) const;
  /// Terms of degree <= max_degree.
  MultiPoly truncated(unsigned max_degree) const;

  /// Same polynomial viewed in a ring with more (or equally many) variables.
  MultiPoly extended(std::size_t nvars) const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o);
  MultiPoly& operator*=(const Rational& c);

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }

  MultiPoly pow(unsigned e) const;

  bool operator==(const MultiPoly& o) const;

 private:
  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

MultiPoly add(const MultiPoly& a, const MultiPoly& b);
MultiPoly mul(const MultiPoly& a, const MultiPoly& b);
MultiPoly homogeneous_component(const MultiPoly& p, unsigned d);

/// p times a linear form, computed by merging shifted copies of p.
MultiPoly mul_linear(const MultiPoly& p, const LinearForm& f);

/// Exact quotient q with q * f = p; throws NotDivisible otherwise.
MultiPoly exact_div_linear(const MultiPoly& p, const LinearForm& f);

/// Image of one variable under an affine substitution.
struct AffineImage {
  std::vector<Rational> coeffs;  // one per target variable
  Rational constant = 0;
};

/// Per-variable affine substitution t_i <- sum_j a_ij s_j + b_i.
struct AffineMap {
  std::size_t target_nvars = 0;
  std::vector<AffineImage> images;

  static AffineMap identity(std::size_t nvars);
  /// t_i <- s_{targets[i]}.
  static AffineMap renaming(std::span<const std::size_t> targets, std::size_t target_nvars);
};

MultiPoly substitute_linear(const MultiPoly& p, const AffineMap& map);

/// Monomial-level substitution t_i <- s_{targets[i]}; collisions multiply.
MultiPoly rename_variables(const MultiPoly& p, std::span<const std::size_t> targets,
                           std::size_t target_nvars);

MultiPoly partial_derivative(const MultiPoly& p, std::size_t var);

/// Product of the given forms as a polynomial (1 for an empty list).
MultiPoly product_of_forms(std::size_t nvars, std::span<const LinearForm> forms);

}  // namespace eqloc
