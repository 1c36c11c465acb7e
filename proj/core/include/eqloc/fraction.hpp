#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "eqloc/linear_form.hpp"
#include "eqloc/poly.hpp"

namespace eqloc {

/// Denominator as a multiset of normalized linear forms.
using FormMultiset = std::map<LinearForm, unsigned>;

/// numerator / (sign * product of denominator forms).
///
/// Denominator forms are stored normalized (first nonzero coefficient
/// positive); the accumulated sign flips are kept separately.
class FractionTerm {
 public:
  FractionTerm() = default;
  FractionTerm(MultiPoly numerator, std::span<const LinearForm> denominator);

  const MultiPoly& numerator() const noexcept { return numerator_; }
  const FormMultiset& denominator() const noexcept { return denominator_; }
  int sign() const noexcept { return sign_; }
  std::size_t nvars() const noexcept { return numerator_.nvars(); }
  /// Number of linear factors in the denominator, with multiplicity.
  unsigned denominator_degree() const noexcept;

  /// e_num / e_den * poly with common factors of the two form lists removed.
  static FractionTerm ratio(MultiPoly poly, std::span<const LinearForm> numerator_forms,
                            std::span<const LinearForm> denominator_forms);

 private:
  MultiPoly numerator_;
  FormMultiset denominator_;
  int sign_ = 1;
};

struct SumOptions {
  unsigned workers = 1;
  /// Ring size used when the term list is empty.
  std::size_t nvars = 0;
};

/// Exact sum of fractions, required to be a polynomial.
///
/// Terms are combined pairwise in a balanced tree; after each merge the
/// numerator is tried against the factors of the common denominator and
/// every factor that divides exactly is cancelled. With a degree cap, each
/// homogeneous degree d <= cap is summed and certified separately and only
/// those degrees are returned.
///
/// Throws NotPolynomial when a denominator survives.
MultiPoly sum_fractions(std::span<const FractionTerm> terms,
                        std::optional<unsigned> degree_cap = std::nullopt,
                        const SumOptions& options = {});

/// Sum of fractions restricted to one output degree.
MultiPoly sum_fractions_in_degree(std::span<const FractionTerm> terms, unsigned degree,
                                  const SumOptions& options = {});

}  // namespace eqloc
