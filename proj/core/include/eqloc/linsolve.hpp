#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "eqloc/rational.hpp"

namespace eqloc {

/// Exact sparse linear system over Q, reduced incrementally to echelon form.
class SparseLinearSystem {
 public:
  using Row = std::map<std::size_t, Rational>;

  explicit SparseLinearSystem(std::size_t ncols) : ncols_(ncols) {}

  /// Adds sum row[c] x_c = rhs. Throws Inconsistent when the equation
  /// contradicts the ones already added.
  void add_equation(Row row, Rational rhs);

  std::size_t ncols() const noexcept { return ncols_; }
  std::size_t rank() const noexcept { return pivots_.size(); }

  /// The unique solution; throws Underdetermined when the rank is short.
  std::vector<Rational> solve() const;

 private:
  struct Pivot {
    Row row;  // leading coefficient one at the pivot column
    Rational rhs;
  };
  std::size_t ncols_;
  std::map<std::size_t, Pivot> pivots_;
};

}  // namespace eqloc
