#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace eqloc {

class MultiPoly;

/// Nonzero integer linear form sum c_i t_i in a ring with N variables.
class LinearForm {
 public:
  LinearForm() = default;
  /// Throws InvalidArgument when every coefficient is zero.
  explicit LinearForm(std::vector<std::int64_t> coeffs);

  /// t_plus - t_minus (0-based variable indices).
  static LinearForm difference(std::size_t nvars, std::size_t plus, std::size_t minus);
  static LinearForm variable(std::size_t nvars, std::size_t var);

  std::size_t nvars() const noexcept { return coeffs_.size(); }
  std::int64_t coeff(std::size_t i) const { return coeffs_.at(i); }
  const std::vector<std::int64_t>& coeffs() const noexcept { return coeffs_; }

  /// Highest variable index with a nonzero coefficient.
  std::size_t leading_variable() const;

  /// Sign and representative whose first nonzero coefficient is positive.
  std::pair<int, LinearForm> normalized() const;
  bool is_normalized() const;

  LinearForm operator-() const;
  LinearForm operator+(const LinearForm& o) const;
  LinearForm operator-(const LinearForm& o) const;

  MultiPoly to_poly() const;

  /// Sum of coefficients; zero exactly for forms in the difference lattice.
  std::int64_t coefficient_sum() const;

  auto operator<=>(const LinearForm&) const = default;

 private:
  std::vector<std::int64_t> coeffs_;
};

std::string to_string(const LinearForm& f, const std::string& prefix = "t");

}  // namespace eqloc
