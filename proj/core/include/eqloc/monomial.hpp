#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace eqloc {

/// Maximum number of variables a ring can carry.
inline constexpr std::size_t kMaxVars = 16;
/// Maximum exponent of a single variable.
inline constexpr unsigned kMaxExponent = 127;

/// Exponent vector packed one byte per variable.
///
/// Variable i lives in byte i of the 128-bit pair (lo holds 0..7, hi holds
/// 8..15), so comparing (degree, hi, lo) as unsigned integers is graded
/// lexicographic order with t1 < t2 < ... < t16.
class Monomial {
 public:
  Monomial() = default;

  static Monomial from_exponents(std::span<const unsigned> exps);
  static Monomial variable(std::size_t var, unsigned power = 1);

  unsigned exponent(std::size_t var) const noexcept {
    const std::uint64_t word = var < 8 ? lo_ : hi_;
    return static_cast<unsigned>((word >> (8 * (var & 7))) & 0xffU);
  }
  unsigned degree() const noexcept { return degree_; }
  bool is_one() const noexcept { return degree_ == 0; }

  /// Highest variable index with a nonzero exponent, or -1 for the unit.
  int last_variable() const noexcept;

  std::vector<unsigned> exponents(std::size_t nvars) const;

  /// Product; throws InvalidArgument on exponent overflow.
  Monomial operator*(const Monomial& other) const;
  Monomial& operator*=(const Monomial& other) { return *this = *this * other; }

  /// Copy with the exponent of `var` replaced.
  Monomial with_exponent(std::size_t var, unsigned e) const;

  bool operator==(const Monomial& o) const noexcept {
    return lo_ == o.lo_ && hi_ == o.hi_;
  }

  std::uint64_t lo() const noexcept { return lo_; }
  std::uint64_t hi() const noexcept { return hi_; }

  std::size_t hash() const noexcept {
    std::uint64_t h = lo_ * 0x9e3779b97f4a7c15ULL;
    h ^= (hi_ + 0x7f4a7c159e3779b9ULL + (h << 6) + (h >> 2));
    h ^= h >> 31;
    return static_cast<std::size_t>(h);
  }

 private:
  std::uint64_t lo_ = 0;
  std::uint64_t hi_ = 0;
  unsigned degree_ = 0;
};

/// Graded lexicographic comparison (t1 < t2 < ...).
inline bool grlex_less(const Monomial& a, const Monomial& b) noexcept {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  if (a.hi() != b.hi()) return a.hi() < b.hi();
  return a.lo() < b.lo();
}

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept { return m.hash(); }
};

}  // namespace eqloc
