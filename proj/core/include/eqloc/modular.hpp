#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "eqloc/poly.hpp"
#include "eqloc/positivity.hpp"

namespace eqloc {

/// Z/p for an odd prime p < 2^62. Elements are kept in Montgomery form;
/// use from_int/to_uint at the boundary.
class ModField {
 public:
  explicit ModField(std::uint64_t p);

  std::uint64_t prime() const noexcept { return p_; }
  std::uint64_t one() const noexcept { return one_; }

  std::uint64_t from_int(std::int64_t a) const noexcept;
  std::uint64_t from_uint(std::uint64_t a) const noexcept;
  /// Throws InvalidArgument when the denominator vanishes mod p.
  std::uint64_t from_rational(const Rational& q) const;
  /// Canonical residue in [0, p).
  std::uint64_t to_uint(std::uint64_t a) const noexcept { return mul(a, 1); }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const noexcept {
    const std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const noexcept {
    return a >= b ? a - b : a + p_ - b;
  }
  std::uint64_t neg(std::uint64_t a) const noexcept { return a == 0 ? 0 : p_ - a; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const noexcept;
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const noexcept;
  /// Throws InvalidArgument for zero.
  std::uint64_t inv(std::uint64_t a) const;

 private:
  std::uint64_t p_;
  std::uint64_t pinv_;  // -p^-1 mod 2^64
  std::uint64_t r2_;    // 2^128 mod p
  std::uint64_t one_;
};

/// Primes just below 2^62 used for evaluation and reconstruction.
std::span<const std::uint64_t> modular_primes();

/// Value mod p of a polynomial at the characters t (Montgomery form, one per variable).
using ModEvaluator =
    std::function<std::uint64_t(const ModField&, std::span<const std::uint64_t>)>;

struct InterpolationOptions {
  unsigned workers = 1;
  std::uint64_t seed = 0x5eed;
  /// Primes beyond the first must each confirm the reconstruction.
  std::size_t confirmations = 1;
};

struct Interpolation {
  /// The polynomial in t1..tN.
  MultiPoly in_t;
  /// The same polynomial in the tree coordinates u1..u(N-1).
  MultiPoly in_u;
  std::size_t primes = 0;
};

/// Recovers a translation-invariant polynomial with integer coefficients and
/// degree <= max_degree from black-box values mod primes. Points form a
/// Newton grid in the tree coordinates with t1 = 0; coefficients are lifted by
/// CRT until `confirmations` further primes agree. Throws MathError if the
/// supply of primes runs out.
Interpolation interpolate_invariant(const TreeBasis& tree, unsigned max_degree,
                                    const ModEvaluator& eval,
                                    const InterpolationOptions& options = {});

}  // namespace eqloc
