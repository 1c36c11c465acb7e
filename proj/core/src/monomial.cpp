#include "eqloc/monomial.hpp"

#include <string>

#include "eqloc/errors.hpp"

namespace eqloc {

namespace {
constexpr std::uint64_t kHighBits = 0x8080808080808080ULL;
}

Monomial Monomial::from_exponents(std::span<const unsigned> exps) {
  if (exps.size() > kMaxVars) {
    throw InvalidArgument("monomial has " + std::to_string(exps.size()) +
                          " variables; at most " + std::to_string(kMaxVars) +
                          " are supported");
  }
  Monomial m;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] > kMaxExponent) {
      throw InvalidArgument("exponent " + std::to_string(exps[i]) + " exceeds " +
                            std::to_string(kMaxExponent));
    }
    const std::uint64_t shifted = static_cast<std::uint64_t>(exps[i]) << (8 * (i & 7));
    if (i < 8) {
      m.lo_ |= shifted;
    } else {
      m.hi_ |= shifted;
    }
    m.degree_ += exps[i];
  }
  return m;
}

Monomial Monomial::variable(std::size_t var, unsigned power) {
  if (var >= kMaxVars) throw InvalidArgument("variable index out of range");
  return Monomial{}.with_exponent(var, power);
}

int Monomial::last_variable() const noexcept {
  for (int v = static_cast<int>(kMaxVars) - 1; v >= 0; --v) {
    if (exponent(static_cast<std::size_t>(v)) != 0) return v;
  }
  return -1;
}

std::vector<unsigned> Monomial::exponents(std::size_t nvars) const {
  std::vector<unsigned> out(nvars);
  for (std::size_t i = 0; i < nvars; ++i) out[i] = exponent(i);
  return out;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r;
  // Every stored byte is <= 127, so a byte-wise sum never carries into its
  // neighbour; a set high bit flags an exponent above the limit.
  r.lo_ = lo_ + other.lo_;
  r.hi_ = hi_ + other.hi_;
  if (((r.lo_ | r.hi_) & kHighBits) != 0) {
    throw InvalidArgument("monomial exponent overflow");
  }
  r.degree_ = degree_ + other.degree_;
  return r;
}

Monomial Monomial::with_exponent(std::size_t var, unsigned e) const {
  if (var >= kMaxVars) throw InvalidArgument("variable index out of range");
  if (e > kMaxExponent) throw InvalidArgument("exponent overflow");
  Monomial r = *this;
  const unsigned shift = 8 * (var & 7);
  std::uint64_t& word = var < 8 ? r.lo_ : r.hi_;
  const unsigned old = static_cast<unsigned>((word >> shift) & 0xffU);
  word = (word & ~(std::uint64_t{0xff} << shift)) | (static_cast<std::uint64_t>(e) << shift);
  r.degree_ = degree_ - old + e;
  return r;
}

}  // namespace eqloc
