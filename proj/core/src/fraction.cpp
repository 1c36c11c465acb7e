#include "eqloc/fraction.hpp"

#include <random>
#include <sstream>
#include <utility>

#include "eqloc/errors.hpp"
#include "eqloc/parallel.hpp"

namespace eqloc {

namespace {

__extension__ using u128 = unsigned __int128;

constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  const u128 x = static_cast<u128>(a) * b;
  std::uint64_t r = static_cast<std::uint64_t>(x & kPrime) + static_cast<std::uint64_t>(x >> 61);
  if (r >= kPrime) r -= kPrime;
  return r;
}

std::uint64_t addmod(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = a + b;
  if (r >= kPrime) r -= kPrime;
  return r;
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e != 0) {
    if ((e & 1U) != 0) r = mulmod(r, a);
    a = mulmod(a, a);
    e >>= 1U;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a) { return powmod(a, kPrime - 2); }

std::uint64_t reduce_int(std::int64_t v) {
  const auto m = static_cast<std::int64_t>(kPrime);
  std::int64_t r = v % m;
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

std::uint64_t reduce(const Rational& q) {
  const std::uint64_t num = mpz_fdiv_ui(q.get_num_mpz_t(), kPrime);
  const std::uint64_t den = mpz_fdiv_ui(q.get_den_mpz_t(), kPrime);
  return mulmod(num, invmod(den));
}

/// Value of p at a pseudo-random point of the hyperplane f = 0, mod a prime.
/// Zero whenever f divides p; nonzero otherwise except with tiny probability.
bool vanishes_on_hyperplane(const MultiPoly& p, const LinearForm& f) {
  const std::size_t n = f.nvars();
  const std::size_t lead = f.leading_variable();
  std::uint64_t seed = 0x2545f4914f6cdd1dULL;
  for (std::int64_t c : f.coeffs()) seed = seed * 1000003ULL + static_cast<std::uint64_t>(c);
  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> point(n, 0);
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == lead) continue;
    point[i] = rng() % kPrime;
    acc = addmod(acc, mulmod(reduce_int(f.coeff(i)), point[i]));
  }
  point[lead] = mulmod(kPrime - acc == kPrime ? 0 : kPrime - acc, invmod(reduce_int(f.coeff(lead))));

  unsigned max_exp = 0;
  for (const auto& t : p.terms())
    for (std::size_t i = 0; i < n; ++i) max_exp = std::max(max_exp, t.mono.exponent(i));
  std::vector<std::vector<std::uint64_t>> powers(n, std::vector<std::uint64_t>(max_exp + 1, 1));
  for (std::size_t i = 0; i < n; ++i)
    for (unsigned e = 1; e <= max_exp; ++e) powers[i][e] = mulmod(powers[i][e - 1], point[i]);

  std::uint64_t value = 0;
  for (const auto& t : p.terms()) {
    std::uint64_t v = reduce(t.coef);
    for (std::size_t i = 0; i < n && v != 0; ++i) {
      const unsigned e = t.mono.exponent(i);
      if (e != 0) v = mulmod(v, powers[i][e]);
    }
    value = addmod(value, v);
  }
  return value == 0;
}

struct Partial {
  MultiPoly num;
  FormMultiset den;
};

void cancel(Partial& x) {
  if (x.num.is_zero()) {
    x.den.clear();
    return;
  }
  for (auto it = x.den.begin(); it != x.den.end();) {
    while (it->second > 0 && vanishes_on_hyperplane(x.num, it->first)) {
      try {
        x.num = exact_div_linear(x.num, it->first);
      } catch (const NotDivisible&) {
        break;
      }
      --it->second;
    }
    it = it->second == 0 ? x.den.erase(it) : std::next(it);
  }
}

MultiPoly times_missing(const MultiPoly& p, const FormMultiset& have, const FormMultiset& want) {
  MultiPoly r = p;
  for (const auto& [form, mult] : want) {
    const auto it = have.find(form);
    const unsigned present = it == have.end() ? 0 : it->second;
    for (unsigned k = present; k < mult; ++k) r = mul_linear(r, form);
  }
  return r;
}

Partial merge(Partial a, Partial b) {
  if (a.num.is_zero()) return b;
  if (b.num.is_zero()) return a;
  FormMultiset common = a.den;
  for (const auto& [form, mult] : b.den) {
    auto& slot = common[form];
    slot = std::max(slot, mult);
  }
  Partial out;
  out.num = times_missing(a.num, a.den, common) + times_missing(b.num, b.den, common);
  out.den = std::move(common);
  cancel(out);
  return out;
}

Partial reduce_range(std::vector<Partial>& leaves, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return std::move(leaves[lo]);
  const std::size_t mid = lo + (hi - lo) / 2;
  return merge(reduce_range(leaves, lo, mid), reduce_range(leaves, mid, hi));
}

Partial reduce_all(std::vector<Partial> leaves, unsigned workers) {
  if (leaves.empty()) return {};
  const std::size_t chunks = std::min<std::size_t>(std::max(1U, workers), leaves.size());
  if (chunks <= 1) return reduce_range(leaves, 0, leaves.size());
  std::vector<Partial> partial(chunks);
  const std::size_t step = (leaves.size() + chunks - 1) / chunks;
  parallel_for(workers, chunks, [&](std::size_t c) {
    const std::size_t lo = c * step;
    const std::size_t hi = std::min(leaves.size(), lo + step);
    if (lo < hi) partial[c] = reduce_range(leaves, lo, hi);
  });
  std::vector<Partial> live;
  for (auto& p : partial)
    if (!p.num.is_zero() || !p.den.empty()) live.push_back(std::move(p));
  if (live.empty()) return {};
  return reduce_range(live, 0, live.size());
}

Partial leaf(const FractionTerm& t, const MultiPoly& numerator) {
  Partial p;
  p.num = t.sign() < 0 ? -numerator : numerator;
  p.den = t.denominator();
  cancel(p);
  return p;
}

[[noreturn]] void throw_not_polynomial(const Partial& r, std::optional<unsigned> degree) {
  std::ostringstream msg;
  msg << "sum of fractions is not a polynomial";
  if (degree) msg << " in degree " << *degree;
  msg << "; surviving denominator:";
  for (const auto& [form, mult] : r.den) msg << " (" << to_string(form) << ")^" << mult;
  throw NotPolynomial(msg.str());
}

MultiPoly finish(Partial r, std::size_t nvars, std::optional<unsigned> degree) {
  if (!r.den.empty() && !r.num.is_zero()) throw_not_polynomial(r, degree);
  if (r.num.is_zero()) return MultiPoly(nvars);
  return r.num;
}

std::size_t ring_size(std::span<const FractionTerm> terms, const SumOptions& options) {
  return terms.empty() ? options.nvars : terms.front().nvars();
}

}  // namespace

FractionTerm::FractionTerm(MultiPoly numerator, std::span<const LinearForm> denominator)
    : numerator_(std::move(numerator)) {
  for (const auto& f : denominator) {
    if (f.nvars() != numerator_.nvars())
      throw ArityMismatch("denominator form arity differs from numerator");
    auto [s, g] = f.normalized();
    sign_ *= s;
    ++denominator_[g];
  }
}

unsigned FractionTerm::denominator_degree() const noexcept {
  unsigned d = 0;
  for (const auto& [form, mult] : denominator_) d += mult;
  return d;
}

FractionTerm FractionTerm::ratio(MultiPoly poly, std::span<const LinearForm> numerator_forms,
                                 std::span<const LinearForm> denominator_forms) {
  FormMultiset top;
  int sign = 1;
  for (const auto& f : numerator_forms) {
    auto [s, g] = f.normalized();
    sign *= s;
    ++top[g];
  }
  FractionTerm out;
  out.numerator_ = std::move(poly);
  for (const auto& f : denominator_forms) {
    if (f.nvars() != out.numerator_.nvars())
      throw ArityMismatch("denominator form arity differs from numerator");
    auto [s, g] = f.normalized();
    sign *= s;
    auto it = top.find(g);
    if (it != top.end() && it->second > 0) {
      --it->second;
    } else {
      ++out.denominator_[g];
    }
  }
  for (const auto& [form, mult] : top)
    for (unsigned k = 0; k < mult; ++k) out.numerator_ = mul_linear(out.numerator_, form);
  out.sign_ = sign;
  return out;
}

MultiPoly sum_fractions_in_degree(std::span<const FractionTerm> terms, unsigned degree,
                                  const SumOptions& options) {
  const std::size_t nvars = ring_size(terms, options);
  std::vector<Partial> leaves;
  leaves.reserve(terms.size());
  for (const auto& t : terms) {
    if (t.nvars() != nvars) throw ArityMismatch("fraction terms live in different rings");
    const MultiPoly slice = t.numerator().homogeneous_component(degree + t.denominator_degree());
    if (slice.is_zero()) continue;
    leaves.push_back(leaf(t, slice));
  }
  return finish(reduce_all(std::move(leaves), options.workers), nvars, degree);
}

MultiPoly sum_fractions(std::span<const FractionTerm> terms, std::optional<unsigned> degree_cap,
                        const SumOptions& options) {
  const std::size_t nvars = ring_size(terms, options);
  if (degree_cap) {
    const unsigned cap = *degree_cap;
    std::vector<MultiPoly> slices(cap + 1);
    SumOptions inner = options;
    inner.workers = 1;
    inner.nvars = nvars;
    parallel_for(options.workers, cap + 1, [&](std::size_t d) {
      slices[d] = sum_fractions_in_degree(terms, static_cast<unsigned>(d), inner);
    });
    MultiPoly total(nvars);
    for (const auto& s : slices) total += s;
    return total;
  }
  std::vector<Partial> leaves;
  leaves.reserve(terms.size());
  for (const auto& t : terms) {
    if (t.nvars() != nvars) throw ArityMismatch("fraction terms live in different rings");
    if (t.numerator().is_zero()) continue;
    leaves.push_back(leaf(t, t.numerator()));
  }
  return finish(reduce_all(std::move(leaves), options.workers), nvars, std::nullopt);
}

}  // namespace eqloc
