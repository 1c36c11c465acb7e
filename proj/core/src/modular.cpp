#include "eqloc/modular.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <random>
#include <unordered_map>

#include "eqloc/errors.hpp"
#include "eqloc/parallel.hpp"

namespace eqloc {

namespace {

__extension__ using u128 = unsigned __int128;

constexpr std::array<std::uint64_t, 12> kPrimes = {
    0x3fffffffffffffc7ULL, 0x3fffffffffffffa9ULL, 0x3fffffffffffff8bULL, 0x3fffffffffffff71ULL,
    0x3fffffffffffff67ULL, 0x3fffffffffffff59ULL, 0x3fffffffffffff55ULL, 0x3fffffffffffff3dULL,
    0x3fffffffffffff35ULL, 0x3ffffffffffffeefULL, 0x3ffffffffffffee1ULL, 0x3ffffffffffffec3ULL,
};

std::uint64_t uint_mod(const Integer& z, std::uint64_t p) {
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);
  return r.get_ui();
}

Integer from_u64(std::uint64_t v) {
  Integer z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof v, 0, 0, &v);
  return z;
}

/// All exponent vectors in nu variables with total degree <= D and their
/// neighbours one step up in each coordinate.
struct LowerSet {
  std::size_t nu = 0;
  std::vector<std::uint8_t> exps;     // size() * nu
  std::vector<std::int32_t> up;       // size() * nu, -1 when leaving the set
  std::vector<std::size_t> degree;

  std::size_t size() const { return degree.size(); }
  std::uint8_t exp(std::size_t idx, std::size_t i) const { return exps[idx * nu + i]; }

  template <class Index, class Key>
  void generate(std::size_t i, unsigned remaining, std::vector<std::uint8_t>& cur, Index& index,
                const Key& key) {
    if (i == nu) {
      index.emplace(key(cur.data()), static_cast<std::int32_t>(degree.size()));
      exps.insert(exps.end(), cur.begin(), cur.end());
      std::size_t s = 0;
      for (auto c : cur) s += c;
      degree.push_back(s);
      return;
    }
    for (unsigned a = 0; a <= remaining; ++a) {
      cur[i] = static_cast<std::uint8_t>(a);
      generate(i + 1, remaining - a, cur, index, key);
    }
    cur[i] = 0;
  }

  LowerSet(std::size_t nvars, unsigned D) : nu(nvars) {
    std::vector<std::uint8_t> cur(nu, 0);
    std::unordered_map<Monomial, std::int32_t, MonomialHash> index;
    auto key = [&](const std::uint8_t* e) {
      std::vector<unsigned> v(e, e + nu);
      return Monomial::from_exponents(v);
    };
    generate(0, D, cur, index, key);
    up.assign(size() * nu, -1);
    std::vector<std::uint8_t> e(nu);
    for (std::size_t idx = 0; idx < size(); ++idx) {
      if (degree[idx] >= D) continue;
      for (std::size_t i = 0; i < nu; ++i) {
        std::copy_n(&exps[idx * nu], nu, e.begin());
        ++e[i];
        up[idx * nu + i] = index.at(key(e.data()));
      }
    }
  }
};

struct Grid {
  // nodes[i][j]: value of u_i at grid level j (Montgomery form)
  std::vector<std::vector<std::uint64_t>> nodes;
};

Grid make_grid(const ModField& F, std::size_t nu, unsigned D, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> dist(1, F.prime() - 1);
  Grid g;
  g.nodes.assign(nu, std::vector<std::uint64_t>(D + 1));
  for (auto& row : g.nodes)
    for (auto& x : row) x = F.from_uint(dist(rng));
  return g;
}

/// Newton divided differences followed by conversion to monomial
/// coefficients, one coordinate at a time along the lines of the lower set.
bool interpolate_in_place(const ModField& F, const LowerSet& L, const Grid& g, unsigned D,
                          std::vector<std::uint64_t>& c) {
  const std::size_t nu = L.nu;
  std::vector<std::size_t> line;
  std::vector<std::uint64_t> vals;
  // inv_diff[j][k] = 1 / (x_j - x_(j-k)) for the current coordinate.
  std::vector<std::vector<std::uint64_t>> inv_diff(D + 1, std::vector<std::uint64_t>(D + 1, 0));
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t i = 0; i < nu; ++i) {
      const auto& x = g.nodes[i];
      if (pass == 0) {
        for (unsigned j = 1; j <= D; ++j)
          for (unsigned k = 1; k <= j; ++k) {
            const std::uint64_t d = F.sub(x[j], x[j - k]);
            if (d == 0) return false;
            inv_diff[j][k] = F.inv(d);
          }
      }
      for (std::size_t s = 0; s < L.size(); ++s) {
        if (L.exp(s, i) != 0) continue;
        line.clear();
        for (std::int32_t idx = static_cast<std::int32_t>(s); idx >= 0;
             idx = L.up[static_cast<std::size_t>(idx) * nu + i])
          line.push_back(static_cast<std::size_t>(idx));
        const std::size_t m = line.size() - 1;
        if (m == 0) continue;
        vals.resize(line.size());
        for (std::size_t j = 0; j <= m; ++j) vals[j] = c[line[j]];
        if (pass == 0) {
          for (std::size_t k = 1; k <= m; ++k)
            for (std::size_t j = m; j >= k; --j)
              vals[j] = F.mul(F.sub(vals[j], vals[j - 1]), inv_diff[j][k]);
        } else {
          for (std::size_t k = m; k-- > 0;)
            for (std::size_t j = k; j < m; ++j) vals[j] = F.sub(vals[j], F.mul(x[k], vals[j + 1]));
        }
        for (std::size_t j = 0; j <= m; ++j) c[line[j]] = vals[j];
      }
    }
  }
  return true;
}

/// Coefficients in u mod p, or nothing when the grid hits a degenerate point.
std::optional<std::vector<std::uint64_t>> coefficients_mod(const ModField& F, const TreeBasis& tree,
                                                           const LowerSet& L, unsigned D,
                                                           const ModEvaluator& eval,
                                                           std::uint64_t seed, unsigned workers) {
  const std::size_t N = tree.nvertices();
  const std::size_t nu = L.nu;
  const Grid g = make_grid(F, nu, D, seed);
  std::vector<std::uint64_t> c(L.size());
  const std::size_t chunk = 256;
  const std::size_t nchunks = (L.size() + chunk - 1) / chunk;
  std::vector<char> degenerate(nchunks, 0);
  parallel_for(workers, nchunks, [&](std::size_t ci) {
    std::vector<std::uint64_t> t(N), sorted(N);
    const std::size_t end = std::min(L.size(), (ci + 1) * chunk);
    for (std::size_t idx = ci * chunk; idx < end; ++idx) {
      for (std::size_t v = 0; v < N; ++v) {
        const auto& path = tree.path(v + 1);
        std::uint64_t s = 0;
        for (std::size_t e = 0; e < nu; ++e) {
          if (path[e] == 0) continue;
          const std::uint64_t u = g.nodes[e][L.exp(idx, e)];
          s = path[e] > 0 ? F.add(s, u) : F.sub(s, u);
        }
        t[v] = s;
      }
      sorted = t;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        degenerate[ci] = 1;
        return;
      }
      c[idx] = eval(F, t);
    }
  });
  if (std::find(degenerate.begin(), degenerate.end(), 1) != degenerate.end()) return std::nullopt;
  if (!interpolate_in_place(F, L, g, D, c)) return std::nullopt;
  for (auto& v : c) v = F.to_uint(v);
  return c;
}

/// prod over edges of (t_head - t_tail)^a as (monomial, coefficient) pairs.
using Expansion = std::vector<std::pair<Monomial, std::int64_t>>;

Expansion edge_power(const TreeEdge& e, unsigned a) {
  Expansion out;
  for (unsigned j = 0; j <= a; ++j) {
    // C(a,j) t_head^j (-t_tail)^(a-j)
    std::int64_t b = 1;
    for (unsigned i = 0; i < j; ++i) b = b * (a - i) / (i + 1);
    if ((a - j) % 2 == 1) b = -b;
    Monomial m = Monomial::variable(e.head - 1, j) * Monomial::variable(e.tail - 1, a - j);
    out.emplace_back(m, b);
  }
  return out;
}

MultiPoly to_t_coordinates(const TreeBasis& tree, const LowerSet& L, unsigned D,
                           const std::vector<Integer>& coef) {
  const std::size_t nu = L.nu;
  std::vector<std::vector<Expansion>> powers(nu);
  for (std::size_t e = 0; e < nu; ++e)
    for (unsigned a = 0; a <= D; ++a) powers[e].push_back(edge_power(tree.edges()[e], a));
  std::unordered_map<Monomial, Integer, MonomialHash> acc;
  Expansion cur, next;
  for (std::size_t idx = 0; idx < L.size(); ++idx) {
    if (sgn(coef[idx]) == 0) continue;
    cur.assign(1, {Monomial(), 1});
    for (std::size_t e = 0; e < nu; ++e) {
      const unsigned a = L.exp(idx, e);
      if (a == 0) continue;
      next.clear();
      for (const auto& [m1, c1] : cur)
        for (const auto& [m2, c2] : powers[e][a]) next.emplace_back(m1 * m2, c1 * c2);
      std::swap(cur, next);
    }
    for (const auto& [m, c] : cur) {
      Integer& slot = acc[m];
      if (c > 0)
        mpz_addmul_ui(slot.get_mpz_t(), coef[idx].get_mpz_t(), static_cast<unsigned long>(c));
      else
        mpz_submul_ui(slot.get_mpz_t(), coef[idx].get_mpz_t(), static_cast<unsigned long>(-c));
    }
  }
  std::vector<MultiPoly::Term> terms;
  terms.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (sgn(c) != 0) terms.push_back({m, Rational(c)});
  return MultiPoly::from_terms(tree.nvertices(), std::move(terms));
}

}  // namespace

ModField::ModField(std::uint64_t p) : p_(p) {
  if (p < 3 || p % 2 == 0 || p >= (1ULL << 62)) throw InvalidArgument("modulus must be an odd prime below 2^62");
  std::uint64_t inv = 1;
  for (int i = 0; i < 6; ++i) inv *= 2 - p * inv;
  pinv_ = ~inv + 1;
  const std::uint64_t r = static_cast<std::uint64_t>((static_cast<u128>(1) << 64) % p);
  r2_ = static_cast<std::uint64_t>(static_cast<u128>(r) * r % p);
  one_ = r;
}

std::uint64_t ModField::mul(std::uint64_t a, std::uint64_t b) const noexcept {
  const u128 t = static_cast<u128>(a) * b;
  const std::uint64_t m = static_cast<std::uint64_t>(t) * pinv_;
  const u128 u = t + static_cast<u128>(m) * p_;
  const std::uint64_t r = static_cast<std::uint64_t>(u >> 64);
  return r >= p_ ? r - p_ : r;
}

std::uint64_t ModField::from_uint(std::uint64_t a) const noexcept { return mul(a % p_, r2_); }

std::uint64_t ModField::from_int(std::int64_t a) const noexcept {
  if (a >= 0) return from_uint(static_cast<std::uint64_t>(a));
  return neg(from_uint(static_cast<std::uint64_t>(-(a + 1)) + 1));
}

std::uint64_t ModField::from_rational(const Rational& q) const {
  const std::uint64_t num = from_uint(uint_mod(q.get_num(), p_));
  const std::uint64_t den = from_uint(uint_mod(q.get_den(), p_));
  return mul(num, inv(den));
}

std::uint64_t ModField::pow(std::uint64_t a, std::uint64_t e) const noexcept {
  std::uint64_t r = one_;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t ModField::inv(std::uint64_t a) const {
  if (a == 0) throw InvalidArgument("zero has no inverse");
  return pow(a, p_ - 2);
}

std::span<const std::uint64_t> modular_primes() { return kPrimes; }

Interpolation interpolate_invariant(const TreeBasis& tree, unsigned max_degree,
                                    const ModEvaluator& eval, const InterpolationOptions& options) {
  const std::size_t N = tree.nvertices();
  if (N < 2) throw InvalidArgument("interpolation needs at least two variables");
  if (max_degree > kMaxExponent) throw InvalidArgument("degree too large");
  const LowerSet L(N - 1, max_degree);

  std::vector<Integer> X(L.size());
  Integer M = 1;
  std::size_t confirmed = 0;
  std::size_t used = 0;
  std::uint64_t seed = options.seed;
  for (std::uint64_t p : kPrimes) {
    const ModField F(p);
    std::optional<std::vector<std::uint64_t>> c;
    for (int attempt = 0; attempt < 4 && !c; ++attempt)
      c = coefficients_mod(F, tree, L, max_degree, eval, seed++, options.workers);
    if (!c) throw MathError("could not find a nondegenerate evaluation grid");
    ++used;
    if (used == 1) {
      for (std::size_t i = 0; i < L.size(); ++i) {
        X[i] = from_u64((*c)[i]);
        if ((*c)[i] > p / 2) X[i] -= from_u64(p);
      }
      M = from_u64(p);
      continue;
    }
    bool agree = true;
    for (std::size_t i = 0; i < L.size() && agree; ++i) agree = uint_mod(X[i], p) == (*c)[i];
    if (agree) {
      if (++confirmed >= options.confirmations) break;
      continue;
    }
    confirmed = 0;
    // X <- X + M * ((c - X) / M mod p), taken in the symmetric range.
    const Integer P = from_u64(p);
    const std::uint64_t minv = F.to_uint(F.inv(F.from_uint(uint_mod(M, p))));
    const Integer Minv = from_u64(minv);
    const Integer MP = M * P;
    const Integer half = MP / 2;
    for (std::size_t i = 0; i < L.size(); ++i) {
      Integer d = from_u64((*c)[i]) - X[i];
      d *= Minv;
      mpz_fdiv_r(d.get_mpz_t(), d.get_mpz_t(), P.get_mpz_t());
      X[i] += M * d;
      if (X[i] > half) X[i] -= MP;
    }
    M = MP;
  }
  if (confirmed < options.confirmations)
    throw MathError("modular reconstruction did not stabilise");

  Interpolation out;
  out.primes = used;
  std::vector<MultiPoly::Term> uterms;
  for (std::size_t i = 0; i < L.size(); ++i) {
    if (sgn(X[i]) == 0) continue;
    std::vector<unsigned> e(L.exps.begin() + static_cast<std::ptrdiff_t>(i * L.nu),
                            L.exps.begin() + static_cast<std::ptrdiff_t>((i + 1) * L.nu));
    uterms.push_back({Monomial::from_exponents(e), Rational(X[i])});
  }
  out.in_u = MultiPoly::from_terms(N - 1, std::move(uterms));
  out.in_t = to_t_coordinates(tree, L, max_degree, X);
  return out;
}

}  // namespace eqloc
