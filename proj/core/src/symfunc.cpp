#include "eqloc/symfunc.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <unordered_map>

#include "eqloc/errors.hpp"

namespace eqloc {

namespace {

struct SignedPerm {
  std::vector<std::size_t> perm;
  int sign;
};

std::vector<SignedPerm> permutations(std::size_t k) {
  std::vector<std::size_t> p(k);
  std::iota(p.begin(), p.end(), 0);
  std::vector<SignedPerm> out;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j)
        if (p[i] > p[j]) ++inversions;
    out.push_back({p, inversions % 2 == 0 ? 1 : -1});
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

MultiPoly compute_schur(const Partition& I, std::size_t k) {
  if (I.length() > k) throw InvalidArgument("partition " + to_string(I) + " is too long for " +
                                            std::to_string(k) + " variables");
  if (k == 0) return MultiPoly::constant(0, 1);
  std::vector<MultiPoly::Term> terms;
  std::vector<unsigned> exps(k);
  for (const auto& [perm, sign] : permutations(k)) {
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t j = perm[i];
      exps[i] = I.part(j) + static_cast<unsigned>(k - 1 - j);
    }
    terms.push_back({Monomial::from_exponents(exps), Rational(sign)});
  }
  MultiPoly a = MultiPoly::from_terms(k, std::move(terms));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) a = exact_div_linear(a, LinearForm::difference(k, i, j));
  return a;
}

bool strictly_decreasing(const Monomial& m, const Alphabet& a) {
  for (std::size_t i = 1; i < a.vars.size(); ++i)
    if (m.exponent(a.vars[i - 1]) <= m.exponent(a.vars[i])) return false;
  return true;
}

void check_alphabets(std::size_t nvars, const std::vector<Alphabet>& alphabets) {
  std::vector<bool> seen(nvars, false);
  for (const auto& a : alphabets) {
    for (auto v : a.vars) {
      if (v >= nvars) throw InvalidArgument("alphabet variable out of range");
      if (seen[v]) throw InvalidArgument("alphabets must be disjoint");
      seen[v] = true;
    }
  }
}

}  // namespace

Rational SchurTable::coefficient(const std::vector<Partition>& key) const {
  const auto it = entries.find(key);
  return it == entries.end() ? Rational(0) : it->second;
}

MultiPoly schur(const Partition& I, std::size_t k) {
  static std::mutex mutex;
  static std::map<std::pair<Partition, std::size_t>, MultiPoly> cache;
  const auto key = std::make_pair(I, k);
  {
    std::lock_guard lock(mutex);
    const auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  MultiPoly s = compute_schur(I, k);
  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(s)).first->second;
}

MultiPoly schur(const Partition& I, std::span<const std::size_t> vars, std::size_t nvars,
                bool negate) {
  for (auto v : vars)
    if (v >= nvars) throw InvalidArgument("schur: variable out of range");
  MultiPoly s = rename_variables(schur(I, vars.size()), vars, nvars);
  if (negate && I.weight() % 2 == 1) s = -s;
  return s;
}

bool is_symmetric(const MultiPoly& p, std::span<const std::size_t> vars) {
  std::vector<std::size_t> targets(p.nvars());
  for (std::size_t i = 1; i < vars.size(); ++i) {
    std::iota(targets.begin(), targets.end(), 0);
    std::swap(targets[vars[i - 1]], targets[vars[i]]);
    if (rename_variables(p, targets, p.nvars()) != p) return false;
  }
  return true;
}

void require_symmetric(const MultiPoly& p, std::span<const std::size_t> vars) {
  for (auto v : vars)
    if (v >= p.nvars()) throw InvalidArgument("symmetry check: variable out of range");
  if (!is_symmetric(p, vars)) throw NotSymmetric("polynomial is not symmetric in the given variables");
}

SchurTable expand_schur_multi(const MultiPoly& p, std::vector<Alphabet> alphabets) {
  const std::size_t nvars = p.nvars();
  check_alphabets(nvars, alphabets);
  for (const auto& a : alphabets) require_symmetric(p, a.vars);

  // q(x) = p(-x) on negated alphabets, so that q = sum a_I prod S_I(x).
  std::vector<bool> owned(nvars, false);
  std::vector<bool> flip(nvars, false);
  for (const auto& a : alphabets)
    for (auto v : a.vars) {
      owned[v] = true;
      flip[v] = a.negated;
    }
  std::vector<MultiPoly::Term> qterms;
  qterms.reserve(p.size());
  for (const auto& t : p.terms()) {
    unsigned parity = 0;
    for (std::size_t v = 0; v < nvars; ++v) {
      const unsigned e = t.mono.exponent(v);
      if (e != 0 && !owned[v]) throw InvalidArgument("polynomial involves a variable outside the alphabets");
      if (flip[v]) parity += e;
    }
    qterms.push_back({t.mono, parity % 2 == 0 ? t.coef : Rational(-t.coef)});
  }

  // Coefficient of x^(I+delta) in q * Vandermonde is a_I; the Vandermonde is
  // the alternating sum of x^(sigma delta).
  struct Shift {
    Monomial mono;
    int sign;
  };
  std::vector<Shift> shifts{{Monomial(), 1}};
  for (const auto& a : alphabets) {
    const std::size_t k = a.vars.size();
    std::vector<Shift> next;
    for (const auto& [perm, sign] : permutations(k)) {
      Monomial m;
      for (std::size_t i = 0; i < k; ++i) m *= Monomial::variable(a.vars[i], static_cast<unsigned>(k - 1 - perm[i]));
      for (const auto& s : shifts) next.push_back({s.mono * m, s.sign * sign});
    }
    shifts = std::move(next);
  }

  std::unordered_map<Monomial, Rational, MonomialHash> acc;
  for (const auto& t : qterms) {
    for (const auto& s : shifts) {
      const Monomial m = t.mono * s.mono;
      bool ok = true;
      for (const auto& a : alphabets)
        if (!strictly_decreasing(m, a)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      auto& slot = acc[m];
      if (s.sign > 0) {
        slot += t.coef;
      } else {
        slot -= t.coef;
      }
    }
  }

  SchurTable table;
  table.nvars = nvars;
  for (const auto& [m, c] : acc) {
    if (sgn(c) == 0) continue;
    std::vector<Partition> key;
    for (const auto& a : alphabets) {
      const std::size_t k = a.vars.size();
      std::vector<unsigned> parts(k);
      for (std::size_t i = 0; i < k; ++i) parts[i] = m.exponent(a.vars[i]) - static_cast<unsigned>(k - 1 - i);
      key.emplace_back(std::move(parts));
    }
    table.entries.emplace(std::move(key), c);
  }
  table.alphabets = std::move(alphabets);
  return table;
}

SchurTable expand_schur(const MultiPoly& p, std::span<const std::size_t> vars) {
  return expand_schur_multi(p, {Alphabet{{vars.begin(), vars.end()}, false}});
}

SchurTable expand_two_alphabets(const MultiPoly& p, std::span<const std::size_t> xgroup,
                                std::span<const std::size_t> vgroup) {
  return expand_schur_multi(p, {Alphabet{{xgroup.begin(), xgroup.end()}, true},
                                Alphabet{{vgroup.begin(), vgroup.end()}, false}});
}

MultiPoly reconstruct(const SchurTable& table) {
  MultiPoly total(table.nvars);
  for (const auto& [key, coef] : table.entries) {
    if (key.size() != table.alphabets.size()) throw InvalidArgument("schur table key has wrong arity");
    MultiPoly term = MultiPoly::constant(table.nvars, coef);
    for (std::size_t a = 0; a < key.size(); ++a) {
      const auto& alpha = table.alphabets[a];
      term *= schur(key[a], alpha.vars, table.nvars, alpha.negated);
    }
    total += term;
  }
  return total;
}

Integer hook_degree(std::size_t m, std::size_t n) {
  if (m > n) throw InvalidArgument("hook_degree: need m <= n");
  const std::size_t cols = n - m;
  Integer hooks = 1;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < cols; ++j) hooks *= static_cast<unsigned long>((m - 1 - i) + (cols - 1 - j) + 1);
  return factorial(static_cast<unsigned>(m * cols)) / hooks;
}

}  // namespace eqloc
