#include "eqloc/poly.hpp"

#include <algorithm>
#include <queue>
#include <string>
#include <unordered_map>

#include "eqloc/errors.hpp"

namespace eqloc {

namespace {

void require_same_ring(const MultiPoly& a, const MultiPoly& b, const char* op) {
  if (a.nvars() != b.nvars()) {
    throw ArityMismatch(std::string(op) + ": operands have " + std::to_string(a.nvars()) +
                        " and " + std::to_string(b.nvars()) + " variables");
  }
}

bool term_desc(const MultiPoly::Term& a, const MultiPoly::Term& b) {
  return grlex_less(b.mono, a.mono);
}

// Merges two strictly descending term lists, scaling the second by `sign`.
std::vector<MultiPoly::Term> merge_terms(const std::vector<MultiPoly::Term>& a,
                                         const std::vector<MultiPoly::Term>& b, int sign) {
  std::vector<MultiPoly::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].mono == b[j].mono) {
      Rational c = sign > 0 ? Rational(a[i].coef + b[j].coef) : Rational(a[i].coef - b[j].coef);
      if (sgn(c) != 0) out.push_back({a[i].mono, std::move(c)});
      ++i;
      ++j;
    } else if (grlex_less(b[j].mono, a[i].mono)) {
      out.push_back(a[i++]);
    } else {
      out.push_back({b[j].mono, sign > 0 ? b[j].coef : Rational(-b[j].coef)});
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) out.push_back({b[j].mono, sign > 0 ? b[j].coef : Rational(-b[j].coef)});
  return out;
}

Integer denominator_lcm(const std::vector<MultiPoly::Term>& terms) {
  Integer l = 1;
  for (const auto& t : terms) {
    if (t.coef.get_den() != 1) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coef.get_den_mpz_t());
  }
  return l;
}

// Integer images of the coefficients after scaling by `scale`.
std::vector<Integer> scaled_numerators(const std::vector<MultiPoly::Term>& terms,
                                       const Integer& scale) {
  std::vector<Integer> out;
  out.reserve(terms.size());
  for (const auto& t : terms) {
    if (scale == 1) {
      out.push_back(t.coef.get_num());
    } else {
      Integer f = scale / t.coef.get_den();
      out.push_back(t.coef.get_num() * f);
    }
  }
  return out;
}

}  // namespace

MultiPoly::MultiPoly(std::size_t nvars) : nvars_(nvars) {
  if (nvars > kMaxVars) {
    throw InvalidArgument("ring with " + std::to_string(nvars) + " variables exceeds the limit of " +
                          std::to_string(kMaxVars));
  }
}

MultiPoly MultiPoly::constant(std::size_t nvars, const Rational& c) {
  MultiPoly p(nvars);
  if (sgn(c) != 0) p.terms_.push_back({Monomial{}, c});
  return p;
}

MultiPoly MultiPoly::variable(std::size_t nvars, std::size_t var) {
  if (var >= nvars) throw InvalidArgument("variable index out of range");
  return monomial(nvars, Monomial::variable(var), 1);
}

MultiPoly MultiPoly::monomial(std::size_t nvars, const Monomial& m, const Rational& c) {
  MultiPoly p(nvars);
  if (m.last_variable() >= static_cast<int>(nvars)) {
    throw InvalidArgument("monomial uses a variable outside the ring");
  }
  if (sgn(c) != 0) p.terms_.push_back({m, c});
  return p;
}

MultiPoly MultiPoly::from_terms(std::size_t nvars, std::vector<Term> terms) {
  MultiPoly p(nvars);
  std::sort(terms.begin(), terms.end(), term_desc);
  for (auto& t : terms) {
    if (t.mono.last_variable() >= static_cast<int>(nvars)) {
      throw InvalidArgument("term uses a variable outside the ring");
    }
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coef += t.coef;
    } else {
      if (!p.terms_.empty() && sgn(p.terms_.back().coef) == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && sgn(p.terms_.back().coef) == 0) p.terms_.pop_back();
  return p;
}

MultiPoly MultiPoly::from_sorted_terms(std::size_t nvars, std::vector<Term> terms) {
  MultiPoly p(nvars);
  p.terms_ = std::move(terms);
  return p;
}

Rational MultiPoly::constant_term() const {
  if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coef;
  return 0;
}

Rational MultiPoly::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [](const Term& t, const Monomial& x) {
    return grlex_less(x, t.mono);
  });
  if (it != terms_.end() && it->mono == m) return it->coef;
  return 0;
}

MultiPoly MultiPoly::homogeneous_component(unsigned d) const {
  MultiPoly out(nvars_);
  for (const auto& t : terms_) {
    if (t.mono.degree() == d) out.terms_.push_back(t);
  }
  return out;
}

MultiPoly MultiPoly::truncated(unsigned max_degree) const {
  MultiPoly out(nvars_);
  for (const auto& t : terms_) {
    if (t.mono.degree() <= max_degree) out.terms_.push_back(t);
  }
  return out;
}

MultiPoly MultiPoly::extended(std::size_t nvars) const {
  if (nvars < nvars_) throw InvalidArgument("cannot shrink a ring by extension");
  MultiPoly out(nvars);
  out.terms_ = terms_;
  return out;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out(*this);
  for (auto& t : out.terms_) t.coef = -t.coef;
  return out;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  require_same_ring(*this, o, "add");
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) {
    terms_ = o.terms_;
    return *this;
  }
  terms_ = merge_terms(terms_, o.terms_, +1);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  require_same_ring(*this, o, "sub");
  if (o.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, o.terms_, -1);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) { return *this = *this * o; }

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coef *= c;
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  require_same_ring(a, b, "mul");
  MultiPoly out(a.nvars());
  if (a.is_zero() || b.is_zero()) return out;
  const MultiPoly& big = a.size() >= b.size() ? a : b;
  const MultiPoly& small = a.size() >= b.size() ? b : a;
  if (small.size() == 1) {
    // Multiplying by one term keeps the order.
    const auto& s = small.terms().front();
    std::vector<MultiPoly::Term> terms;
    terms.reserve(big.size());
    for (const auto& t : big.terms()) terms.push_back({t.mono * s.mono, t.coef * s.coef});
    return MultiPoly::from_sorted_terms(a.nvars(), std::move(terms));
  }
  // Accumulate integer products, then restore the common denominator.
  const Integer da = denominator_lcm(big.terms());
  const Integer db = denominator_lcm(small.terms());
  const auto na = scaled_numerators(big.terms(), da);
  const auto nb = scaled_numerators(small.terms(), db);
  std::unordered_map<Monomial, Integer, MonomialHash> acc;
  acc.reserve(big.size() * small.size());
  for (std::size_t i = 0; i < big.size(); ++i) {
    for (std::size_t j = 0; j < small.size(); ++j) {
      Integer& slot = acc[big.terms()[i].mono * small.terms()[j].mono];
      mpz_addmul(slot.get_mpz_t(), na[i].get_mpz_t(), nb[j].get_mpz_t());
    }
  }
  const Integer den = da * db;
  std::vector<MultiPoly::Term> terms;
  terms.reserve(acc.size());
  for (auto& [m, c] : acc) {
    if (sgn(c) == 0) continue;
    Rational q(c, den);
    q.canonicalize();
    terms.push_back({m, std::move(q)});
  }
  std::sort(terms.begin(), terms.end(), term_desc);
  return MultiPoly::from_sorted_terms(a.nvars(), std::move(terms));
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly result = constant(nvars_, 1);
  MultiPoly base = *this;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
  if (nvars_ != o.nvars_ || terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (!(terms_[i].mono == o.terms_[i].mono) || terms_[i].coef != o.terms_[i].coef) return false;
  }
  return true;
}

MultiPoly add(const MultiPoly& a, const MultiPoly& b) { return a + b; }
MultiPoly mul(const MultiPoly& a, const MultiPoly& b) { return a * b; }
MultiPoly homogeneous_component(const MultiPoly& p, unsigned d) {
  return p.homogeneous_component(d);
}

MultiPoly mul_linear(const MultiPoly& p, const LinearForm& f) {
  if (f.nvars() != p.nvars()) throw ArityMismatch("mul_linear: form and polynomial rings differ");
  std::vector<MultiPoly::Term> acc;
  for (std::size_t v = 0; v < f.nvars(); ++v) {
    const auto c = f.coeff(v);
    if (c == 0) continue;
    const Monomial x = Monomial::variable(v);
    const Rational rc(static_cast<long>(c));
    std::vector<MultiPoly::Term> shifted;
    shifted.reserve(p.size());
    for (const auto& t : p.terms()) shifted.push_back({t.mono * x, t.coef * rc});
    acc = acc.empty() ? std::move(shifted) : merge_terms(acc, shifted, +1);
  }
  return MultiPoly::from_sorted_terms(p.nvars(), std::move(acc));
}

MultiPoly exact_div_linear(const MultiPoly& p, const LinearForm& f) {
  if (f.nvars() != p.nvars()) {
    throw ArityMismatch("exact_div_linear: form and polynomial rings differ");
  }
  const std::size_t lead = f.leading_variable();
  const Rational lead_coef(static_cast<long>(f.coeff(lead)));
  std::vector<std::pair<Monomial, Rational>> tail;
  for (std::size_t v = 0; v < lead; ++v) {
    if (f.coeff(v) != 0) tail.emplace_back(Monomial::variable(v), Rational(static_cast<long>(f.coeff(v))));
  }

  // Pending corrections -q*tail, visited in descending monomial order
  // together with the terms of p.
  struct Desc {
    bool operator()(const Monomial& a, const Monomial& b) const { return grlex_less(a, b); }
  };
  std::priority_queue<Monomial, std::vector<Monomial>, Desc> heap;
  std::unordered_map<Monomial, Rational, MonomialHash> pending;
  std::vector<MultiPoly::Term> quotient;
  quotient.reserve(p.size());

  std::size_t next = 0;
  const auto& pt = p.terms();
  while (next < pt.size() || !heap.empty()) {
    Monomial m;
    Rational coef;
    const bool take_p = next < pt.size() && (heap.empty() || !grlex_less(pt[next].mono, heap.top()));
    if (take_p) {
      m = pt[next].mono;
      coef = pt[next].coef;
      ++next;
      if (!heap.empty() && heap.top() == m) {
        heap.pop();
        auto it = pending.find(m);
        coef += it->second;
        pending.erase(it);
      }
    } else {
      m = heap.top();
      heap.pop();
      auto it = pending.find(m);
      coef = std::move(it->second);
      pending.erase(it);
    }
    if (sgn(coef) == 0) continue;
    const unsigned e = m.exponent(lead);
    if (e == 0) {
      throw NotDivisible("polynomial is not divisible by " + to_string(f));
    }
    const Monomial qm = m.with_exponent(lead, e - 1);
    Rational qc = coef / lead_coef;
    for (const auto& [x, c] : tail) {
      const Monomial target = qm * x;
      auto [it, inserted] = pending.try_emplace(target, 0);
      it->second -= qc * c;
      if (inserted) heap.push(target);
    }
    quotient.push_back({qm, std::move(qc)});
  }
  return MultiPoly::from_sorted_terms(p.nvars(), std::move(quotient));
}

AffineMap AffineMap::identity(std::size_t nvars) {
  AffineMap map;
  map.target_nvars = nvars;
  map.images.resize(nvars);
  for (std::size_t i = 0; i < nvars; ++i) {
    map.images[i].coeffs.assign(nvars, 0);
    map.images[i].coeffs[i] = 1;
  }
  return map;
}

AffineMap AffineMap::renaming(std::span<const std::size_t> targets, std::size_t target_nvars) {
  AffineMap map;
  map.target_nvars = target_nvars;
  map.images.resize(targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] >= target_nvars) throw InvalidArgument("renaming target out of range");
    map.images[i].coeffs.assign(target_nvars, 0);
    map.images[i].coeffs[targets[i]] = 1;
  }
  return map;
}

MultiPoly rename_variables(const MultiPoly& p, std::span<const std::size_t> targets,
                           std::size_t target_nvars) {
  if (targets.size() != p.nvars()) throw ArityMismatch("rename_variables: wrong target count");
  for (auto t : targets) {
    if (t >= target_nvars) throw InvalidArgument("rename_variables: target out of range");
  }
  std::vector<MultiPoly::Term> terms;
  terms.reserve(p.size());
  std::vector<unsigned> exps(target_nvars);
  for (const auto& t : p.terms()) {
    std::fill(exps.begin(), exps.end(), 0U);
    for (std::size_t v = 0; v < p.nvars(); ++v) exps[targets[v]] += t.mono.exponent(v);
    terms.push_back({Monomial::from_exponents(exps), t.coef});
  }
  return MultiPoly::from_terms(target_nvars, std::move(terms));
}

MultiPoly substitute_linear(const MultiPoly& p, const AffineMap& map) {
  if (map.images.size() != p.nvars()) {
    throw ArityMismatch("substitute_linear: assignment must cover every variable");
  }
  // Pure renamings are handled at the monomial level.
  std::vector<std::size_t> targets(p.nvars());
  bool renaming = true;
  for (std::size_t v = 0; v < p.nvars() && renaming; ++v) {
    const auto& img = map.images[v];
    if (img.coeffs.size() != map.target_nvars) {
      throw ArityMismatch("substitute_linear: image has the wrong number of coefficients");
    }
    if (sgn(img.constant) != 0) {
      renaming = false;
      break;
    }
    int hit = -1;
    for (std::size_t j = 0; j < img.coeffs.size(); ++j) {
      if (sgn(img.coeffs[j]) == 0) continue;
      if (hit >= 0 || img.coeffs[j] != 1) {
        renaming = false;
        break;
      }
      hit = static_cast<int>(j);
    }
    if (hit < 0) renaming = false;
    if (renaming) targets[v] = static_cast<std::size_t>(hit);
  }
  if (renaming) return rename_variables(p, targets, map.target_nvars);

  std::vector<MultiPoly> images;
  images.reserve(p.nvars());
  for (const auto& img : map.images) {
    if (img.coeffs.size() != map.target_nvars) {
      throw ArityMismatch("substitute_linear: image has the wrong number of coefficients");
    }
    std::vector<MultiPoly::Term> terms;
    for (std::size_t j = 0; j < img.coeffs.size(); ++j) {
      if (sgn(img.coeffs[j]) != 0) terms.push_back({Monomial::variable(j), img.coeffs[j]});
    }
    if (sgn(img.constant) != 0) terms.push_back({Monomial{}, img.constant});
    images.push_back(MultiPoly::from_terms(map.target_nvars, std::move(terms)));
  }
  std::vector<std::vector<MultiPoly>> powers(p.nvars());
  auto power = [&](std::size_t v, unsigned e) -> const MultiPoly& {
    auto& cache = powers[v];
    if (cache.empty()) cache.push_back(MultiPoly::constant(map.target_nvars, 1));
    while (cache.size() <= e) cache.push_back(cache.back() * images[v]);
    return cache[e];
  };
  std::vector<MultiPoly::Term> collected;
  for (const auto& t : p.terms()) {
    MultiPoly term = MultiPoly::constant(map.target_nvars, t.coef);
    for (std::size_t v = 0; v < p.nvars(); ++v) {
      const unsigned e = t.mono.exponent(v);
      if (e != 0) term = term * power(v, e);
    }
    collected.insert(collected.end(), term.terms().begin(), term.terms().end());
  }
  return MultiPoly::from_terms(map.target_nvars, std::move(collected));
}

MultiPoly partial_derivative(const MultiPoly& p, std::size_t var) {
  if (var >= p.nvars()) throw InvalidArgument("partial_derivative: variable out of range");
  std::vector<MultiPoly::Term> terms;
  for (const auto& t : p.terms()) {
    const unsigned e = t.mono.exponent(var);
    if (e == 0) continue;
    terms.push_back({t.mono.with_exponent(var, e - 1), t.coef * e});
  }
  return MultiPoly::from_terms(p.nvars(), std::move(terms));
}

MultiPoly product_of_forms(std::size_t nvars, std::span<const LinearForm> forms) {
  MultiPoly out = MultiPoly::constant(nvars, 1);
  for (const auto& f : forms) out = mul_linear(out, f);
  return out;
}

}  // namespace eqloc
