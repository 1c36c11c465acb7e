#include "eqloc/cone.hpp"

#include "eqloc/errors.hpp"

namespace eqloc {

namespace {

HPoly trimmed(HPoly p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
  return p;
}

}  // namespace

MultiPoly scalar_cone_class(std::span<const Rational> a) {
  std::vector<MultiPoly::Term> terms;
  for (std::size_t i = 0; i < a.size(); ++i)
    terms.push_back({Monomial::variable(0, static_cast<unsigned>(i)), a[i]});
  terms.push_back({Monomial::variable(0, static_cast<unsigned>(a.size())), Rational(1)});
  return MultiPoly::from_terms(1, std::move(terms));
}

MultiPoly projective_cone_class(const MultiPoly& b0, std::span<const LinearForm> weights) {
  return b0 + product_of_forms(b0.nvars(), weights);
}

HPoly h_substitution(std::span<const Rational> a) {
  HPoly b(a.size(), MultiPoly(1));
  const MultiPoly t = MultiPoly::variable(1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const Rational c = a[i] * Rational(binomial(static_cast<unsigned>(i), static_cast<unsigned>(j)));
      b[j] += t.pow(static_cast<unsigned>(i - j)) * c;
    }
  return b;
}

std::vector<MultiPoly> elementary_symmetric(std::size_t nvars, std::span<const LinearForm> weights) {
  std::vector<MultiPoly> e{MultiPoly::constant(nvars, 1)};
  for (const auto& w : weights) {
    if (w.nvars() != nvars) throw ArityMismatch("weight lives in a different ring");
    e.emplace_back(nvars);
    for (std::size_t i = e.size() - 1; i >= 1; --i) e[i] += mul_linear(e[i - 1], w);
  }
  return e;
}

HPoly h_reduce(const HPoly& p, std::span<const LinearForm> weights, std::size_t nvars) {
  const std::size_t n = weights.size();
  if (n == 0) throw InvalidArgument("h_reduce needs at least one weight");
  const auto sigma = elementary_symmetric(nvars, weights);
  HPoly r = p;
  // h^n = -sum_{i>=1} sigma_i h^(n-i)
  for (std::size_t d = r.size(); d-- > n;) {
    if (r[d].is_zero()) continue;
    const MultiPoly c = r[d];
    r[d] = MultiPoly(nvars);
    for (std::size_t i = 1; i <= n; ++i) r[d - i] -= c * sigma[i];
  }
  if (r.size() > n) r.resize(n);
  return trimmed(std::move(r));
}

HPoly h_inverse_scaled(std::span<const LinearForm> weights, std::size_t nvars) {
  const std::size_t n = weights.size();
  const auto sigma = elementary_symmetric(nvars, weights);
  HPoly r(n, MultiPoly(nvars));
  for (std::size_t i = 0; i < n; ++i) r[n - 1 - i] = -sigma[i];
  return trimmed(std::move(r));
}

HPoly h_multiply(const HPoly& a, const HPoly& b, std::size_t nvars) {
  if (a.empty() || b.empty()) return {};
  HPoly r(a.size() + b.size() - 1, MultiPoly(nvars));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return trimmed(std::move(r));
}

}  // namespace eqloc
