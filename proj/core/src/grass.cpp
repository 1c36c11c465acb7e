#include "eqloc/grass.hpp"

#include <algorithm>
#include <numeric>

#include "eqloc/errors.hpp"
#include "eqloc/fraction.hpp"
#include "eqloc/symfunc.hpp"

namespace eqloc {

GrassPoint GrassPoint::make(std::size_t m, std::size_t n, std::vector<std::size_t> subset) {
  if (subset.size() != m) throw InvalidArgument("fixed point must have exactly m elements");
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (subset[i] < 1 || subset[i] > n) throw InvalidArgument("fixed point element out of range");
    if (i > 0 && subset[i] <= subset[i - 1]) throw InvalidArgument("fixed point must be strictly increasing");
  }
  return GrassPoint{m, n, std::move(subset)};
}

bool GrassPoint::contains(std::size_t k) const {
  return std::binary_search(subset.begin(), subset.end(), k);
}

std::vector<std::size_t> GrassPoint::complement() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 1; k <= n; ++k)
    if (!contains(k)) out.push_back(k);
  return out;
}

std::string to_string(const GrassPoint& p) {
  std::string s = "{";
  for (std::size_t i = 0; i < p.subset.size(); ++i) {
    if (i != 0) s += ',';
    s += std::to_string(p.subset[i]);
  }
  return s + "}";
}

std::vector<GrassPoint> fixed_points(std::size_t m, std::size_t n) {
  if (m == 0 || m >= n) throw InvalidArgument("fixed_points: need 0 < m < n");
  std::vector<GrassPoint> out;
  std::vector<std::size_t> cur(m);
  std::iota(cur.begin(), cur.end(), 1);
  while (true) {
    out.push_back(GrassPoint{m, n, cur});
    std::size_t i = m;
    while (i > 0 && cur[i - 1] == n - m + i) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < m; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

std::vector<LinearForm> tangent_weights(const GrassPoint& p) {
  std::vector<LinearForm> out;
  const auto outside = p.complement();
  out.reserve(p.subset.size() * outside.size());
  for (auto k : p.subset)
    for (auto l : outside) out.push_back(LinearForm::difference(p.n, l - 1, k - 1));
  return out;
}

MultiPoly euler_class(const GrassPoint& p) {
  const auto w = tangent_weights(p);
  return product_of_forms(p.n, w);
}

MultiPoly LocalClassTable::at(const GrassPoint& p) const {
  const auto it = classes.find(p.subset);
  return it == classes.end() ? MultiPoly(n) : it->second;
}

void LocalClassTable::set(const GrassPoint& p, MultiPoly value) {
  if (p.m != m || p.n != n) throw InvalidArgument("point belongs to a different Grassmannian");
  if (value.nvars() != n) throw ArityMismatch("local class must live in the ring t1..tn");
  classes[p.subset] = std::move(value);
}

MultiPoly integrate(const LocalClassTable& values, const IntegrateOptions& options) {
  std::vector<FractionTerm> terms;
  for (const auto& p : fixed_points(values.m, values.n)) {
    const MultiPoly c = values.at(p);
    if (c.nvars() != values.n) throw ArityMismatch("local class must live in the ring t1..tn");
    const auto w = tangent_weights(p);
    terms.emplace_back(c, w);
  }
  SumOptions so;
  so.workers = options.workers;
  so.nvars = values.n;
  return sum_fractions(terms, options.degree_cap, so);
}

MultiPoly instantiate(const MultiPoly& W, const GrassPoint& p) {
  if (W.nvars() != p.m) throw ArityMismatch("template must have one variable per tautological root");
  std::vector<std::size_t> targets(p.m);
  for (std::size_t i = 0; i < p.m; ++i) targets[i] = p.subset[i] - 1;
  return rename_variables(W, targets, p.n);
}

MultiPoly integrate_symmetric(const MultiPoly& W, std::size_t m, std::size_t n,
                              const IntegrateOptions& options) {
  if (W.nvars() != m) throw ArityMismatch("template must have m variables");
  std::vector<std::size_t> slots(m);
  std::iota(slots.begin(), slots.end(), 0);
  require_symmetric(W, slots);
  LocalClassTable table;
  table.m = m;
  table.n = n;
  for (const auto& p : fixed_points(m, n)) table.set(p, instantiate(W, p));
  return integrate(table, options);
}

GysinResult gysin_schur(const Partition& J, const Partition& K, std::size_t m, std::size_t n) {
  if (m == 0 || m >= n) throw InvalidArgument("gysin: need 0 < m < n");
  if (J.length() > n - m) throw InvalidArgument("gysin: J has more than n-m parts");
  if (K.length() > m) throw InvalidArgument("gysin: K has more than m parts");
  std::vector<long> beta(n);
  for (std::size_t r = 0; r < n - m; ++r)
    beta[r] = static_cast<long>(J.part(r)) - static_cast<long>(m) + static_cast<long>(n - 1 - r);
  for (std::size_t r = 0; r < m; ++r)
    beta[n - m + r] = static_cast<long>(K.part(r)) + static_cast<long>(m - 1 - r);
  // Sort into strictly decreasing order, tracking the permutation sign.
  int sign = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j + 1 < n - i; ++j)
      if (beta[j] < beta[j + 1]) {
        std::swap(beta[j], beta[j + 1]);
        sign = -sign;
      }
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (beta[i] == beta[i + 1]) return {};
  if (beta[n - 1] < 0) return {};
  std::vector<unsigned> parts(n);
  for (std::size_t i = 0; i < n; ++i) parts[i] = static_cast<unsigned>(beta[i] - static_cast<long>(n - 1 - i));
  return {sign, Partition(std::move(parts))};
}

MultiPoly gysin_schur_poly(const Partition& J, const Partition& K, std::size_t m, std::size_t n) {
  const GysinResult r = gysin_schur(J, K, m, n);
  if (r.sign == 0) return MultiPoly(n);
  MultiPoly s = schur(r.I, n);
  return r.sign > 0 ? s : -s;
}

MultiPoly gysin_localization(const Partition& J, const Partition& K, std::size_t m, std::size_t n) {
  LocalClassTable table;
  table.m = m;
  table.n = n;
  for (const auto& p : fixed_points(m, n)) {
    std::vector<std::size_t> inside(p.subset), outside(p.complement());
    for (auto& v : inside) --v;
    for (auto& v : outside) --v;
    table.set(p, schur(J, outside, n) * schur(K, inside, n));
  }
  return integrate(table);
}

std::size_t GKMGraph::index_of(const GrassPoint& p) const {
  const auto it = std::lower_bound(vertices.begin(), vertices.end(), p);
  if (it == vertices.end() || *it != p) throw InvalidArgument("point is not a vertex of the graph");
  return static_cast<std::size_t>(it - vertices.begin());
}

std::vector<std::pair<std::size_t, LinearForm>> GKMGraph::neighbors(std::size_t v) const {
  std::vector<std::pair<std::size_t, LinearForm>> out;
  for (const auto& e : edges) {
    if (e.from == v) out.emplace_back(e.to, e.label);
    if (e.to == v) out.emplace_back(e.from, -e.label);
  }
  return out;
}

GKMGraph gkm_graph(std::size_t m, std::size_t n) {
  GKMGraph g;
  g.vertices = fixed_points(m, n);
  for (std::size_t a = 0; a < g.vertices.size(); ++a) {
    const GrassPoint& p = g.vertices[a];
    for (auto i : p.subset) {
      for (auto j : p.complement()) {
        std::vector<std::size_t> s;
        for (auto k : p.subset)
          if (k != i) s.push_back(k);
        s.insert(std::upper_bound(s.begin(), s.end(), j), j);
        const std::size_t b = g.index_of(GrassPoint{m, n, s});
        if (a < b) g.edges.push_back({a, b, LinearForm::difference(n, j - 1, i - 1)});
      }
    }
  }
  return g;
}

}  // namespace eqloc
