#include "eqloc/csm.hpp"

#include <algorithm>
#include <unordered_map>

#include "eqloc/errors.hpp"
#include "eqloc/fraction.hpp"
#include "eqloc/linsolve.hpp"
#include "eqloc/parallel.hpp"

namespace eqloc {

namespace {

unsigned dimension(const GrassPoint& p) { return static_cast<unsigned>(p.m * (p.n - p.m)); }

FractionTerm relative_term(const LocalClassTable& table, const GrassPoint& p0, const GrassPoint& p) {
  const auto top = tangent_weights(p0);
  const auto bottom = tangent_weights(p);
  return FractionTerm::ratio(table.at(p), top, bottom);
}

// -sum of the groups' sums in each degree 0..dim.
Recovery recover_from_groups(const std::vector<std::vector<FractionTerm>>& groups, const GrassPoint& p0,
                             bool member, const RecoveryOptions& options) {
  const unsigned dim = dimension(p0);
  const std::size_t n = p0.n;
  std::vector<MultiPoly> by_degree(dim + 1, MultiPoly(n));
  const std::size_t tasks = static_cast<std::size_t>(dim + 1) * groups.size();
  std::vector<MultiPoly> slots(tasks);
  SumOptions inner;
  inner.nvars = n;
  parallel_for(options.workers, tasks, [&](std::size_t i) {
    const auto d = static_cast<unsigned>(i % (dim + 1));
    const auto& g = groups[i / (dim + 1)];
    slots[i] = sum_fractions_in_degree(g, d, inner);
  });
  for (std::size_t i = 0; i < tasks; ++i) by_degree[i % (dim + 1)] += slots[i];

  Recovery r;
  r.local = MultiPoly(n);
  for (unsigned d = 0; d < dim; ++d) {
    const MultiPoly v = -by_degree[d];
    if (d < options.codim && !v.is_zero())
      throw Inconsistent("recovered class is nonzero in degree " + std::to_string(d) +
                         ", below the codimension");
    r.local += v;
  }
  r.raw_top = -by_degree[dim];
  r.local += degree_zero_anchor(p0, member);
  return r;
}

}  // namespace

MultiPoly smooth_local_class(std::size_t nvars, std::span<const LinearForm> tangent,
                             std::span<const LinearForm> normal) {
  MultiPoly r = product_of_forms(nvars, normal);
  for (const auto& w : tangent) r += mul_linear(r, w);
  return r;
}

MultiPoly degree_zero_anchor(const GrassPoint& p, bool member) {
  return member ? euler_class(p) : MultiPoly(p.n);
}

Recovery recover_local_class(const LocalClassTable& known, const GrassPoint& p0, bool member,
                             const RecoveryOptions& options) {
  std::vector<FractionTerm> terms;
  for (const auto& p : fixed_points(p0.m, p0.n)) {
    if (p == p0) continue;
    if (known.at(p).is_zero()) continue;
    terms.push_back(relative_term(known, p0, p));
  }
  std::vector<std::vector<FractionTerm>> groups{std::move(terms)};
  return recover_from_groups(groups, p0, member, options);
}

Recovery recover_local_class_grouped(const LocalClassTable& known, const GrassPoint& p0,
                                     bool member,
                                     const std::vector<std::vector<GrassPoint>>& groups,
                                     const RecoveryOptions& options) {
  std::vector<std::vector<FractionTerm>> terms;
  for (const auto& g : groups) {
    std::vector<FractionTerm> t;
    for (const auto& p : g) {
      if (p == p0 || known.at(p).is_zero()) continue;
      t.push_back(relative_term(known, p0, p));
    }
    if (!t.empty()) terms.push_back(std::move(t));
  }
  return recover_from_groups(terms, p0, member, options);
}

std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned d) {
  std::vector<Monomial> out;
  std::vector<unsigned> exps(nvars, 0);
  auto rec = [&](auto&& self, std::size_t var, unsigned remaining) -> void {
    if (var + 1 == nvars) {
      exps[var] = remaining;
      out.push_back(Monomial::from_exponents(exps));
      return;
    }
    for (unsigned e = remaining + 1; e-- > 0;) {
      exps[var] = e;
      self(self, var + 1, remaining - e);
    }
  };
  if (nvars == 0) {
    if (d == 0) out.emplace_back();
    return out;
  }
  rec(rec, 0, d);
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) { return grlex_less(b, a); });
  return out;
}

MultiPoly gkm_solve(const GKMGraph& graph, const LocalClassTable& neighbors, const GrassPoint& p0,
                    bool member) {
  const std::size_t n = p0.n;
  const unsigned dim = dimension(p0);
  const std::size_t v0 = graph.index_of(p0);
  const auto edges = graph.neighbors(v0);

  struct Edge {
    std::size_t from_var;  // t_j, replaced by
    std::size_t to_var;    // t_i
    MultiPoly image;       // neighbor class after the substitution
  };
  std::vector<Edge> subs;
  for (const auto& [q, label] : edges) {
    std::size_t plus = n, minus = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (label.coeff(v) == 1) plus = v;
      if (label.coeff(v) == -1) minus = v;
    }
    if (plus == n || minus == n) throw InvalidArgument("GKM label is not a difference of two characters");
    std::vector<std::size_t> targets(n);
    for (std::size_t v = 0; v < n; ++v) targets[v] = v == plus ? minus : v;
    subs.push_back({plus, minus, rename_variables(neighbors.at(graph.vertices[q]), targets, n)});
  }

  MultiPoly result = degree_zero_anchor(p0, member);
  for (unsigned d = 0; d < dim; ++d) {
    const auto monos = monomials_of_degree(n, d);
    std::unordered_map<Monomial, std::size_t, MonomialHash> index;
    for (std::size_t i = 0; i < monos.size(); ++i) index.emplace(monos[i], i);
    SparseLinearSystem system(monos.size());
    for (const auto& e : subs) {
      // Group unknowns by their image under t_j <- t_i.
      std::map<std::pair<std::uint64_t, std::uint64_t>, SparseLinearSystem::Row> rows;
      std::map<std::pair<std::uint64_t, std::uint64_t>, Monomial> image_of;
      for (std::size_t i = 0; i < monos.size(); ++i) {
        const Monomial& m = monos[i];
        const unsigned ej = m.exponent(e.from_var);
        const Monomial img = m.with_exponent(e.from_var, 0).with_exponent(e.to_var, m.exponent(e.to_var) + ej);
        const auto key = std::make_pair(img.hi(), img.lo());
        rows[key][i] = 1;
        image_of.emplace(key, img);
      }
      const MultiPoly rhs = e.image.homogeneous_component(d);
      for (const auto& t : rhs.terms()) {
        if (!rows.count({t.mono.hi(), t.mono.lo()}))
          throw Inconsistent("neighbor class does not reduce consistently along an edge");
      }
      for (auto& [key, row] : rows) system.add_equation(std::move(row), rhs.coefficient(image_of.at(key)));
    }
    const auto x = system.solve();
    std::vector<MultiPoly::Term> terms;
    for (std::size_t i = 0; i < monos.size(); ++i)
      if (sgn(x[i]) != 0) terms.push_back({monos[i], x[i]});
    result += MultiPoly::from_sorted_terms(n, std::move(terms));
  }
  return result;
}

Rational euler_characteristic(const LocalClassTable& table) {
  std::vector<FractionTerm> terms;
  for (const auto& p : fixed_points(table.m, table.n)) {
    const auto w = tangent_weights(p);
    terms.emplace_back(table.at(p).homogeneous_component(static_cast<unsigned>(w.size())), w);
  }
  SumOptions so;
  so.nvars = table.n;
  const MultiPoly s = sum_fractions_in_degree(terms, 0, so);
  if (!s.is_constant()) throw NotPolynomial("euler characteristic sum is not a constant");
  return s.constant_term();
}

MultiPoly degreewise_sum(const LocalClassTable& table, unsigned degree, unsigned workers) {
  std::vector<FractionTerm> terms;
  for (const auto& p : fixed_points(table.m, table.n)) {
    const auto w = tangent_weights(p);
    terms.emplace_back(table.at(p).homogeneous_component(degree), w);
  }
  SumOptions so;
  so.nvars = table.n;
  so.workers = workers;
  return sum_fractions(terms, std::nullopt, so);
}

}  // namespace eqloc
