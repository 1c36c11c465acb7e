#include "eqloc/omega1.hpp"

#include <algorithm>
#include <numeric>

#include "eqloc/cache.hpp"
#include "eqloc/csm.hpp"
#include "eqloc/errors.hpp"
#include "eqloc/modular.hpp"

namespace eqloc {

std::string_view to_string(Omega1Method m) {
  switch (m) {
    case Omega1Method::direct: return "direct";
    case Omega1Method::gkm: return "gkm";
    case Omega1Method::grouped: return "grouped";
    case Omega1Method::modular: return "modular";
  }
  return "direct";
}

Omega1Method parse_omega1_method(std::string_view name) {
  if (name == "direct") return Omega1Method::direct;
  if (name == "gkm") return Omega1Method::gkm;
  if (name == "grouped") return Omega1Method::grouped;
  if (name == "modular") return Omega1Method::modular;
  throw InvalidArgument("unknown method '" + std::string(name) + "'");
}

std::size_t omega1_depth(const GrassPoint& p) {
  std::size_t k = 0;
  for (auto i : p.subset)
    if (i <= p.m) ++k;
  return k;
}

MultiPoly omega1_stratum_class(const GrassPoint& p, const FTable& f) {
  const std::size_t n = p.m;
  if (p.n != 2 * n) throw InvalidArgument("point must lie in Grass_n(C^2n)");
  const std::size_t k = omega1_depth(p);
  if (k == 0) return MultiPoly(p.n);
  const auto it = f.find(k);
  if (it == f.end()) throw InvalidArgument("missing f_" + std::to_string(k));
  if (it->second.nvars() != 2 * k) throw ArityMismatch("f_k must have 2k variables");

  std::vector<std::size_t> targets;
  std::vector<bool> in_a(p.n + 1, false), in_b(p.n + 1, false);
  for (auto i : p.subset)
    if (i <= n) {
      targets.push_back(i - 1);
      in_a[i] = true;
    }
  for (std::size_t j = n + 1; j <= 2 * n; ++j)
    if (!p.contains(j)) {
      targets.push_back(j - 1);
      in_b[j] = true;
    }
  MultiPoly r = rename_variables(it->second, targets, p.n);

  const auto outside = p.complement();
  for (auto i : p.subset)
    for (auto j : outside) {
      if (in_a[i] && in_b[j]) continue;
      r += mul_linear(r, LinearForm::difference(p.n, j - 1, i - 1));
    }
  return r;
}

namespace {

/// One fixed point of the grouped sum: contributes
/// f_k(t_A, t_B') prod(1 + w) prod(p0 weights) / prod(w), the products taken
/// over weights outside A x B'.
struct ModTerm {
  std::size_t k = 0;
  unsigned a_mask = 0;
  unsigned b_mask = 0;
  std::vector<std::pair<std::size_t, std::size_t>> num_pairs;  // (j, i): t_j - t_i
  std::vector<std::pair<std::size_t, std::size_t>> den_pairs;
};

/// f_k as sum coef * det_I(t_A) det_J(t_B') / (V(t_A) V(t_B')).
struct ModSchur {
  std::vector<std::vector<unsigned>> x_exps;  // I_j + k - 1 - j per partition
  std::vector<std::vector<unsigned>> v_exps;
  struct Entry {
    std::size_t i = 0;
    std::size_t j = 0;
    Rational coef;  // with the sign (-1)^|I| of the negated alphabet folded in
  };
  std::vector<Entry> entries;
  std::vector<std::vector<std::uint64_t>> coef_mod;  // per prime, aligned with entries
  unsigned max_exp = 0;
};

std::vector<std::pair<std::vector<std::size_t>, int>> permutations_with_sign(std::size_t k) {
  std::vector<std::size_t> p(k);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::pair<std::vector<std::size_t>, int>> out;
  do {
    int sign = 1;
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a + 1; b < k; ++b)
        if (p[a] > p[b]) sign = -sign;
    out.emplace_back(p, sign);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

class Omega1ModularSum {
 public:
  Omega1ModularSum(std::size_t n, const FTable& lower) : n_(n) {
    const std::size_t N = 2 * n;
    std::vector<std::size_t> base(n);
    std::iota(base.begin(), base.end(), 1);
    const GrassPoint p0 = GrassPoint::make(n, N, base);
    std::size_t max_k = 0;
    for (const auto& p : fixed_points(n, N)) {
      const std::size_t k = omega1_depth(p);
      if (p == p0 || k == 0) continue;
      ModTerm term;
      term.k = k;
      std::vector<bool> in_a(N + 1, false), in_b(N + 1, false);
      for (auto i : p.subset)
        if (i <= n) {
          in_a[i] = true;
          term.a_mask |= 1U << (i - 1);
        }
      for (std::size_t j = n + 1; j <= N; ++j)
        if (!p.contains(j)) {
          in_b[j] = true;
          term.b_mask |= 1U << (j - 1);
        }
      for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = n + 1; j <= N; ++j)
          if (!(in_a[i] && in_b[j])) term.num_pairs.emplace_back(j - 1, i - 1);
      for (auto i : p.subset)
        for (auto j : p.complement())
          if (!(in_a[i] && in_b[j])) term.den_pairs.emplace_back(j - 1, i - 1);
      terms_.push_back(std::move(term));
      max_k = std::max(max_k, k);
    }
    for (std::size_t k = 1; k <= max_k; ++k) {
      const auto it = lower.find(k);
      if (it == lower.end()) throw InvalidArgument("missing f_" + std::to_string(k));
      const SchurTable table = omega1_schur_table(it->second, k);
      ModSchur ms;
      std::map<Partition, std::size_t> xi, vi;
      auto exps_of = [&](const Partition& P) {
        std::vector<unsigned> e(k);
        for (std::size_t j = 0; j < k; ++j) {
          e[j] = P.part(j) + static_cast<unsigned>(k - 1 - j);
          ms.max_exp = std::max(ms.max_exp, e[j]);
        }
        return e;
      };
      for (const auto& [key, coef] : table.entries) {
        const Partition& I = key[0];
        const Partition& J = key[1];
        if (I.length() > k || J.length() > k) throw Inconsistent("Schur entry does not fit");
        auto [ix, newx] = xi.emplace(I, ms.x_exps.size());
        if (newx) ms.x_exps.push_back(exps_of(I));
        auto [jv, newv] = vi.emplace(J, ms.v_exps.size());
        if (newv) ms.v_exps.push_back(exps_of(J));
        ModSchur::Entry e;
        e.i = ix->second;
        e.j = jv->second;
        e.coef = I.weight() % 2 == 1 ? Rational(-coef) : coef;
        ms.entries.push_back(std::move(e));
      }
      for (std::uint64_t prime : modular_primes()) {
        const ModField F(prime);
        std::vector<std::uint64_t> c;
        c.reserve(ms.entries.size());
        for (const auto& e : ms.entries) c.push_back(F.from_rational(e.coef));
        ms.coef_mod.push_back(std::move(c));
      }
      schur_[k] = std::move(ms);
      perms_[k] = permutations_with_sign(k);
    }
  }

  std::uint64_t operator()(const ModField& F, std::span<const std::uint64_t> t) const {
    const auto primes = modular_primes();
    const std::size_t pi = static_cast<std::size_t>(
        std::find(primes.begin(), primes.end(), F.prime()) - primes.begin());
    if (pi >= primes.size()) throw InvalidArgument("unexpected modulus");

    // Alternant numerators and Vandermonde values per subset, computed on demand.
    std::map<unsigned, std::pair<std::vector<std::uint64_t>, std::uint64_t>> x_cache, v_cache;
    auto alternants = [&](unsigned mask, std::size_t k, bool xside)
        -> const std::pair<std::vector<std::uint64_t>, std::uint64_t>& {
      auto& cache = xside ? x_cache : v_cache;
      auto found = cache.find(mask);
      if (found != cache.end()) return found->second;
      const ModSchur& ms = schur_.at(k);
      std::vector<std::size_t> vars;
      for (std::size_t v = 0; v < 2 * n_; ++v)
        if (mask & (1U << v)) vars.push_back(v);
      std::vector<std::vector<std::uint64_t>> pw(k, std::vector<std::uint64_t>(ms.max_exp + 1));
      for (std::size_t r = 0; r < k; ++r) {
        pw[r][0] = F.one();
        for (unsigned e = 1; e <= ms.max_exp; ++e) pw[r][e] = F.mul(pw[r][e - 1], t[vars[r]]);
      }
      const auto& exps = xside ? ms.x_exps : ms.v_exps;
      std::vector<std::uint64_t> dets;
      dets.reserve(exps.size());
      for (const auto& ex : exps) {
        std::uint64_t d = 0;
        for (const auto& [perm, sign] : perms_.at(k)) {
          std::uint64_t prod = F.one();
          for (std::size_t r = 0; r < k; ++r) prod = F.mul(prod, pw[r][ex[perm[r]]]);
          d = sign > 0 ? F.add(d, prod) : F.sub(d, prod);
        }
        dets.push_back(d);
      }
      std::uint64_t vdm = F.one();
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b) vdm = F.mul(vdm, F.sub(t[vars[a]], t[vars[b]]));
      return cache.emplace(mask, std::make_pair(std::move(dets), vdm)).first->second;
    };

    std::uint64_t num = 0, den = F.one();
    for (const auto& term : terms_) {
      const ModSchur& ms = schur_.at(term.k);
      const auto& [xd, xv] = alternants(term.a_mask, term.k, true);
      const auto& [vd, vv] = alternants(term.b_mask, term.k, false);
      const auto& coefs = ms.coef_mod[pi];
      std::uint64_t fnum = 0;
      for (std::size_t e = 0; e < ms.entries.size(); ++e)
        fnum = F.add(fnum, F.mul(coefs[e], F.mul(xd[ms.entries[e].i], vd[ms.entries[e].j])));
      std::uint64_t tn = fnum, td = F.mul(xv, vv);
      for (const auto& [j, i] : term.num_pairs) tn = F.mul(tn, F.sub(t[j], t[i]));
      for (const auto& [j, i] : term.den_pairs) {
        const std::uint64_t w = F.sub(t[j], t[i]);
        tn = F.mul(tn, F.add(F.one(), w));
        td = F.mul(td, w);
      }
      num = F.add(F.mul(num, td), F.mul(tn, den));
      den = F.mul(den, td);
    }
    return F.neg(F.mul(num, F.inv(den)));
  }

 private:
  std::size_t n_;
  std::vector<ModTerm> terms_;
  std::map<std::size_t, ModSchur> schur_;
  std::map<std::size_t, std::vector<std::pair<std::vector<std::size_t>, int>>> perms_;
};

}  // namespace

TreeBasis omega1_default_tree(std::size_t n) {
  std::vector<TreeEdge> edges;
  for (std::size_t v = 1; v < 2 * n; ++v) edges.push_back({v, v + 1});
  return TreeBasis(2 * n, std::move(edges));
}

Omega1Modular omega1_modular(std::size_t n, const FTable& lower, const TreeBasis& tree,
                             unsigned workers) {
  if (n == 0) throw InvalidArgument("omega1 needs n >= 1");
  const std::size_t N = 2 * n;
  if (tree.nvertices() != N) throw ArityMismatch("tree must span 2n vertices");
  std::vector<std::size_t> base(n);
  std::iota(base.begin(), base.end(), 1);
  const GrassPoint p0 = GrassPoint::make(n, N, base);
  const MultiPoly anchor = euler_class(p0);
  const unsigned top = static_cast<unsigned>(n * n);

  Omega1Modular out;
  if (n == 1) {
    out.f = anchor;
    out.raw_top = MultiPoly(N);
    out.f_in_tree = change_basis(anchor, tree);
    return out;
  }
  const Omega1ModularSum sum(n, lower);
  InterpolationOptions io;
  io.workers = workers;
  Interpolation r = interpolate_invariant(
      tree, top, [&](const ModField& F, std::span<const std::uint64_t> t) { return sum(F, t); }, io);
  out.raw_top = r.in_t.homogeneous_component(top);
  if (r.in_t.min_degree() == 0) throw Inconsistent("localization sum has a constant term");
  out.f = r.in_t - out.raw_top + anchor;
  std::vector<LinearForm> anchor_u;
  for (const auto& w : tangent_weights(p0)) anchor_u.emplace_back(tree.coordinates(w));
  out.f_in_tree = r.in_u - r.in_u.homogeneous_component(top) + product_of_forms(N - 1, anchor_u);
  out.primes = r.primes;
  return out;
}

Omega1Result omega1_step(std::size_t n, Omega1Method method, const FTable& lower, unsigned workers,
                         bool full_table) {
  if (n == 0) throw InvalidArgument("omega1 needs n >= 1");
  const std::size_t N = 2 * n;
  std::vector<std::size_t> base(n);
  std::iota(base.begin(), base.end(), 1);
  const GrassPoint p0 = GrassPoint::make(n, N, base);

  LocalClassTable table;
  table.m = n;
  table.n = N;
  const auto points = fixed_points(n, N);
  const bool build_table = full_table || method != Omega1Method::modular;
  if (build_table)
    for (const auto& p : points)
      if (p != p0) table.set(p, omega1_stratum_class(p, lower));

  Omega1Result out;
  out.full_table = build_table;
  out.n = n;
  RecoveryOptions ro;
  ro.workers = workers;
  ro.codim = 1;
  switch (method) {
    case Omega1Method::direct: {
      Recovery r = recover_local_class(table, p0, true, ro);
      out.f = std::move(r.local);
      out.raw_top = std::move(r.raw_top);
      break;
    }
    case Omega1Method::grouped: {
      std::vector<std::vector<GrassPoint>> groups(n);
      for (const auto& p : points) {
        const std::size_t k = omega1_depth(p);
        if (k >= 1 && k < n) groups[k].push_back(p);
      }
      Recovery r = recover_local_class_grouped(table, p0, true, groups, ro);
      out.f = std::move(r.local);
      out.raw_top = std::move(r.raw_top);
      break;
    }
    case Omega1Method::gkm: {
      out.f = gkm_solve(gkm_graph(n, N), table, p0, true);
      break;
    }
    case Omega1Method::modular: {
      Omega1Modular r = omega1_modular(n, lower, omega1_default_tree(n), workers);
      out.f = std::move(r.f);
      out.raw_top = std::move(r.raw_top);
      break;
    }
  }
  table.set(p0, out.f);
  out.table = std::move(table);
  return out;
}

Omega1Result omega1_local(std::size_t n, Omega1Method method, const Omega1Options& options) {
  if (n == 0) throw InvalidArgument("omega1 needs n >= 1");
  std::optional<FCache> cache;
  if (options.cache_dir) cache.emplace(*options.cache_dir);
  FTable lower;
  for (std::size_t k = 1; k < n; ++k) {
    std::optional<MultiPoly> f;
    if (cache) f = cache->load(k);
    if (!f) {
      f = omega1_step(k, method, lower, options.workers).f;
      if (cache) cache->store(k, *f);
    }
    lower.emplace(k, std::move(*f));
  }
  Omega1Result r = omega1_step(n, method, lower, options.workers, options.full_table);
  if (cache) cache->store(n, r.f);
  return r;
}

Rational omega1_euler_from_raw_top(const MultiPoly& raw_top, std::size_t n) {
  std::vector<std::size_t> base(n);
  std::iota(base.begin(), base.end(), 1);
  const MultiPoly e = euler_class(GrassPoint::make(n, 2 * n, base));
  if (raw_top.nvars() != e.nvars()) throw ArityMismatch("raw top must live in 2n variables");
  if (raw_top.is_zero()) return 1;
  const auto& lead = raw_top.terms().front();
  const Rational ec = e.coefficient(lead.mono);
  if (ec == 0) throw Inconsistent("raw top degree is not a multiple of the Euler class");
  const Rational c = lead.coef / ec;
  if (raw_top != e * c)
    throw Inconsistent("raw top degree is not a multiple of the Euler class");
  return 1 - c;
}

SchurTable omega1_schur_table(const MultiPoly& f, std::size_t n) {
  if (f.nvars() != 2 * n) throw ArityMismatch("f_n must have 2n variables");
  std::vector<std::size_t> x(n), v(n);
  std::iota(x.begin(), x.end(), 0);
  std::iota(v.begin(), v.end(), n);
  return expand_two_alphabets(f, x, v);
}

MultiPoly toric_quadric_oracle() {
  constexpr std::size_t N = 4;
  const LinearForm a = LinearForm::difference(N, 2, 0);
  const LinearForm b = LinearForm::difference(N, 3, 0);
  const LinearForm c = LinearForm::difference(N, 2, 1);
  const LinearForm d = LinearForm::difference(N, 3, 1);
  const std::vector<LinearForm> all{a, b, c, d};
  auto product = [&](std::initializer_list<LinearForm> forms) {
    const std::vector<LinearForm> v(forms);
    return product_of_forms(N, v);
  };
  // The hypersurface: the equation ad - bc has weight a + d.
  MultiPoly r = (a + d).to_poly();
  // Invariant planes spanned by {a,b}, {a,c}, {b,d}, {c,d}; class = normal weights.
  r += product({c, d}) + product({b, d}) + product({a, c}) + product({a, b});
  // Axes and the origin.
  r += product({b, c, d}) + product({a, c, d}) + product({a, b, d}) + product({a, b, c});
  r += product_of_forms(N, all);
  return r;
}

}  // namespace eqloc
