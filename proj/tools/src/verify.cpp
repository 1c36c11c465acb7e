#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>

#include "cli.hpp"
#include "eqloc/cone.hpp"
#include "eqloc/csm.hpp"
#include "eqloc/errors.hpp"
#include "eqloc/grass.hpp"
#include "eqloc/omega1.hpp"
#include "eqloc/poly_text.hpp"
#include "eqloc/positivity.hpp"
#include "eqloc/symfunc.hpp"

namespace eqloc::cli {

namespace {

class Recorder {
 public:
  void check(const std::string& name, const std::function<std::string()>& body) {
    Check c{name, false, {}};
    try {
      c.detail = body();
      c.ok = c.detail.empty();
    } catch (const std::exception& e) {
      c.detail = std::string("exception: ") + e.what();
    }
    checks_.push_back(std::move(c));
  }
  void skip(const std::string& name, const std::string& why) { checks_.push_back({name, true, why}); }
  std::vector<Check> take() { return std::move(checks_); }

 private:
  std::vector<Check> checks_;
};

std::string expect_eq(const MultiPoly& got, const MultiPoly& want) {
  if (got == want) return {};
  return "got " + to_string(got) + ", expected " + to_string(want);
}

MultiPoly c1_power(std::size_t m, unsigned k) {
  MultiPoly s(m);
  for (std::size_t i = 0; i < m; ++i) s -= MultiPoly::variable(m, i);
  return s.pow(k);
}

std::vector<std::size_t> range(std::size_t lo, std::size_t hi) {
  std::vector<std::size_t> v(hi - lo);
  std::iota(v.begin(), v.end(), lo);
  return v;
}

/// Sum of the distinct monomials x^sigma(lambda) in m variables.
MultiPoly monomial_symmetric(const Partition& lambda, std::size_t m) {
  std::vector<unsigned> e(m, 0);
  for (std::size_t i = 0; i < lambda.length(); ++i) e[i] = lambda.part(i);
  std::sort(e.begin(), e.end());
  std::vector<MultiPoly::Term> terms;
  do {
    terms.push_back({Monomial::from_exponents(e), Rational(1)});
  } while (std::next_permutation(e.begin(), e.end()));
  return MultiPoly::from_terms(m, std::move(terms));
}

std::vector<Check> suite_localization(const SuiteOptions&) {
  Recorder r;
  r.check("projective power sums vanish below the dimension and give 1 at it", [] {
    for (std::size_t n = 1; n <= 5; ++n)
      for (unsigned m = 0; m <= n; ++m) {
        const MultiPoly got = integrate_symmetric(c1_power(1, m), 1, n + 1);
        const MultiPoly want = MultiPoly::constant(n + 1, m == n ? 1 : 0);
        if (got != want) return "n=" + std::to_string(n) + " m=" + std::to_string(m) + ": " + to_string(got);
      }
    return std::string();
  });
  r.check("higher powers of c1 give signed complete symmetric functions", [] {
    for (std::size_t n = 1; n <= 4; ++n)
      for (unsigned k = 0; k <= 4; ++k) {
        MultiPoly want = schur(Partition{k}, n + 1);
        if (k % 2 == 1) want = -want;
        const std::string d = expect_eq(integrate_symmetric(c1_power(1, static_cast<unsigned>(n) + k), 1, n + 1), want);
        if (!d.empty()) return "n=" + std::to_string(n) + " k=" + std::to_string(k) + ": " + d;
      }
    return std::string();
  });
  for (auto [m, n] : std::vector<std::pair<std::size_t, std::size_t>>{{1, 3}, {2, 4}, {2, 5}, {3, 6}, {3, 7}}) {
    r.check("volume of Grass_" + std::to_string(m) + "(C^" + std::to_string(n) + ") equals the hook formula",
            [m = m, n = n] {
              const MultiPoly got = integrate_symmetric(c1_power(m, static_cast<unsigned>(m * (n - m))), m, n);
              return expect_eq(got, MultiPoly::constant(n, Rational(hook_degree(m, n))));
            });
  }
  return r.take();
}

std::vector<Check> suite_schur(const SuiteOptions&) {
  Recorder r;
  r.check("S_21 in two variables", [] {
    const std::vector<std::size_t> v{0, 1};
    return expect_eq(schur(Partition{2, 1}, v, 2), parse_poly("t1^2*t2 + t1*t2^2", 2));
  });
  r.check("bialternant division is exact on the 3x3 rectangle", [] {
    for (std::size_t k = 1; k <= 4; ++k)
      for (const auto& p : partitions_in_rectangle(3, 3))
        if (p.length() <= k) (void)schur(p, k);
    return std::string();
  });
  r.check("Pieri: S1*S1 = S2 + S11", [] {
    const MultiPoly s1 = schur(Partition{1}, 3);
    return expect_eq(s1 * s1, schur(Partition{2}, 3) + schur(Partition{1, 1}, 3));
  });
  r.check("dual Cauchy expansion for m = 2, 3", [] {
    for (std::size_t m = 2; m <= 3; ++m) {
      const std::size_t N = 2 * m;
      MultiPoly p = MultiPoly::constant(N, 1);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) p = mul_linear(p, LinearForm::difference(N, m + j, i));
      const SchurTable t = expand_two_alphabets(p, range(0, m), range(m, N));
      const auto rect = partitions_in_rectangle(m, static_cast<unsigned>(m));
      if (t.entries.size() != rect.size()) return std::string("wrong number of entries");
      for (const auto& I : rect) {
        const Partition J = I.conjugate().complement(m, static_cast<unsigned>(m));
        if (t.coefficient({I, J}) != 1) return "missing pair " + to_string(I) + " " + to_string(J);
      }
    }
    return std::string();
  });
  r.check("expansion of a random symmetric polynomial reconstructs it", [] {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
      const std::size_t k = 2 + static_cast<std::size_t>(trial % 3);
      MultiPoly p(k);
      for (const auto& lambda : partitions_in_rectangle(k, 2))
        p += monomial_symmetric(lambda, k) * Rational(static_cast<int>(rng() % 7) - 3);
      const SchurTable t = expand_schur(p, range(0, k));
      if (reconstruct(t) != p) return "trial " + std::to_string(trial);
    }
    return std::string();
  });
  return r.take();
}

std::vector<Check> suite_gysin(const SuiteOptions&) {
  Recorder r;
  for (auto [m, n] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 4}, {2, 5}}) {
    r.check("Schur formula equals localization on Grass_" + std::to_string(m) + "(C^" + std::to_string(n) + ")",
            [m = m, n = n] {
              std::size_t count = 0;
              for (unsigned total = 0; total <= 6; ++total)
                for (unsigned wj = 0; wj <= total; ++wj)
                  for (const auto& J : partitions_of(wj, n - m))
                    for (const auto& K : partitions_of(total - wj, m)) {
                      ++count;
                      const std::string d = expect_eq(gysin_schur_poly(J, K, m, n), gysin_localization(J, K, m, n));
                      if (!d.empty()) return "J=" + to_string(J) + " K=" + to_string(K) + ": " + d;
                    }
              return count == 0 ? std::string("no cases") : std::string();
            });
  }
  return r.take();
}

std::vector<Check> suite_residue(const SuiteOptions&) {
  Recorder r;
  for (auto [m, n] : std::vector<std::pair<std::size_t, std::size_t>>{{1, 3}, {2, 4}}) {
    r.check("residues equal localization on Grass_" + std::to_string(m) + "(C^" + std::to_string(n) + ")",
            [m = m, n = n] {
              std::mt19937 rng(static_cast<unsigned>(100 * m + n));
              const unsigned dim = static_cast<unsigned>(m * (n - m));
              for (int trial = 0; trial < 20; ++trial) {
                const unsigned deg = static_cast<unsigned>(rng() % (dim + 4));
                const auto options = partitions_of(deg, m);
                const Partition lambda = options[rng() % options.size()];
                const MultiPoly W = monomial_symmetric(lambda, m);
                const std::string d = expect_eq(residue_integral(W, m, n), integrate_symmetric(W, m, n));
                if (!d.empty()) return "lambda=" + to_string(lambda) + ": " + d;
              }
              return std::string();
            });
  }
  return r.take();
}

std::vector<Check> suite_omega1_small(const SuiteOptions& so) {
  Recorder r;
  std::map<std::size_t, Omega1Result> direct;
  Omega1Options opts;
  opts.workers = so.workers;
  for (std::size_t n = 1; n <= 3; ++n) {
    const std::string tag = "n=" + std::to_string(n);
    r.check(tag + ": direct, grouped, gkm and modular agree", [&, n] {
      direct[n] = omega1_local(n, Omega1Method::direct, opts);
      const Omega1Result g = omega1_local(n, Omega1Method::grouped, opts);
      const Omega1Result k = omega1_local(n, Omega1Method::gkm, opts);
      const Omega1Result m = omega1_local(n, Omega1Method::modular, opts);
      if (g.table != direct[n].table) return std::string("grouped differs");
      if (k.table != direct[n].table) return std::string("gkm differs");
      if (m.table != direct[n].table) return std::string("modular differs");
      if (m.raw_top != direct[n].raw_top) return std::string("modular raw top differs");
      return std::string();
    });
    if (!direct.count(n)) continue;
    const Omega1Result& res = direct[n];
    r.check(tag + ": degree-one part is the fundamental class", [&, n] {
      MultiPoly want(2 * n);
      for (std::size_t i = 0; i < n; ++i)
        want += MultiPoly::variable(2 * n, n + i) - MultiPoly::variable(2 * n, i);
      return expect_eq(res.f.homogeneous_component(1), want);
    });
    r.check(tag + ": top degree is the Euler class at members and zero elsewhere", [&] {
      for (const auto& p : fixed_points(n, 2 * n)) {
        const MultiPoly top = res.table.at(p).homogeneous_component(static_cast<unsigned>(n * n));
        if (top != degree_zero_anchor(p, omega1_depth(p) >= 1)) return "at " + to_string(p);
      }
      return std::string();
    });
    r.check(tag + ": Euler characteristic counts fixed points in the variety", [&] {
      std::size_t members = 0;
      for (const auto& p : fixed_points(n, 2 * n))
        if (omega1_depth(p) >= 1) ++members;
      const Rational chi = euler_characteristic(res.table);
      return chi == Rational(static_cast<long>(members)) ? std::string() : "got " + to_string(chi);
    });
    r.check(tag + ": localization sum vanishes in every degree below the dimension", [&] {
      for (unsigned d = 0; d < n * n; ++d) {
        const MultiPoly s = degreewise_sum(res.table, d, so.workers);
        if (!s.is_zero()) return "degree " + std::to_string(d);
      }
      return std::string();
    });
    r.check(tag + ": symmetric in each group and translation invariant", [&] {
      if (!is_symmetric(res.f, range(0, n)) || !is_symmetric(res.f, range(n, 2 * n)))
        return std::string("not symmetric");
      if (!is_translation_invariant(res.f)) return std::string("not translation invariant");
      return std::string();
    });
  }
  r.check("n=2 equals the toric orbit-closure sum", [&] {
    if (!direct.count(2)) return std::string("n=2 not computed");
    return expect_eq(direct[2].f, toric_quadric_oracle());
  });
  return r.take();
}

std::vector<Check> suite_positivity(const SuiteOptions&) {
  Recorder r;
  const MultiPoly f2 = omega1_local(2, Omega1Method::gkm).f;
  const std::vector<std::size_t> base{1, 2};
  const auto weights = tangent_weights(GrassPoint::make(2, 4, base));
  const std::vector<std::pair<std::string, bool>> trees{
      {"1>2,2>4,4>3", true}, {"1>2,2>3,2>4", true}, {"1>4,2>4,4>3", true}, {"1>3,2>3,2>4", false}};
  for (const auto& [text, positive] : trees) {
    r.check("tree " + text + (positive ? " is positive and certifies f2" : " is not positive"),
            [&, text = text, positive = positive] {
              const TreeBasis tree = TreeBasis::parse(text, 4);
              if (is_positive_basis(tree, weights) != positive) return std::string("basis positivity mismatch");
              const bool nonneg = check_nonneg(change_basis(f2, tree)).ok;
              if (positive && !nonneg) return std::string("negative coefficient");
              if (!positive && nonneg) return std::string("expected a negative coefficient");
              return std::string();
            });
  }
  return r.take();
}

std::vector<Check> suite_cones(const SuiteOptions&) {
  Recorder r;
  r.check("genus-2 plane quartic cone has a negative coefficient", [] {
    const std::vector<Rational> a{0, 4, -2};
    const MultiPoly c = scalar_cone_class(a);
    const std::string d = expect_eq(c, parse_poly("4*t1 - 2*t1^2 + t1^3", 1));
    if (!d.empty()) return d;
    return check_nonneg(c).ok ? std::string("no negative coefficient") : std::string();
  });
  r.check("whole space gives (1+t)^n", [] {
    for (unsigned n = 1; n <= 6; ++n) {
      std::vector<Rational> a;
      for (unsigned i = 0; i < n; ++i) a.emplace_back(binomial(n, i));
      const std::string d = expect_eq(scalar_cone_class(a), parse_poly("1 + t1", 1).pow(n));
      if (!d.empty()) return d;
    }
    return std::string();
  });
  r.check("projective cone: whole space and the origin", [] {
    const std::vector<LinearForm> w{LinearForm::difference(3, 1, 0), LinearForm::difference(3, 2, 0)};
    MultiPoly full = MultiPoly::constant(3, 1);
    for (const auto& x : w) full += mul_linear(full, x);
    const MultiPoly e = product_of_forms(3, w);
    std::string d = expect_eq(projective_cone_class(full - e, w), full);
    if (d.empty()) d = expect_eq(projective_cone_class(MultiPoly(3), w), e);
    return d;
  });
  return r.take();
}

std::vector<Check> suite_omega1_large(const SuiteOptions& so) {
  Recorder r;
  if (!so.allow_heavy) {
    r.skip("n=4", "skipped; pass --allow-heavy");
    return r.take();
  }
  r.check("n=4: Schur expansion has a negative entry, a positive tree certifies the monomials", [&] {
    FTable lower;
    for (std::size_t k = 1; k < 4; ++k)
      lower.emplace(k, omega1_step(k, Omega1Method::modular, lower, so.workers).f);
    const TreeBasis tree = TreeBasis::parse("1>5,2>5,3>5,4>5,5>6,6>7,7>8", 8);
    const std::vector<std::size_t> base{1, 2, 3, 4};
    if (!is_positive_basis(tree, tangent_weights(GrassPoint::make(4, 8, base))))
      return std::string("tree is not a positive basis");
    const Omega1Modular res = omega1_modular(4, lower, tree, so.workers);
    if (omega1_euler_from_raw_top(res.raw_top, 4) != 69)
      return std::string("Euler characteristic differs from 69");
    const SchurTable t = omega1_schur_table(res.f, 4);
    bool negative = false;
    for (const auto& [key, c] : t.entries) negative = negative || sgn(c) < 0;
    if (!negative) return std::string("no negative Schur coefficient");
    if (!check_nonneg(res.f_in_tree).ok) return std::string("negative monomial coefficient");
    return std::string();
  });
  return r.take();
}

using Suite = std::vector<Check> (*)(const SuiteOptions&);

const std::vector<std::pair<std::string, Suite>>& suites() {
  static const std::vector<std::pair<std::string, Suite>> all{
      {"localization", suite_localization}, {"schur", suite_schur},
      {"gysin", suite_gysin},               {"residue", suite_residue},
      {"omega1-small", suite_omega1_small}, {"positivity", suite_positivity},
      {"cones", suite_cones},               {"omega1-large", suite_omega1_large},
  };
  return all;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& [name, fn] : suites()) out.push_back(name);
  return out;
}

std::vector<Check> run_suite(const std::string& name, const SuiteOptions& options) {
  for (const auto& [n, fn] : suites())
    if (n == name) return fn(options);
  throw InvalidArgument("unknown suite '" + name + "'");
}

}  // namespace eqloc::cli
