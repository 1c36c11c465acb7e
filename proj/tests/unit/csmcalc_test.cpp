#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "eqloc/cache.hpp"
#include "eqloc/cone.hpp"
#include "eqloc/csm.hpp"
#include "eqloc/errors.hpp"
#include "eqloc/linsolve.hpp"
#include "eqloc/poly_text.hpp"
#include "oracles.hpp"

using namespace eqloc;

namespace {

MultiPoly P(const char* text, std::size_t n) { return parse_poly(text, n); }

LinearForm diff(std::size_t n, std::size_t plus, std::size_t minus) {
  return LinearForm::difference(n, plus - 1, minus - 1);
}

GrassPoint pt(std::size_t m, std::size_t n, std::vector<std::size_t> s) {
  return GrassPoint::make(m, n, std::move(s));
}

/// The line {x3 = 0} in P^2: smooth, through {1} and {2}.
LocalClassTable line_in_plane() {
  LocalClassTable t;
  t.m = 1;
  t.n = 3;
  const std::vector<LinearForm> tan1{diff(3, 2, 1)}, nor1{diff(3, 3, 1)};
  const std::vector<LinearForm> tan2{diff(3, 1, 2)}, nor2{diff(3, 3, 2)};
  t.set(pt(1, 3, {1}), smooth_local_class(3, tan1, nor1));
  t.set(pt(1, 3, {2}), smooth_local_class(3, tan2, nor2));
  t.set(pt(1, 3, {3}), MultiPoly(3));
  return t;
}

HPoly hp(std::initializer_list<const char*> coeffs, std::size_t n) {
  HPoly r;
  for (const char* c : coeffs) r.push_back(P(c, n));
  return r;
}

}  // namespace

TEST_CASE("smooth local classes") {
  const std::vector<LinearForm> tan{diff(3, 2, 1)}, nor{diff(3, 3, 1)};
  CHECK(smooth_local_class(3, tan, nor) == P("(t3-t1)*(1+t2-t1)", 3));
  CHECK(smooth_local_class(3, {}, {}) == MultiPoly::constant(3, 1));
  CHECK(degree_zero_anchor(pt(1, 3, {2}), true) == euler_class(pt(1, 3, {2})));
  CHECK(degree_zero_anchor(pt(1, 3, {2}), false).is_zero());
}

TEST_CASE("recovering the class at one point of a smooth subvariety") {
  const LocalClassTable full = line_in_plane();
  LocalClassTable known = full;
  known.classes.erase({1});
  const GrassPoint p1 = pt(1, 3, {1});
  const Recovery r = recover_local_class(known, p1, true);
  CHECK(r.local == full.at(p1));
  CHECK(r.raw_top == -euler_class(p1));
  const std::vector<std::vector<GrassPoint>> groups{{pt(1, 3, {2})}, {pt(1, 3, {3})}};
  CHECK(recover_local_class_grouped(known, p1, true, groups).local == full.at(p1));
}

TEST_CASE("Euler characteristics") {
  CHECK(euler_characteristic(line_in_plane()) == 2);
  for (std::size_t n = 2; n <= 4; ++n) {
    // The whole projective space: prod (1 + w) at each point.
    LocalClassTable t;
    t.m = 1;
    t.n = n;
    for (const auto& p : fixed_points(1, n)) {
      const auto w = tangent_weights(p);
      t.set(p, smooth_local_class(n, w, {}));
    }
    CHECK(euler_characteristic(t) == Rational(static_cast<long>(n)));
    for (unsigned d = 0; d + 1 < n; ++d) CHECK(degreewise_sum(t, d).is_zero());
  }
}

TEST_CASE("degreewise sums flag an inconsistent table") {
  LocalClassTable t = line_in_plane();
  t.set(pt(1, 3, {3}), P("t1-t3", 3));
  CHECK_THROWS_AS(degreewise_sum(t, 1), NotPolynomial);
  t.set(pt(1, 3, {3}), P("(t1-t3)*(t2-t3)", 3));
  CHECK(degreewise_sum(t, 1).is_zero());
  CHECK(euler_characteristic(t) == 3);
}

TEST_CASE("GKM congruences on P^1") {
  const GKMGraph g = gkm_graph(1, 2);
  LocalClassTable known;
  known.m = 1;
  known.n = 2;
  known.set(pt(1, 2, {2}), P("1 + t1 - t2", 2));
  CHECK(gkm_solve(g, known, pt(1, 2, {1}), true) == P("1 + t2 - t1", 2));
  known.set(pt(1, 2, {2}), P("t1 - t2", 2));
  CHECK(gkm_solve(g, known, pt(1, 2, {1}), true) == P("t2 - t1", 2));
}

TEST_CASE("GKM agrees with localization on P^2 and Grass_2(C^4)") {
  for (auto [m, n] : {std::pair<std::size_t, std::size_t>{1, 3}, {2, 4}}) {
    LocalClassTable t;
    t.m = m;
    t.n = n;
    for (const auto& p : fixed_points(m, n)) t.set(p, smooth_local_class(n, tangent_weights(p), {}));
    const GrassPoint p0 = fixed_points(m, n).front();
    LocalClassTable known = t;
    known.classes.erase(p0.subset);
    CHECK(gkm_solve(gkm_graph(m, n), known, p0, true) == t.at(p0));
    CHECK(recover_local_class(known, p0, true).local == t.at(p0));
  }
}

TEST_CASE("monomials of a degree") {
  const auto m = monomials_of_degree(2, 2);
  REQUIRE(m.size() == 3);
  CHECK(m[0] == Monomial::variable(1, 2));
  CHECK(monomials_of_degree(4, 3).size() == 20);
}

TEST_CASE("cone classes") {
  const std::vector<Rational> a{0, 4, -2};
  CHECK(scalar_cone_class(a) == P("t1^3 - 2*t1^2 + 4*t1", 1));
  const std::vector<LinearForm> w{diff(3, 2, 1), diff(3, 3, 1)};
  CHECK(projective_cone_class(P("t1", 3), w) == P("t1 + (t2-t1)*(t3-t1)", 3));
  const auto s = elementary_symmetric(3, w);
  REQUIRE(s.size() == 3);
  CHECK(s[0] == MultiPoly::constant(3, 1));
  CHECK(s[1] == P("t2+t3-2*t1", 3));
  CHECK(s[2] == P("(t2-t1)*(t3-t1)", 3));
}

TEST_CASE("h substitution") {
  const std::vector<Rational> a{0, 1};
  const HPoly b = h_substitution(a);
  REQUIRE(b.size() == 2);
  CHECK(b[0] == P("t1", 1));
  CHECK(b[1] == MultiPoly::constant(1, 1));
  // (h+t)^2 = h^2 + 2t h + t^2
  const std::vector<Rational> sq{0, 0, 1};
  const HPoly c = h_substitution(sq);
  REQUIRE(c.size() == 3);
  CHECK(c[0] == P("t1^2", 1));
  CHECK(c[1] == P("2*t1", 1));
  CHECK(c[2] == MultiPoly::constant(1, 1));
}

TEST_CASE("reduction modulo the projective bundle relation") {
  const std::vector<LinearForm> one{diff(2, 2, 1)};
  // h + w = 0
  HPoly r = h_reduce(hp({"0", "1"}, 2), one, 2);
  r.resize(1, MultiPoly(2));
  CHECK(r[0] == P("t1-t2", 2));
  HPoly inv = h_inverse_scaled(one, 2);
  inv.resize(1, MultiPoly(2));
  CHECK(inv[0] == MultiPoly::constant(2, -1));
  // w h^-1 times h is w after reduction.
  const std::vector<LinearForm> two{diff(3, 2, 1), diff(3, 3, 1)};
  const HPoly i2 = h_inverse_scaled(two, 3);
  HPoly prod = h_reduce(h_multiply(i2, hp({"0", "1"}, 3), 3), two, 3);
  prod.resize(2, MultiPoly(3));
  CHECK(prod[0] == P("(t2-t1)*(t3-t1)", 3));
  CHECK(prod[1].is_zero());
}

TEST_CASE("sparse linear systems") {
  SparseLinearSystem s(2);
  s.add_equation({{0, 1}, {1, 1}}, 3);
  CHECK_THROWS_AS(s.solve(), Underdetermined);
  s.add_equation({{0, 1}, {1, -1}}, 1);
  CHECK(s.solve() == std::vector<Rational>{2, 1});
  CHECK_NOTHROW(s.add_equation({{0, 2}}, 4));
  CHECK(s.rank() == 2);
  CHECK_THROWS_AS(s.add_equation({{1, 1}}, 5), Inconsistent);
}

TEST_CASE("local class cache") {
  const auto dir = std::filesystem::temp_directory_path() / "eqloc_csmcalc_cache";
  std::filesystem::remove_all(dir);
  const FCache cache(dir);
  CHECK_FALSE(cache.load(2).has_value());
  const MultiPoly f = P("t4+t3-t2-t1 + 1/2*t1*t4", 4);
  cache.store(2, f);
  REQUIRE(cache.load(2).has_value());
  CHECK(*cache.load(2) == f);
  CHECK_FALSE(cache.load(1).has_value());
  {
    std::ofstream out(cache.file_for(1));
    out << R"({"format_version": 999, "k": 1, "poly": {"nvars": 2, "terms": []}})";
  }
  CHECK_FALSE(cache.load(1).has_value());
  {
    std::ofstream out(cache.file_for(3));
    out << "not json";
  }
  CHECK_FALSE(cache.load(3).has_value());
  std::filesystem::remove_all(dir);
}
