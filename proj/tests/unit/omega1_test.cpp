#include <map>
#include <numeric>

#include "doctest.h"
#include "eqloc/csm.hpp"
#include "eqloc/errors.hpp"
#include "eqloc/omega1.hpp"
#include "eqloc/poly_text.hpp"
#include "oracles.hpp"

using namespace eqloc;

namespace {

MultiPoly P(const char* text, std::size_t n) { return parse_poly(text, n); }

GrassPoint pt(std::size_t m, std::size_t n, std::vector<std::size_t> s) {
  return GrassPoint::make(m, n, std::move(s));
}

const Omega1Result& direct(std::size_t n) {
  static std::map<std::size_t, Omega1Result> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, omega1_local(n, Omega1Method::direct)).first;
  return it->second;
}

std::vector<std::size_t> range(std::size_t a, std::size_t b) {
  std::vector<std::size_t> r(b - a);
  std::iota(r.begin(), r.end(), a);
  return r;
}

}  // namespace

TEST_CASE("method names") {
  for (auto m : {Omega1Method::direct, Omega1Method::gkm, Omega1Method::grouped, Omega1Method::modular})
    CHECK(parse_omega1_method(to_string(m)) == m);
  CHECK_THROWS_AS(parse_omega1_method("fast"), InvalidArgument);
}

TEST_CASE("depth and stratum classes") {
  CHECK(omega1_depth(pt(2, 4, {1, 2})) == 2);
  CHECK(omega1_depth(pt(2, 4, {1, 3})) == 1);
  CHECK(omega1_depth(pt(2, 4, {3, 4})) == 0);
  FTable f;
  f.emplace(1, P("t2-t1", 2));
  CHECK(omega1_stratum_class(pt(2, 4, {3, 4}), f).is_zero());
  CHECK(omega1_stratum_class(pt(2, 4, {1, 3}), f) ==
        P("(t4-t1)*(1+t2-t1)*(1+t2-t3)*(1+t4-t3)", 4));
  CHECK(omega1_stratum_class(pt(2, 4, {2, 4}), f) ==
        P("(t3-t2)*(1+t1-t2)*(1+t1-t4)*(1+t3-t4)", 4));
  CHECK_THROWS_AS(omega1_stratum_class(pt(2, 4, {1, 2}), f), InvalidArgument);
  CHECK_THROWS_AS(omega1_stratum_class(pt(2, 5, {1, 2}), f), InvalidArgument);
}

TEST_CASE("n = 1 is the fundamental class of a point") {
  const Omega1Result& r = direct(1);
  CHECK(r.f == P("t2-t1", 2));
  CHECK(euler_characteristic(r.table) == 1);
}

TEST_CASE("n = 2 matches the orbit-closure sum of the quadric cone") {
  const Omega1Result& r = direct(2);
  CHECK(r.f == toric_quadric_oracle());
  CHECK(r.f.homogeneous_component(1) == P("t4+t3-t2-t1", 4));
  CHECK(r.f.degree() == 4);
  REQUIRE(r.raw_top.has_value());
  CHECK(*r.raw_top == -4 * euler_class(pt(2, 4, {1, 2})));
  CHECK(omega1_euler_from_raw_top(*r.raw_top, 2) == 5);
  CHECK(euler_characteristic(r.table) == 5);
}

TEST_CASE("n = 2 Schur expansion") {
  const SchurTable t = omega1_schur_table(direct(2).f, 2);
  const std::map<std::string, Partition> q{{"0", Partition()},     {"1", Partition{1}},
                                           {"11", Partition{1, 1}}, {"2", Partition{2}},
                                           {"21", Partition{2, 1}}, {"22", Partition{2, 2}}};
  const std::vector<std::tuple<const char*, const char*, int>> want{
      {"0", "1", 1},  {"0", "11", 1}, {"0", "2", 1},  {"0", "21", 2}, {"0", "22", 1},
      {"1", "0", 1},  {"1", "1", 2},  {"1", "11", 3}, {"1", "2", 1},  {"1", "21", 1},
      {"11", "0", 1}, {"11", "1", 3}, {"11", "2", 1}, {"2", "0", 1},  {"2", "1", 1},
      {"2", "11", 1}, {"21", "0", 2}, {"21", "1", 1}, {"22", "0", 1}};
  CHECK(t.entries.size() == want.size());
  for (const auto& [i, j, c] : want) {
    INFO(i << "," << j);
    CHECK(t.coefficient({q.at(i), q.at(j)}) == c);
  }
  CHECK(reconstruct(t) == direct(2).f);
}

TEST_CASE("n = 3: row of the Schur expansion with I empty") {
  const SchurTable t = omega1_schur_table(direct(3).f, 3);
  const std::vector<std::pair<Partition, int>> row{
      {Partition(), 0},          {Partition{1}, 1},         {Partition{1, 1}, 2},
      {Partition{2}, 2},         {Partition{1, 1, 1}, 4},   {Partition{2, 1}, 5},
      {Partition{3}, 1},         {Partition{2, 1, 1}, 9},   {Partition{3, 1}, 3},
      {Partition{2, 2}, 4},      {Partition{3, 1, 1}, 6},   {Partition{2, 2, 1}, 9},
      {Partition{3, 2}, 3},      {Partition{3, 2, 1}, 8},   {Partition{2, 2, 2}, 4},
      {Partition{3, 3}, 1},      {Partition{3, 3, 1}, 3},   {Partition{3, 2, 2}, 6},
      {Partition{3, 3, 2}, 3},   {Partition{3, 3, 3}, 1}};
  for (const auto& [J, c] : row) {
    INFO(to_string(J));
    CHECK(t.coefficient({Partition(), J}) == c);
  }
  CHECK(reconstruct(t) == direct(3).f);
}

TEST_CASE("all methods agree for n <= 3") {
  for (std::size_t n = 1; n <= 3; ++n) {
    INFO("n=" << n);
    const Omega1Result& d = direct(n);
    for (auto m : {Omega1Method::grouped, Omega1Method::gkm, Omega1Method::modular}) {
      const Omega1Result r = omega1_local(n, m);
      CHECK(r.table == d.table);
      if (m != Omega1Method::gkm) CHECK(r.raw_top == d.raw_top);
    }
  }
}

TEST_CASE("worker count does not change the result") {
  Omega1Options o;
  o.workers = 4;
  CHECK(omega1_local(3, Omega1Method::direct, o).table == direct(3).table);
  CHECK(omega1_local(3, Omega1Method::modular, o).f == direct(3).f);
}

TEST_CASE("structural properties") {
  for (std::size_t n = 1; n <= 3; ++n) {
    INFO("n=" << n);
    const MultiPoly& f = direct(n).f;
    MultiPoly fundamental(2 * n);
    for (std::size_t i = 0; i < n; ++i)
      fundamental += MultiPoly::variable(2 * n, n + i) - MultiPoly::variable(2 * n, i);
    CHECK(f.homogeneous_component(1) == fundamental);
    CHECK(f.min_degree() == 1);
    CHECK(f.degree() == static_cast<int>(n * n));
    CHECK(is_symmetric(f, range(0, n)));
    CHECK(is_symmetric(f, range(n, 2 * n)));
    CHECK(is_translation_invariant(f));
    CHECK(f.homogeneous_component(static_cast<unsigned>(n * n)) == euler_class(GrassPoint::make(n, 2 * n, range(1, n + 1))));
  }
}

TEST_CASE("Euler characteristics count member fixed points") {
  CHECK(euler_characteristic(direct(3).table) == 19);
  REQUIRE(direct(3).raw_top.has_value());
  CHECK(omega1_euler_from_raw_top(*direct(3).raw_top, 3) == 19);
  CHECK_THROWS_AS(omega1_euler_from_raw_top(P("t1", 6), 3), Inconsistent);
}

TEST_CASE("localization sums vanish degreewise at sample points") {
  for (std::size_t n = 2; n <= 3; ++n) {
    const LocalClassTable& t = direct(n).table;
    const testing::Point x = testing::sample_point(2 * n, static_cast<std::uint32_t>(n));
    for (unsigned d = 0; d < n * n; ++d) {
      INFO("n=" << n << " d=" << d);
      const Rational s = testing::localization_value(
          n, 2 * n,
          [&](const std::vector<std::size_t>& subset) {
            return testing::evaluate(t.at(GrassPoint::make(n, 2 * n, subset)).homogeneous_component(d), x);
          },
          x);
      CHECK(s == 0);
    }
  }
}

TEST_CASE("raw top must be a multiple of the Euler class") {
  const MultiPoly e = euler_class(pt(2, 4, {1, 2}));
  CHECK(omega1_euler_from_raw_top(MultiPoly(4), 2) == 1);
  CHECK(omega1_euler_from_raw_top(e * Rational(-7), 2) == 8);
  CHECK_THROWS_AS(omega1_euler_from_raw_top(e + P("t1^4", 4), 2), Inconsistent);
}
