#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string_view>

#include "eqloc/grass.hpp"
#include "eqloc/positivity.hpp"
#include "eqloc/poly.hpp"
#include "eqloc/symfunc.hpp"

namespace eqloc {

/// Ways to recover the unknown local class at the most singular point.
enum class Omega1Method { direct, gkm, grouped, modular };

std::string_view to_string(Omega1Method m);
/// Throws InvalidArgument for unknown names.
Omega1Method parse_omega1_method(std::string_view name);

/// f_k in the ring t1..t2k: u-slots t1..tk, v-slots t(k+1)..t2k.
using FTable = std::map<std::size_t, MultiPoly>;

/// |I n {1..n}|, the size of the determinantal singularity at p_I.
std::size_t omega1_depth(const GrassPoint& p);

/// Local class of Omega_1(n) at p_I (n = p.m, ambient C^2n): f_k with
/// u <- t_A and v <- t_B', times (1 + w) over the tangent weights outside A x B',
/// where A = I n {1..n} and B' = {n+1..2n} \ I. Zero when k = 0.
MultiPoly omega1_stratum_class(const GrassPoint& p, const FTable& f);

struct Omega1Options {
  unsigned workers = 1;
  /// With the modular method, false keeps only f in the table (the other
  /// local classes are large for n >= 4 and the method does not need them).
  bool full_table = true;
  std::optional<std::filesystem::path> cache_dir;
};

struct Omega1Result {
  std::size_t n = 0;
  MultiPoly f;
  /// Local classes at every fixed point of Grass_n(C^2n), f included.
  LocalClassTable table;
  bool full_table = true;
  /// -sum of the other points' contributions in the top degree; absent for gkm.
  std::optional<MultiPoly> raw_top;
};

/// f_n from the lower f_k (which must all be present in `lower`).
Omega1Result omega1_step(std::size_t n, Omega1Method method, const FTable& lower,
                         unsigned workers = 1, bool full_table = true);

/// chi = 1 - raw_top / e at the most singular point; throws Inconsistent
/// unless raw_top is a rational multiple of that Euler class.
Rational omega1_euler_from_raw_top(const MultiPoly& raw_top, std::size_t n);

struct Omega1Modular {
  MultiPoly f;
  /// f in the coordinates u1..u(2n-1) of the interpolation tree.
  MultiPoly f_in_tree;
  MultiPoly raw_top;
  std::size_t primes = 0;
};

/// f_n from values of the grouped localization sum modulo primes, with every
/// degree below the top read off one interpolant and the top taken from the
/// Euler class. `tree` must span 2n vertices.
Omega1Modular omega1_modular(std::size_t n, const FTable& lower, const TreeBasis& tree,
                             unsigned workers = 1);

/// Chain tree 1>2,2>3,... on 2n vertices.
TreeBasis omega1_default_tree(std::size_t n);

/// f_n by induction on k, reusing and filling the cache when one is given.
Omega1Result omega1_local(std::size_t n, Omega1Method method, const Omega1Options& options = {});

/// f as sum a_{I,J} S_I(-t1..-tn) S_J(t(n+1)..t2n).
SchurTable omega1_schur_table(const MultiPoly& f, std::size_t n);

/// Local class of the quadric cone ad = bc as the sum of its orbit closures,
/// with a = t3-t1, b = t4-t1, c = t3-t2, d = t4-t2.
MultiPoly toric_quadric_oracle();

}  // namespace eqloc
