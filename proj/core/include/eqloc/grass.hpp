#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "eqloc/linear_form.hpp"
#include "eqloc/partition.hpp"
#include "eqloc/poly.hpp"

namespace eqloc {

/// Coordinate subspace p_lambda of Grass_m(C^n); subset entries are 1-based.
struct GrassPoint {
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<std::size_t> subset;

  /// Throws InvalidArgument unless subset is a strictly increasing m-subset of 1..n.
  static GrassPoint make(std::size_t m, std::size_t n, std::vector<std::size_t> subset);

  bool contains(std::size_t k) const;
  /// Elements of 1..n outside the subset, increasing.
  std::vector<std::size_t> complement() const;

  auto operator<=>(const GrassPoint&) const = default;
};

/// "{1,3}".
std::string to_string(const GrassPoint& p);

/// All C(n,m) fixed points in lexicographic order of subsets.
std::vector<GrassPoint> fixed_points(std::size_t m, std::size_t n);

/// t_l - t_k for k in the subset (outer) and l outside it (inner, increasing).
std::vector<LinearForm> tangent_weights(const GrassPoint& p);

/// Product of the tangent weights.
MultiPoly euler_class(const GrassPoint& p);

/// Local classes indexed by fixed point, all in the ring t1..tn.
struct LocalClassTable {
  std::size_t m = 0;
  std::size_t n = 0;
  std::map<std::vector<std::size_t>, MultiPoly> classes;

  /// Zero polynomial for points absent from the table.
  MultiPoly at(const GrassPoint& p) const;
  void set(const GrassPoint& p, MultiPoly value);
  bool operator==(const LocalClassTable&) const = default;
};

struct IntegrateOptions {
  unsigned workers = 1;
  std::optional<unsigned> degree_cap;
};

/// Sum over fixed points of value / euler_class; throws NotPolynomial if the
/// table is not a global class.
MultiPoly integrate(const LocalClassTable& values, const IntegrateOptions& options = {});

/// W(t_k : k in the subset) as a polynomial in t1..tn.
MultiPoly instantiate(const MultiPoly& W, const GrassPoint& p);

/// Integral of W(roots of the tautological bundle); W has m variables and must be symmetric.
MultiPoly integrate_symmetric(const MultiPoly& W, std::size_t m, std::size_t n,
                              const IntegrateOptions& options = {});

/// Integral of S_J(Q) S_K(R) written as sign * S_I(t1..tn); sign 0 means the integral vanishes.
struct GysinResult {
  int sign = 0;
  Partition I;
};

GysinResult gysin_schur(const Partition& J, const Partition& K, std::size_t m, std::size_t n);
MultiPoly gysin_schur_poly(const Partition& J, const Partition& K, std::size_t m, std::size_t n);
/// The same integral evaluated by summing over fixed points.
MultiPoly gysin_localization(const Partition& J, const Partition& K, std::size_t m, std::size_t n);

/// (1/m!) Res_{z1=inf} ... Res_{zm=inf} W(z) prod_{i!=j}(z_i - z_j) / prod_{i,j}(t_i - z_j).
MultiPoly residue_integral(const MultiPoly& W, std::size_t m, std::size_t n);

struct GKMEdge {
  std::size_t from = 0;  // vertex index
  std::size_t to = 0;
  LinearForm label;      // t_j - t_i where to = (from \ {i}) u {j}
};

struct GKMGraph {
  std::vector<GrassPoint> vertices;
  std::vector<GKMEdge> edges;

  std::size_t index_of(const GrassPoint& p) const;
  /// Neighbors of vertex v with the edge label oriented away from v.
  std::vector<std::pair<std::size_t, LinearForm>> neighbors(std::size_t v) const;
};

GKMGraph gkm_graph(std::size_t m, std::size_t n);

}  // namespace eqloc
