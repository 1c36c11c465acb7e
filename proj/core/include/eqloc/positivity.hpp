#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eqloc/linear_form.hpp"
#include "eqloc/poly.hpp"

namespace eqloc {

/// Oriented edge tail > head, standing for the generator u = t_head - t_tail (1-based vertices).
struct TreeEdge {
  std::size_t tail = 0;
  std::size_t head = 0;
};

/// Spanning tree on vertices 1..N whose edges give a basis u1..u(N-1) of
/// the lattice of character differences.
class TreeBasis {
 public:
  /// Throws InvalidArgument unless the edges form a spanning tree on 1..nvertices.
  TreeBasis(std::size_t nvertices, std::vector<TreeEdge> edges);
  /// Parses "1>2,2>4,4>3".
  static TreeBasis parse(std::string_view text, std::size_t nvertices);

  std::size_t nvertices() const noexcept { return nvertices_; }
  const std::vector<TreeEdge>& edges() const noexcept { return edges_; }

  /// t_v in terms of u with t1 = 0: the signed edges on the path from 1 to v.
  const std::vector<std::int64_t>& path(std::size_t vertex) const { return paths_.at(vertex - 1); }
  /// Coordinates of a difference form in the u basis; throws
  /// NotTranslationInvariant when the coefficients do not sum to zero.
  std::vector<std::int64_t> coordinates(const LinearForm& w) const;

 private:
  std::size_t nvertices_;
  std::vector<TreeEdge> edges_;
  std::vector<std::vector<std::int64_t>> paths_;
};

std::string to_string(const TreeBasis& tree);

/// sum_i dp/dt_i == 0, i.e. p(t + c) = p(t).
bool is_translation_invariant(const MultiPoly& p);

/// p rewritten as a polynomial in u1..u(N-1).
MultiPoly change_basis(const MultiPoly& p, const TreeBasis& tree);

/// Every weight has nonnegative coordinates in the tree basis.
bool is_positive_basis(const TreeBasis& tree, std::span<const LinearForm> weights);

struct NonnegReport {
  bool ok = true;
  std::vector<MultiPoly::Term> negative;
};

NonnegReport check_nonneg(const MultiPoly& p);

}  // namespace eqloc
