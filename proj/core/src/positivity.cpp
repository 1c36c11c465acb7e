#include "eqloc/positivity.hpp"

#include <charconv>
#include <deque>

#include "eqloc/errors.hpp"

namespace eqloc {

namespace {

std::size_t parse_vertex(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw InvalidArgument("bad tree vertex '" + std::string(s) + "'");
  return v;
}

}  // namespace

TreeBasis::TreeBasis(std::size_t nvertices, std::vector<TreeEdge> edges)
    : nvertices_(nvertices), edges_(std::move(edges)) {
  if (nvertices == 0) throw InvalidArgument("tree needs at least one vertex");
  if (edges_.size() + 1 != nvertices)
    throw InvalidArgument("a spanning tree on " + std::to_string(nvertices) + " vertices needs " +
                          std::to_string(nvertices - 1) + " edges");
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(nvertices);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto [a, b] = edges_[e];
    if (a < 1 || a > nvertices || b < 1 || b > nvertices || a == b)
      throw InvalidArgument("tree edge has a bad endpoint");
    adj[a - 1].emplace_back(b - 1, e);
    adj[b - 1].emplace_back(a - 1, e);
  }
  paths_.assign(nvertices, {});
  std::vector<bool> seen(nvertices, false);
  paths_[0].assign(edges_.size(), 0);
  seen[0] = true;
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (const auto& [w, e] : adj[v]) {
      if (seen[w]) continue;
      seen[w] = true;
      paths_[w] = paths_[v];
      // u_e = t_head - t_tail
      paths_[w][e] += edges_[e].head - 1 == w ? 1 : -1;
      queue.push_back(w);
    }
  }
  for (bool s : seen)
    if (!s) throw InvalidArgument("tree edges do not connect every vertex");
}

TreeBasis TreeBasis::parse(std::string_view text, std::size_t nvertices) {
  std::vector<TreeEdge> edges;
  while (!text.empty()) {
    const std::size_t comma = text.find(',');
    const std::string_view item = text.substr(0, comma);
    const std::size_t gt = item.find('>');
    if (gt == std::string_view::npos) throw InvalidArgument("tree edge must look like 1>2");
    edges.push_back({parse_vertex(item.substr(0, gt)), parse_vertex(item.substr(gt + 1))});
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return TreeBasis(nvertices, std::move(edges));
}

std::string to_string(const TreeBasis& tree) {
  std::string s;
  for (const auto& e : tree.edges()) {
    if (!s.empty()) s += ',';
    s += std::to_string(e.tail) + ">" + std::to_string(e.head);
  }
  return s;
}

std::vector<std::int64_t> TreeBasis::coordinates(const LinearForm& w) const {
  if (w.nvars() != nvertices_) throw ArityMismatch("form and tree have different numbers of vertices");
  if (w.coefficient_sum() != 0) throw NotTranslationInvariant("form is not a difference of characters");
  std::vector<std::int64_t> u(edges_.size(), 0);
  for (std::size_t v = 0; v < nvertices_; ++v) {
    const std::int64_t c = w.coeff(v);
    if (c == 0) continue;
    for (std::size_t e = 0; e < u.size(); ++e) u[e] += c * paths_[v][e];
  }
  return u;
}

bool is_translation_invariant(const MultiPoly& p) {
  MultiPoly total(p.nvars());
  for (std::size_t v = 0; v < p.nvars(); ++v) total += partial_derivative(p, v);
  return total.is_zero();
}

MultiPoly change_basis(const MultiPoly& p, const TreeBasis& tree) {
  if (p.nvars() != tree.nvertices()) throw ArityMismatch("polynomial and tree have different numbers of vertices");
  if (!is_translation_invariant(p)) throw NotTranslationInvariant("polynomial is not translation invariant");
  const std::size_t nu = tree.edges().size();
  AffineMap map;
  map.target_nvars = nu;
  for (std::size_t v = 1; v <= tree.nvertices(); ++v) {
    AffineImage img;
    for (auto c : tree.path(v)) img.coeffs.emplace_back(static_cast<long>(c));
    map.images.push_back(std::move(img));
  }
  return substitute_linear(p, map);
}

bool is_positive_basis(const TreeBasis& tree, std::span<const LinearForm> weights) {
  for (const auto& w : weights)
    for (auto c : tree.coordinates(w))
      if (c < 0) return false;
  return true;
}

NonnegReport check_nonneg(const MultiPoly& p) {
  NonnegReport r;
  for (const auto& t : p.terms())
    if (sgn(t.coef) < 0) r.negative.push_back(t);
  r.ok = r.negative.empty();
  return r;
}

}  // namespace eqloc
