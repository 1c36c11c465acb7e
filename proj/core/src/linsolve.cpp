#include "eqloc/linsolve.hpp"

#include <string>

#include "eqloc/errors.hpp"

namespace eqloc {

void SparseLinearSystem::add_equation(Row row, Rational rhs) {
  for (auto it = row.begin(); it != row.end();) {
    if (it->first >= ncols_) throw InvalidArgument("equation refers to an unknown out of range");
    it = sgn(it->second) == 0 ? row.erase(it) : std::next(it);
  }
  // Eliminate existing pivots in increasing column order; fill-in only
  // appears to the right of the column being eliminated.
  auto it = row.begin();
  while (it != row.end()) {
    const auto piv = pivots_.find(it->first);
    if (piv == pivots_.end()) {
      ++it;
      continue;
    }
    const Rational factor = it->second;
    const std::size_t col = it->first;
    for (const auto& [c, v] : piv->second.row) {
      auto& slot = row[c];
      slot -= factor * v;
    }
    rhs -= factor * piv->second.rhs;
    for (auto jt = row.upper_bound(col); jt != row.end();) {
      jt = sgn(jt->second) == 0 ? row.erase(jt) : std::next(jt);
    }
    it = row.erase(row.find(col));
  }
  if (row.empty()) {
    if (sgn(rhs) != 0) throw Inconsistent("linear system has no solution");
    return;
  }
  const Rational lead = row.begin()->second;
  for (auto& [c, v] : row) v /= lead;
  rhs /= lead;
  const std::size_t col = row.begin()->first;
  pivots_.emplace(col, Pivot{std::move(row), std::move(rhs)});
}

std::vector<Rational> SparseLinearSystem::solve() const {
  if (pivots_.size() < ncols_)
    throw Underdetermined("linear system has " + std::to_string(ncols_ - pivots_.size()) +
                          " free unknowns");
  std::vector<Rational> x(ncols_);
  for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
    Rational v = it->second.rhs;
    for (const auto& [c, a] : it->second.row)
      if (c != it->first) v -= a * x[c];
    x[it->first] = v;
  }
  return x;
}

}  // namespace eqloc
