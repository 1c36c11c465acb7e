#include "eqloc/partition.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "eqloc/errors.hpp"

namespace eqloc {

Partition::Partition(std::vector<unsigned> parts) : parts_(std::move(parts)) {
  while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
  for (std::size_t k = 1; k < parts_.size(); ++k)
    if (parts_[k] > parts_[k - 1]) throw InvalidArgument("partition parts must be weakly decreasing");
}

unsigned Partition::weight() const noexcept {
  return std::accumulate(parts_.begin(), parts_.end(), 0U);
}

Partition Partition::conjugate() const {
  std::vector<unsigned> out(parts_.empty() ? 0 : parts_.front(), 0);
  for (unsigned p : parts_)
    for (unsigned c = 0; c < p; ++c) ++out[c];
  return Partition(std::move(out));
}

bool Partition::fits(std::size_t rows, unsigned cols) const noexcept {
  return parts_.size() <= rows && (parts_.empty() || parts_.front() <= cols);
}

Partition Partition::complement(std::size_t rows, unsigned cols) const {
  if (!fits(rows, cols)) throw InvalidArgument("partition does not fit the rectangle");
  std::vector<unsigned> out(rows);
  for (std::size_t r = 0; r < rows; ++r) out[r] = cols - part(rows - 1 - r);
  return Partition(std::move(out));
}

std::string to_string(const Partition& p) {
  std::string s = "(";
  for (std::size_t k = 0; k < p.length(); ++k) {
    if (k != 0) s += ',';
    s += std::to_string(p.parts()[k]);
  }
  return s + ")";
}

Partition parse_partition(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '(' || s.front() == '[')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == ')' || s.back() == ']')) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  std::vector<unsigned> parts;
  while (!text.empty()) {
    const std::size_t comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    unsigned v = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size())
      throw InvalidArgument("bad partition part '" + std::string(item) + "'");
    parts.push_back(v);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return Partition(std::move(parts));
}

namespace {

void fill(unsigned remaining, unsigned max_part, std::size_t rows, std::vector<unsigned>& cur,
          std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(cur);
    return;
  }
  if (cur.size() == rows) return;
  for (unsigned p = std::min(remaining, max_part); p >= 1; --p) {
    cur.push_back(p);
    fill(remaining - p, p, rows, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Partition> partitions_of(unsigned weight, std::size_t rows) {
  std::vector<Partition> out;
  std::vector<unsigned> cur;
  fill(weight, weight, rows, cur, out);
  return out;
}

std::vector<Partition> partitions_in_rectangle(std::size_t rows, unsigned cols) {
  std::vector<Partition> out;
  const unsigned max_weight = static_cast<unsigned>(rows) * cols;
  for (unsigned w = 0; w <= max_weight; ++w) {
    std::vector<unsigned> cur;
    std::vector<Partition> level;
    fill(w, cols, rows, cur, level);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

}  // namespace eqloc
