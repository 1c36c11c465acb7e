#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace eqloc {

/// Weakly decreasing sequence of positive parts; trailing zeros are trimmed.
class Partition {
 public:
  Partition() = default;
  /// Throws InvalidArgument unless the parts are weakly decreasing.
  explicit Partition(std::vector<unsigned> parts);
  Partition(std::initializer_list<unsigned> parts)
      : Partition(std::vector<unsigned>(parts)) {}

  const std::vector<unsigned>& parts() const noexcept { return parts_; }
  std::size_t length() const noexcept { return parts_.size(); }
  bool empty() const noexcept { return parts_.empty(); }
  unsigned weight() const noexcept;
  /// Part k (0-based), zero past the end.
  unsigned part(std::size_t k) const noexcept { return k < parts_.size() ? parts_[k] : 0; }
  Partition conjugate() const;
  /// Complement inside the rows x cols rectangle, rotated by 180 degrees.
  Partition complement(std::size_t rows, unsigned cols) const;
  bool fits(std::size_t rows, unsigned cols) const noexcept;

  auto operator<=>(const Partition&) const = default;

 private:
  std::vector<unsigned> parts_;
};

/// "(2,1)"; the empty partition prints as "()".
std::string to_string(const Partition& p);
/// Accepts "2,1", "(2,1)", "[2,1]", "", "()" and "0".
Partition parse_partition(std::string_view text);

/// All partitions with at most `rows` parts, each at most `cols`, ordered by
/// weight and then lexicographically descending.
std::vector<Partition> partitions_in_rectangle(std::size_t rows, unsigned cols);

/// All partitions of `weight` with at most `rows` parts, lexicographically
/// descending.
std::vector<Partition> partitions_of(unsigned weight, std::size_t rows);

}  // namespace eqloc
