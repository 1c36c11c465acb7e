#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>

#include "eqloc/poly.hpp"

namespace eqloc {

inline constexpr int kCacheFormatVersion = 1;

/// Name of the environment variable that sets the default cache directory.
inline constexpr const char* kCacheDirEnv = "EQLOC_CACHE_DIR";

/// The directory named by EQLOC_CACHE_DIR, if set and nonempty.
std::optional<std::filesystem::path> cache_dir_from_env();

/// On-disk store of the local classes f_k, one JSON file per k.
class FCache {
 public:
  /// Creates the directory if needed; throws InvalidArgument if it cannot.
  explicit FCache(std::filesystem::path dir);

  std::filesystem::path file_for(std::size_t k) const;
  /// Nothing when the file is missing or written by another format version.
  std::optional<MultiPoly> load(std::size_t k) const;
  /// Writes to a temporary file and renames it into place.
  void store(std::size_t k, const MultiPoly& f) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace eqloc
