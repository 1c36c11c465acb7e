#include "eqloc/cache.hpp"

#include <atomic>
#include <cstdlib>
#include <fstream>

#include <unistd.h>

#include "eqloc/errors.hpp"
#include "eqloc/json_io.hpp"

namespace eqloc {

namespace fs = std::filesystem;

std::optional<fs::path> cache_dir_from_env() {
  const char* v = std::getenv(kCacheDirEnv);
  if (v == nullptr || *v == '\0') return std::nullopt;
  return fs::path(v);
}

FCache::FCache(fs::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec || !fs::is_directory(dir_))
    throw InvalidArgument("cannot create cache directory " + dir_.string());
}

fs::path FCache::file_for(std::size_t k) const { return dir_ / ("f_" + std::to_string(k) + ".json"); }

std::optional<MultiPoly> FCache::load(std::size_t k) const {
  std::ifstream in(file_for(k));
  if (!in) return std::nullopt;
  const auto doc = nlohmann::json::parse(in, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) return std::nullopt;
  if (doc.value("format_version", -1) != kCacheFormatVersion) return std::nullopt;
  if (doc.value("k", std::size_t{0}) != k) return std::nullopt;
  MultiPoly f = poly_from_json(doc.at("poly"));
  if (f.nvars() != 2 * k) return std::nullopt;
  return f;
}

void FCache::store(std::size_t k, const MultiPoly& f) const {
  static std::atomic<unsigned> counter{0};
  const nlohmann::json doc = {{"format_version", kCacheFormatVersion},
                              {"k", k},
                              {"nvars", f.nvars()},
                              {"poly", to_json(f)}};
  const fs::path target = file_for(k);
  const fs::path tmp = dir_ / (target.filename().string() + ".tmp." + std::to_string(::getpid()) + "." +
                               std::to_string(counter.fetch_add(1)));
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw InvalidArgument("cannot write cache file " + tmp.string());
    out << doc.dump() << '\n';
    if (!out) throw InvalidArgument("cannot write cache file " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw InvalidArgument("cannot move cache file into " + target.string());
  }
}

}  // namespace eqloc
