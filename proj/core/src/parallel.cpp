#include "eqloc/parallel.hpp"

namespace eqloc {

unsigned hardware_workers() noexcept {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1U : n;
}

}  // namespace eqloc
