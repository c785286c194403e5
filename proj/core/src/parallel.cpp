#include "cprlab/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace cprlab {

std::size_t worker_count() {
  std::size_t hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* cap = std::getenv("CPR_LAB_THREADS")) {
    try {
      long parsed = std::stol(cap);
      if (parsed >= 1) return std::min(hw, static_cast<std::size_t>(parsed));
    } catch (...) {
      // Unparseable value: fall back to hardware concurrency.
    }
  }
  return hw;
}

}  // namespace cprlab
