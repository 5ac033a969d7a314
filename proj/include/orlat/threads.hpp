#pragma once

#include <cstdlib>
#include <thread>

namespace orlat {

// Worker cap: ORLAT_THREADS if set, hardware concurrency otherwise.
inline int max_threads() {
  static const int n = [] {
    if (const char* s = std::getenv("ORLAT_THREADS")) {
      const int v = std::atoi(s);
      if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
  }();
  return n;
}

}  // namespace orlat
