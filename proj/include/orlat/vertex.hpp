#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>

namespace orlat {

// Lattice site (x1, x2) on Z^2. Coordinates are 64-bit; arithmetic that
// would wrap throws instead of producing a bogus vertex.
struct Vertex {
  std::int64_t x1 = 0;
  std::int64_t x2 = 0;

  friend bool operator==(const Vertex&, const Vertex&) = default;

  // Row-major order (x2 first): matches the row-blocked storage used by
  // the distribution engine, so "sorted by vertex" is one deterministic order
  // everywhere.
  friend bool operator<(const Vertex& a, const Vertex& b) {
    if (a.x2 != b.x2) return a.x2 < b.x2;
    return a.x1 < b.x1;
  }
};

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw std::overflow_error("vertex coordinate overflow");
  return r;
}

inline Vertex shifted(const Vertex& v, std::int64_t d1, std::int64_t d2) {
  return Vertex{checked_add(v.x1, d1), checked_add(v.x2, d2)};
}

// Point reflection through c = (c1, 0); maps the lattice onto itself.
inline Vertex reflected(const Vertex& v, std::int64_t c1 = 0) {
  return Vertex{checked_add(checked_add(c1, c1), -v.x1), -v.x2};
}

inline std::ostream& operator<<(std::ostream& os, const Vertex& v) {
  return os << "(" << v.x1 << "," << v.x2 << ")";
}

}  // namespace orlat

template <>
struct std::hash<orlat::Vertex> {
  std::size_t operator()(const orlat::Vertex& v) const noexcept {
    std::uint64_t h = static_cast<std::uint64_t>(v.x1) * 0x9e3779b97f4a7c15ULL;
    h ^= static_cast<std::uint64_t>(v.x2) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};
