#pragma once

#include <array>
#include <cstdint>

#include "orlat/orientation.hpp"
#include "orlat/rational.hpp"
#include "orlat/vertex.hpp"

namespace orlat {

struct Neighbor {
  Vertex v;
  Rational p;
};

// Transition kernel of the simple random walk on the oriented lattice:
// both vertical neighbors always, plus the one horizontal neighbor the
// row's orientation allows.  Each outgoing edge has probability 1/out_degree.
//
// Immutable after construction; safe to share across threads.
class Kernel {
 public:
  Kernel() = default;
  explicit Kernel(Orientation o) : orientation_(std::move(o)) {}

  const Orientation& orientation() const { return orientation_; }

  int horizontal_dir(std::int64_t row) const { return orientation_.at(row); }

  int out_degree(const Vertex& u) const { return horizontal_dir(u.x2) == 0 ? 2 : 3; }

  // Neighbors in fixed order (up, down, horizontal) so sampling is
  // reproducible across platforms.
  struct NeighborList {
    std::array<Neighbor, 3> items;
    int count = 0;
    const Neighbor* begin() const { return items.data(); }
    const Neighbor* end() const { return items.data() + count; }
  };

  NeighborList out_neighbors(const Vertex& u) const {
    NeighborList out;
    const int eps = horizontal_dir(u.x2);
    const int d = eps == 0 ? 2 : 3;
    const Rational p(1, d);
    out.items[0] = Neighbor{shifted(u, 0, +1), p};
    out.items[1] = Neighbor{shifted(u, 0, -1), p};
    out.count = 2;
    if (eps != 0) {
      out.items[2] = Neighbor{shifted(u, eps, 0), p};
      out.count = 3;
    }
    return out;
  }

  Rational transition_prob(const Vertex& u, const Vertex& v) const {
    const int eps = horizontal_dir(u.x2);
    const bool vertical = v.x1 == u.x1 && (v.x2 == u.x2 + 1 || v.x2 == u.x2 - 1);
    const bool horizontal = eps != 0 && v.x2 == u.x2 && v.x1 == u.x1 + eps;
    if (!vertical && !horizontal) return Rational(0);
    return Rational(1, eps == 0 ? 2 : 3);
  }

  // Samples one step; rng must yield uniform indices via rng.below(n).
  template <class Rng>
  Vertex step(const Vertex& u, Rng& rng) const {
    const int eps = horizontal_dir(u.x2);
    const int d = eps == 0 ? 2 : 3;
    switch (rng.below(static_cast<std::uint64_t>(d))) {
      case 0: return shifted(u, 0, +1);
      case 1: return shifted(u, 0, -1);
      default: return shifted(u, eps, 0);
    }
  }

 private:
  Orientation orientation_;
};

inline Kernel::NeighborList out_neighbors(const Kernel& k, const Vertex& u) {
  return k.out_neighbors(u);
}

inline Rational transition_prob(const Kernel& k, const Vertex& u, const Vertex& v) {
  return k.transition_prob(u, v);
}

}  // namespace orlat
