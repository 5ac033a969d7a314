#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <type_traits>
#include <utility>
#include <vector>

#include "orlat/rational.hpp"
#include "orlat/vertex.hpp"

namespace orlat {

// Contiguous span of weights along one row; cell i holds abscissa lo + i.
template <class W>
struct RowSpan {
  std::int64_t lo = 0;
  std::vector<W> w;

  std::int64_t hi() const { return lo + static_cast<std::int64_t>(w.size()); }
  bool contains(std::int64_t x) const { return x >= lo && x < hi(); }

  const W* find(std::int64_t x) const { return contains(x) ? &w[x - lo] : nullptr; }

  // Grows the span (zero-filled) so [new_lo, new_hi) is covered.
  void ensure(std::int64_t new_lo, std::int64_t new_hi) {
    if (w.empty()) {
      lo = new_lo;
      w.assign(static_cast<std::size_t>(new_hi - new_lo), W(0));
      return;
    }
    if (new_lo < lo) {
      std::vector<W> grown(static_cast<std::size_t>(hi() - new_lo), W(0));
      for (std::size_t i = 0; i < w.size(); ++i) grown[i + (lo - new_lo)] = std::move(w[i]);
      w = std::move(grown);
      lo = new_lo;
    }
    if (new_hi > hi()) w.resize(static_cast<std::size_t>(new_hi - lo), W(0));
  }

  void add_at(std::int64_t x, const W& v) {
    if (w.empty()) {
      lo = x;
      w.assign(1, W(0));
    } else {
      ensure(std::min(lo, x), std::max(hi(), x + 1));
    }
    w[x - lo] += v;
  }
};

// Finitely supported measure on the lattice, stored row-blocked: a sorted
// map from x2 to a contiguous weight span over x1.  Iteration order is row
// by row, left to right, so reductions are bit-identical across runs.
//
// Works with W = double or W = Rational; total mass below 1 is legitimate
// for killed or truncated measures and the deficit is always the caller's
// to report.
template <class W>
class SparseDistribution {
 public:
  using Rows = std::map<std::int64_t, RowSpan<W>>;

  SparseDistribution() = default;

  static SparseDistribution point(const Vertex& v, W mass = W(1)) {
    SparseDistribution d;
    d.add(v, mass);
    return d;
  }

  const Rows& rows() const { return rows_; }
  Rows& rows() { return rows_; }

  bool empty() const { return rows_.empty(); }

  void add(const Vertex& v, const W& m) {
    auto& row = rows_[v.x2];
    if (row.w.empty()) {
      row.lo = v.x1;
      row.w.assign(1, W(0));
    } else {
      row.ensure(std::min(row.lo, v.x1), std::max(row.hi(), v.x1 + 1));
    }
    row.w[v.x1 - row.lo] += m;
  }

  W at(const Vertex& v) const {
    auto it = rows_.find(v.x2);
    if (it == rows_.end()) return W(0);
    const W* p = it->second.find(v.x1);
    return p ? *p : W(0);
  }

  W mass() const {
    W total(0);
    for (const auto& [r, row] : rows_)
      for (const W& x : row.w) total += x;
    return total;
  }

  // Allocated cells (span sizes), the quantity the resource cap guards.
  std::uint64_t cell_count() const {
    std::uint64_t n = 0;
    for (const auto& [r, row] : rows_) n += row.w.size();
    return n;
  }

  std::uint64_t support_size() const {
    std::uint64_t n = 0;
    for (const auto& [r, row] : rows_)
      for (const W& x : row.w)
        if (x != W(0)) ++n;
    return n;
  }

  // Visits nonzero cells in deterministic (row, abscissa) order.
  template <class F>
  void for_each(F&& f) const {
    for (const auto& [r, row] : rows_)
      for (std::size_t i = 0; i < row.w.size(); ++i)
        if (row.w[i] != W(0)) f(Vertex{row.lo + static_cast<std::int64_t>(i), r}, row.w[i]);
  }

  // Drops cells with |weight| < eps and returns the removed mass.
  // The caller owns reporting that deficit; nothing disappears silently.
  W prune(double eps) {
    W removed(0);
    if (eps <= 0) return removed;
    Rows kept;
    for (auto& [r, row] : rows_) {
      std::int64_t first = -1, last = -1;
      for (std::int64_t i = 0; i < static_cast<std::int64_t>(row.w.size()); ++i) {
        if (keep_weight(row.w[i], eps)) {
          if (first < 0) first = i;
          last = i;
        }
      }
      if (first < 0) {
        for (const W& x : row.w) removed += x;
        continue;
      }
      RowSpan<W> trimmed;
      trimmed.lo = row.lo + first;
      trimmed.w.assign(row.w.begin() + first, row.w.begin() + last + 1);
      for (std::int64_t i = 0; i < first; ++i) removed += row.w[i];
      for (std::int64_t i = last + 1; i < static_cast<std::int64_t>(row.w.size()); ++i)
        removed += row.w[i];
      // interior cells below eps stay: trimming only the flanks keeps spans
      // contiguous and the removed mass exactly accounted.
      kept.emplace(r, std::move(trimmed));
    }
    rows_ = std::move(kept);
    return removed;
  }

 private:
  static bool keep_weight(const W& x, double eps) {
    if constexpr (std::is_same_v<W, double>) {
      return x >= eps || x <= -eps;
    } else {
      (void)eps;
      return x != W(0);
    }
  }

  Rows rows_;
};

}  // namespace orlat
