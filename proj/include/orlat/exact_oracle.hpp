#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

#include "orlat/distribution.hpp"
#include "orlat/errors.hpp"
#include "orlat/kernel.hpp"
#include "orlat/threads.hpp"

namespace orlat {

struct EvolveOptions {
  // Allocated-cell cap across the evolving support; exceeding it throws.
  std::uint64_t support_cap = 400'000'000;
  // Float mode only: weights below this are dropped at row flanks, with the
  // removed mass returned to the caller.  0 keeps the evolution exact.
  double prune_threshold = 0.0;
};

namespace detail {

// out[x] += p * src[x + shift drawn from src.lo+shift .. ), dense inner loop.
template <class W>
inline void accumulate_shifted(RowSpan<W>& out, const RowSpan<W>& src, std::int64_t shift,
                               const W& p) {
  if (src.w.empty()) return;
  const std::int64_t base = src.lo + shift - out.lo;
  W* o = out.w.data() + base;
  const W* s = src.w.data();
  const std::size_t n = src.w.size();
  if constexpr (std::is_same_v<W, double>) {
    const double pd = p;
    for (std::size_t i = 0; i < n; ++i) o[i] += pd * s[i];
  } else {
    for (std::size_t i = 0; i < n; ++i)
      if (s[i] != W(0)) o[i] += p * s[i];
  }
}

struct SpanBound {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  bool set = false;
  void merge(std::int64_t l, std::int64_t h) {
    if (!set) {
      lo = l;
      hi = h;
      set = true;
    } else {
      if (l < lo) lo = l;
      if (h > hi) hi = h;
    }
  }
};

}  // namespace detail

// One transition of the law.  When `axis_sink` is non-null the step realizes
// the killed kernel: every transition landing on row 0 is removed from the
// evolving measure and binned by abscissa instead.
template <class W>
SparseDistribution<W> evolve_step(const Kernel& k, const SparseDistribution<W>& d,
                                  const EvolveOptions& opts = {},
                                  RowSpan<W>* axis_sink = nullptr) {
  using detail::SpanBound;
  std::map<std::int64_t, SpanBound> plan;
  for (const auto& [r, row] : d.rows()) {
    if (row.w.empty()) continue;
    plan[checked_add(r, +1)].merge(row.lo, row.hi());
    plan[checked_add(r, -1)].merge(row.lo, row.hi());
    const int eps = k.horizontal_dir(r);
    if (eps != 0) plan[r].merge(row.lo + eps, row.hi() + eps);
  }

  std::uint64_t cells = 0;
  for (const auto& [r, b] : plan)
    if (!(axis_sink && r == 0)) cells += static_cast<std::uint64_t>(b.hi - b.lo);
  if (cells > opts.support_cap)
    throw ResourceError("evolution support exceeds cap (" + std::to_string(cells) +
                        " cells); raise EvolveOptions::support_cap or shorten the horizon");

  SparseDistribution<W> out;
  std::vector<std::pair<const std::int64_t, detail::SpanBound>*> order;
  order.reserve(plan.size());
  for (auto& kv : plan) {
    if (axis_sink && kv.first == 0) continue;
    auto& row = out.rows()[kv.first];
    row.lo = kv.second.lo;
    row.w.assign(static_cast<std::size_t>(kv.second.hi - kv.second.lo), W(0));
    order.push_back(&kv);
  }

  std::vector<RowSpan<W>*> targets;
  targets.reserve(order.size());
  for (auto* kv : order) targets.push_back(&out.rows()[kv->first]);

  const auto fill_row = [&](std::size_t idx) {
    const std::int64_t r = order[idx]->first;
    RowSpan<W>& target = *targets[idx];
    if (auto it = d.rows().find(r - 1); it != d.rows().end()) {
      const int eps = k.horizontal_dir(r - 1);
      detail::accumulate_shifted(target, it->second, 0, weight_cast<W>(Rational(1, eps == 0 ? 2 : 3)));
    }
    if (auto it = d.rows().find(r + 1); it != d.rows().end()) {
      const int eps = k.horizontal_dir(r + 1);
      detail::accumulate_shifted(target, it->second, 0, weight_cast<W>(Rational(1, eps == 0 ? 2 : 3)));
    }
    const int eps = k.horizontal_dir(r);
    if (eps != 0) {
      if (auto it = d.rows().find(r); it != d.rows().end())
        detail::accumulate_shifted(target, it->second, eps, weight_cast<W>(Rational(1, 3)));
    }
  };

#pragma omp parallel for schedule(static) num_threads(max_threads())
  for (std::size_t idx = 0; idx < order.size(); ++idx) fill_row(idx);

  if (axis_sink) {
    auto absorb = [&](const RowSpan<W>& src, std::int64_t shift, const W& p) {
      if (src.w.empty()) return;
      axis_sink->ensure(std::min(axis_sink->w.empty() ? src.lo + shift : axis_sink->lo,
                                 src.lo + shift),
                        std::max(axis_sink->w.empty() ? src.hi() + shift : axis_sink->hi(),
                                 src.hi() + shift));
      detail::accumulate_shifted(*axis_sink, src, shift, p);
    };
    if (auto it = d.rows().find(+1); it != d.rows().end())
      absorb(it->second, 0, weight_cast<W>(Rational(1, k.horizontal_dir(+1) == 0 ? 2 : 3)));
    if (auto it = d.rows().find(-1); it != d.rows().end())
      absorb(it->second, 0, weight_cast<W>(Rational(1, k.horizontal_dir(-1) == 0 ? 2 : 3)));
    const int eps0 = k.horizontal_dir(0);
    if (eps0 != 0) {
      if (auto it = d.rows().find(0); it != d.rows().end())
        absorb(it->second, eps0, weight_cast<W>(Rational(1, 3)));
    }
  }

  return out;
}

// Law of the walk after n steps started from d.  Exact in rational mode;
// float mode may prune (removed mass accumulated into *pruned).
template <class W>
SparseDistribution<W> evolve(const Kernel& k, SparseDistribution<W> d, std::int64_t n,
                             const EvolveOptions& opts = {}, W* pruned = nullptr) {
  if (n < 0) throw std::invalid_argument("evolve: negative step count");
  for (std::int64_t i = 0; i < n; ++i) {
    d = evolve_step(k, d, opts);
    if constexpr (std::is_same_v<W, double>) {
      if (opts.prune_threshold > 0) {
        const W removed = d.prune(opts.prune_threshold);
        if (pruned) *pruned += removed;
      }
    }
  }
  return d;
}

// Sum over the first `horizon` powers of the kernel applied at x, read off at
// several targets at once: a certified lower bound on the Green function,
// nondecreasing in the horizon.
template <class W>
std::vector<W> truncated_green_many(const Kernel& k, const Vertex& x,
                                    std::span<const Vertex> targets, std::int64_t horizon,
                                    const EvolveOptions& opts = {}, W* pruned = nullptr) {
  if (horizon < 0) throw std::invalid_argument("truncated_green: negative horizon");
  std::vector<W> acc(targets.size(), W(0));
  SparseDistribution<W> d = SparseDistribution<W>::point(x);
  for (std::int64_t n = 0;; ++n) {
    for (std::size_t j = 0; j < targets.size(); ++j) acc[j] += d.at(targets[j]);
    if (n == horizon) break;
    d = evolve_step(k, d, opts);
    if constexpr (std::is_same_v<W, double>) {
      if (opts.prune_threshold > 0) {
        const W removed = d.prune(opts.prune_threshold);
        if (pruned) *pruned += removed;
      }
    }
  }
  return acc;
}

template <class W>
W truncated_green(const Kernel& k, const Vertex& x, const Vertex& y, std::int64_t horizon,
                  const EvolveOptions& opts = {}) {
  const Vertex targets[] = {y};
  return truncated_green_many<W>(k, x, targets, horizon, opts)[0];
}

enum class LocalTimeMode { none, full, window };

struct LocalTimeWindow {
  std::int64_t x1_lo = 0, x1_hi = 0;  // inclusive bounds
  std::int64_t x2_lo = 0, x2_hi = 0;
  bool contains(std::int64_t x1, std::int64_t x2) const {
    return x1 >= x1_lo && x1 <= x1_hi && x2 >= x2_lo && x2 <= x2_hi;
  }
};

struct FirstHitOptions {
  std::int64_t horizon = 1024;
  LocalTimeMode local_time = LocalTimeMode::full;
  LocalTimeWindow window{};
  EvolveOptions evolve{};
};

// Finite-horizon law of the first axis hit (at times >= 1), plus truncated
// pre-hit expected local times.  hit_law + escaped_mass + pruned_mass
// account for all the starting mass.
template <class W>
struct FirstHitReport {
  Vertex start{};
  std::int64_t horizon = 0;
  RowSpan<W> hit_law;                // abscissa -> mass landed there by `horizon`
  SparseDistribution<W> local_time;  // E^start[# visits before the hit], truncated
  W escaped_mass{0};
  W pruned_mass{0};

  W hit_mass() const {
    W s(0);
    for (const W& v : hit_law.w) s += v;
    return s;
  }
};

template <class W>
FirstHitReport<W> first_hit_axis(const Kernel& k, const Vertex& x, const FirstHitOptions& opts) {
  if (opts.horizon < 1) throw std::invalid_argument("first_hit_axis: horizon must be >= 1");
  FirstHitReport<W> rep;
  rep.start = x;
  rep.horizon = opts.horizon;

  SparseDistribution<W> alive = SparseDistribution<W>::point(x);
  const auto record_local_time = [&](const SparseDistribution<W>& d) {
    if (opts.local_time == LocalTimeMode::none) return;
    for (const auto& [r, row] : d.rows()) {
      if (opts.local_time == LocalTimeMode::window && (r < opts.window.x2_lo || r > opts.window.x2_hi))
        continue;
      std::int64_t lo = row.lo, hi = row.hi();
      if (opts.local_time == LocalTimeMode::window) {
        lo = std::max(lo, opts.window.x1_lo);
        hi = std::min(hi, opts.window.x1_hi + 1);
      }
      if (lo >= hi) continue;
      auto& acc = rep.local_time.rows()[r];
      if (acc.w.empty()) {
        acc.lo = lo;
        acc.w.assign(static_cast<std::size_t>(hi - lo), W(0));
      } else {
        acc.ensure(std::min(acc.lo, lo), std::max(acc.hi(), hi));
      }
      for (std::int64_t xx = lo; xx < hi; ++xx) {
        const W& v = row.w[xx - row.lo];
        if (v != W(0)) acc.w[xx - acc.lo] += v;
      }
    }
  };

  for (std::int64_t n = 0; n < opts.horizon; ++n) {
    record_local_time(alive);
    alive = evolve_step(k, alive, opts.evolve, &rep.hit_law);
    if constexpr (std::is_same_v<W, double>) {
      if (opts.evolve.prune_threshold > 0) rep.pruned_mass += alive.prune(opts.evolve.prune_threshold);
    }
  }
  rep.escaped_mass = alive.mass();
  return rep;
}

// Cosine moment of the truncated hit law about the start abscissa, paired
// with the escaped mass that bounds how far the truncation can sit from the
// true characteristic function value.
template <class W>
std::pair<double, double> char_of_first_hit(const FirstHitReport<W>& rep, double t) {
  double c = 0.0, s = 0.0;
  for (std::size_t i = 0; i < rep.hit_law.w.size(); ++i) {
    const double w = to_double(rep.hit_law.w[i]);
    if (w == 0.0) continue;
    const double z = static_cast<double>(rep.hit_law.lo + static_cast<std::int64_t>(i) - rep.start.x1);
    c += w * std::cos(t * z);
    s += w * std::sin(t * z);
  }
  const double escaped = to_double(rep.escaped_mass) + to_double(rep.pruned_mass);
  if (std::abs(s) > 1e-9)
    throw std::logic_error("char_of_first_hit: sine moment did not vanish; start not on the axis?");
  return {c, escaped};
}

// Exact finite-horizon enclosure of E[e^{it X_hit}] for several t at once,
// via killed evolution of per-row Fourier amplitudes: O(horizon) state per t
// instead of the full two-dimensional law.  Returns, per t, the cosine
// moment and the escaped mass; the true value lies within +-escaped of it.
struct CharEnclosure {
  double t = 0.0;
  double cos_moment = 0.0;  // E[cos(t X); hit by horizon]
  double escaped = 0.0;     // P(no hit by horizon) (+ any sine residue bound)
  double lo() const { return cos_moment - escaped; }
  double hi() const { return cos_moment + escaped; }
};

std::vector<CharEnclosure> axis_char_enclosure(const Kernel& k, const Vertex& start,
                                               std::span<const double> ts, std::int64_t horizon);

}  // namespace orlat
