#include "orlat/martin.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace orlat {

DirectionalSequence DirectionalSequence::finite(double lambda,
                                                std::span<const std::int64_t> ks) {
  DirectionalSequence s;
  s.lambda = lambda;
  for (std::int64_t k : ks) {
    if (k < 1) throw std::invalid_argument("DirectionalSequence: k must be >= 1");
    // Rounding perturbs y1/y2^2 by O(k^-2), preserving the limit.
    s.targets.push_back(Vertex{static_cast<std::int64_t>(std::llround(lambda * static_cast<double>(k) * static_cast<double>(k))), k});
  }
  return s;
}

DirectionalSequence DirectionalSequence::horizontal_row(int direction, std::int64_t row,
                                                        std::span<const std::int64_t> xs) {
  DirectionalSequence s;
  s.horizontal = true;
  s.direction = direction >= 0 ? +1 : -1;
  s.row = row;
  for (std::int64_t x : xs) {
    if (x < 1) throw std::invalid_argument("DirectionalSequence: |y1| must be >= 1");
    s.targets.push_back(Vertex{s.direction * x, row});
  }
  return s;
}

AsymptoticFit fit_asymptotics(const DirectionalSequence& seq, std::span<const double> values,
                              const Vertex& base) {
  if (values.size() != seq.targets.size())
    throw std::invalid_argument("fit_asymptotics: size mismatch");
  if (values.size() < 8) throw std::invalid_argument("fit_asymptotics: need at least 8 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(values.size());
  std::vector<double> xs(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0)) throw std::invalid_argument("fit_asymptotics: values must be positive");
    const Vertex& y = seq.targets[i];
    const double reg = seq.horizontal
                           ? std::abs(static_cast<double>(y.x1 - base.x1))
                           : std::abs(static_cast<double>(y.x2));
    if (!(reg > 0)) throw std::invalid_argument("fit_asymptotics: zero regressor");
    xs[i] = std::log(reg);
    const double ly = std::log(values[i]);
    sx += xs[i];
    sy += ly;
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ly;
  }
  const double det = n * sxx - sx * sx;
  if (std::abs(det) < 1e-12 * n * sxx)
    throw std::invalid_argument("fit_asymptotics: degenerate regressor");
  AsymptoticFit f;
  f.exponent = (n * sxy - sx * sy) / det;
  const double intercept = (sy - f.exponent * sx) / n;
  f.constant = std::exp(intercept);
  double ss = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double r = std::log(values[i]) - (intercept + f.exponent * xs[i]);
    ss += r * r;
  }
  f.residual = std::sqrt(ss / n);
  f.n_points = values.size();
  return f;
}

MartinEvaluator::MartinEvaluator(Kernel k, MartinParams p)
    : kernel_(std::move(k)), params_(std::move(p)) {}

ValueWithError MartinEvaluator::green_axis(const Vertex& z, const Vertex& y) {
  if (z.x2 != 0) throw std::invalid_argument("green_axis: source must lie on the axis");
  std::int64_t k = y.x2 < 0 ? -y.x2 : y.x2;
  std::int64_t delta = checked_add(y.x1, -z.x1);
  if (y.x2 < 0) delta = -delta;
  const auto key = std::make_pair(k, delta);
  if (auto it = green_cache_.find(key); it != green_cache_.end()) return it->second;
  double err = 0.0;
  const double v =
      green_from_axis(Vertex{0, 0}, Vertex{delta, k}, params_.variant, params_.quad, &err);
  const ValueWithError out{v, err};
  green_cache_.emplace(key, out);
  return out;
}

const MartinEvaluator::RowReport& MartinEvaluator::row_report(std::int64_t row) {
  if (row < 0) throw std::logic_error("row_report: negative row after folding");
  if (auto it = reports_.find(row); it != reports_.end()) return it->second;

  FirstHitOptions opts;
  opts.horizon = params_.oracle_horizon;
  opts.local_time = LocalTimeMode::full;
  opts.evolve.prune_threshold = params_.oracle_prune;

  // Rebuild the alive field at the horizon to refine tail bounds: above the
  // axis the abscissa only grows, so alive mass already to the right of a
  // target column can never contribute pre-hit visits to it.
  SparseDistribution<double> alive = SparseDistribution<double>::point(Vertex{0, row});
  RowReport rep;
  const auto record = [&](const SparseDistribution<double>& d) {
    for (const auto& [r, rowspan] : d.rows()) {
      auto& acc = rep.local_time.rows()[r];
      if (acc.w.empty()) {
        acc.lo = rowspan.lo;
        acc.w.assign(rowspan.w.size(), 0.0);
      } else {
        acc.ensure(std::min(acc.lo, rowspan.lo), std::max(acc.hi(), rowspan.hi()));
      }
      for (std::size_t i = 0; i < rowspan.w.size(); ++i)
        acc.w[rowspan.lo + static_cast<std::int64_t>(i) - acc.lo] += rowspan.w[i];
    }
  };
  for (std::int64_t n = 0; n < opts.horizon; ++n) {
    record(alive);
    alive = evolve_step(kernel_, alive, opts.evolve, &rep.hit_law);
    if (opts.evolve.prune_threshold > 0) rep.pruned += alive.prune(opts.evolve.prune_threshold);
  }
  rep.escaped = alive.mass();
  rep.alive_at_horizon = std::move(alive);
  return reports_.emplace(row, std::move(rep)).first->second;
}

double MartinEvaluator::axis_to_row_max(std::int64_t k) {
  k = k < 0 ? -k : k;
  if (auto it = row_max_cache_.find(k); it != row_max_cache_.end()) return it->second;
  double m;
  if (k == 0) {
    // G0(delta) <= G0(0) exactly.
    const ValueWithError g = green_axis(Vertex{0, 0}, Vertex{0, 0});
    m = g.value + g.error;
  } else {
    // Sampled profile over dyadic offsets out to a few k^2, with headroom;
    // the profile is smooth and unimodal at these scales.
    double best = 0.0;
    const std::int64_t reach = std::max<std::int64_t>(4 * k * k, 64);
    for (std::int64_t d = 1; d <= reach; d *= 2) {
      for (const std::int64_t delta : {d, -d}) {
        const ValueWithError g = green_axis(Vertex{0, 0}, Vertex{delta, k});
        best = std::max(best, g.value + g.error);
      }
    }
    const ValueWithError g0 = green_axis(Vertex{0, 0}, Vertex{0, k});
    best = std::max(best, g0.value + g0.error);
    m = 1.25 * best;
  }
  row_max_cache_.emplace(k, m);
  return m;
}

// Sum over the hit law of G((z,0), y) for target (y1, k_signed applied via
// mirror), exact near the mass centre and the target column, binned beyond.
double MartinEvaluator::nu_weighted_green(const RowReport& rep, std::int64_t shift,
                                          std::int64_t y1, std::int64_t k, bool mirror,
                                          double& error) {
  const RowSpan<double>& nu = rep.hit_law;
  if (nu.w.empty()) return 0.0;
  const std::int64_t lo = nu.lo + shift, hi = nu.hi() + shift;  // z range in target frame

  const auto g_at = [&](std::int64_t z) {
    return green_axis(Vertex{z, 0}, Vertex{y1, mirror ? -k : k});
  };
  const auto weight = [&](std::int64_t z) { return nu.w[z - shift - nu.lo]; };

  const std::int64_t W = params_.exact_window;
  const auto in_exact = [&](std::int64_t z) {
    const std::int64_t c = shift;  // hit mass centres on the start abscissa
    return (z >= c - W && z <= c + W) || (z >= y1 - W && z <= y1 + W);
  };

  double sum = 0.0, err = 0.0;
  std::int64_t z = lo;
  while (z < hi) {
    if (in_exact(z)) {
      const double w = weight(z);
      if (w != 0.0) {
        const ValueWithError g = g_at(z);
        sum += w * g.value;
        err += w * g.error;
      }
      ++z;
      continue;
    }
    // Geometric bin [z, z_end) staying clear of the exact windows.
    std::int64_t width = 16;
    const std::int64_t dist = std::min(std::llabs(z - shift), std::llabs(z - y1));
    while (width * 4 < dist) width *= 2;
    std::int64_t z_end = z + width;
    for (std::int64_t b = z; b < std::min(z_end, hi); ++b) {
      if (in_exact(b)) {
        z_end = b;
        break;
      }
    }
    z_end = std::min(z_end, hi);
    if (z_end <= z) {  // adjacent to a window; fall back to exact
      const double w = weight(z);
      if (w != 0.0) {
        const ValueWithError g = g_at(z);
        sum += w * g.value;
        err += w * g.error;
      }
      ++z;
      continue;
    }
    double mass = 0.0;
    for (std::int64_t b = z; b < z_end; ++b) mass += weight(b);
    if (mass != 0.0) {
      const ValueWithError ga = g_at(z);
      const ValueWithError gm = g_at((z + z_end - 1) / 2);
      const ValueWithError gb = g_at(z_end - 1);
      const double gmin = std::min({ga.value, gm.value, gb.value});
      const double gmax = std::max({ga.value, gm.value, gb.value});
      sum += mass * gm.value;
      err += mass * ((gmax - gmin) + std::max({ga.error, gm.error, gb.error}));
    }
    z = z_end;
  }
  error += err;
  return sum;
}

ValueWithError MartinEvaluator::green(const Vertex& x, const Vertex& y) {
  if (x.x2 == 0) {
    return green_axis(x, y);
  }
  // Central fold so the start row is positive, then horizontal translation
  // so the start abscissa is 0.
  Vertex xs = x, ys = y;
  bool mirrored = false;
  if (xs.x2 < 0) {
    xs = Vertex{-xs.x1, -xs.x2};
    ys = Vertex{-ys.x1, -ys.x2};
    mirrored = true;
  }
  (void)mirrored;
  const std::int64_t shift = xs.x1;
  ys = Vertex{checked_add(ys.x1, -shift), ys.x2};
  xs = Vertex{0, xs.x2};

  const RowReport& rep = row_report(xs.x2);

  // Pre-hit visits: exactly zero outside the start's half-plane (the walk
  // is killed on first axis contact, so it cannot cross or touch row 0).
  double lt = 0.0, lt_bound = 0.0;
  if (ys.x2 >= 1) {
    lt = rep.local_time.at(ys);
    // Above the axis the abscissa never decreases, so only alive mass at or
    // left of the target column can still produce pre-hit visits to it.
    double reachable_mass = 0.0;
    for (const auto& [r, rowspan] : rep.alive_at_horizon.rows()) {
      for (std::size_t i = 0; i < rowspan.w.size(); ++i) {
        if (rowspan.lo + static_cast<std::int64_t>(i) <= ys.x1) reachable_mass += rowspan.w[i];
      }
    }
    lt_bound = (reachable_mass + rep.pruned) * kKilledDiagonalBound;
  }

  double nu_err = 0.0;
  const double nu_sum = nu_weighted_green(rep, 0, ys.x1, std::llabs(ys.x2), ys.x2 < 0, nu_err);
  const double tail = (rep.escaped + rep.pruned) * axis_to_row_max(ys.x2);

  return ValueWithError{lt + nu_sum, lt_bound + nu_err + tail};
}

ValueWithError MartinEvaluator::martin_kernel(const Vertex& x, const Vertex& y) {
  const ValueWithError num = green(x, y);
  const ValueWithError den = green_axis(Vertex{0, 0}, y);
  if (!(den.value > 0)) throw std::runtime_error("martin_kernel: nonpositive normalizer");
  const double kv = num.value / den.value;
  return ValueWithError{kv, (num.error + kv * den.error) / den.value};
}

ValueWithError MartinEvaluator::martin_kernel_induced(std::int64_t u, std::int64_t v) {
  const ValueWithError num = green_axis(Vertex{u, 0}, Vertex{v, 0});
  const ValueWithError den = green_axis(Vertex{0, 0}, Vertex{v, 0});
  const double kv = num.value / den.value;
  return ValueWithError{kv, (num.error + kv * den.error) / den.value};
}

ValueWithError MartinEvaluator::local_time_origin(const Vertex& y) {
  const RowReport& rep = row_report(0);
  double reachable_mass = 0.0;
  if (y.x2 != 0) {
    for (const auto& [r, rowspan] : rep.alive_at_horizon.rows()) {
      if ((y.x2 > 0) != (r > 0)) continue;  // the other half cannot reach y pre-hit
      for (std::size_t i = 0; i < rowspan.w.size(); ++i) {
        const std::int64_t zz = rowspan.lo + static_cast<std::int64_t>(i);
        if ((y.x2 > 0 && zz <= y.x1) || (y.x2 < 0 && zz >= y.x1)) reachable_mass += rowspan.w[i];
      }
    }
  }
  return ValueWithError{rep.local_time.at(y),
                        (reachable_mass + rep.pruned) * kKilledDiagonalBound};
}

ValueWithError green_general(const Kernel& k, const Vertex& x, const Vertex& y,
                             const MartinParams& p) {
  MartinEvaluator ev(k, p);
  return ev.green(x, y);
}

ValueWithError martin_kernel(const Kernel& k, const Vertex& x, const Vertex& y,
                             const MartinParams& p) {
  MartinEvaluator ev(k, p);
  return ev.martin_kernel(x, y);
}

std::vector<LocalTimeDecayRow> local_time_decay(MartinEvaluator& ev,
                                                const DirectionalSequence& seq) {
  std::vector<LocalTimeDecayRow> out;
  for (const Vertex& y : seq.targets) {
    LocalTimeDecayRow row;
    row.y = y;
    const ValueWithError v = ev.local_time_origin(y);
    row.value = v.value;
    row.bound = v.error;
    row.scaled = seq.horizontal ? v.value * std::sqrt(std::abs(static_cast<double>(y.x1)))
                                : v.value * std::abs(static_cast<double>(y.x2));
    row.conclusive = row.bound <= std::max(0.25 * row.value, 1e-12);
    out.push_back(row);
  }
  return out;
}

}  // namespace orlat
