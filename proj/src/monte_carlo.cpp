#include "orlat/monte_carlo.hpp"

#include <cmath>
#include <stdexcept>

#include "orlat/threads.hpp"

namespace orlat {

namespace {

constexpr std::int64_t kChunk = 4096;  // paths per substream

// Regularized upper incomplete gamma Q(a, x), by series / continued fraction.
double gammq(double a, double x) {
  if (x < 0 || a <= 0) throw std::invalid_argument("gammq: bad arguments");
  if (x == 0) return 1.0;
  const double gln = std::lgamma(a);
  if (x < a + 1.0) {
    // P(a,x) series, return 1 - P.
    double ap = a, sum = 1.0 / a, del = sum;
    for (int i = 0; i < 500; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::abs(del) < std::abs(sum) * 1e-15) break;
    }
    return 1.0 - sum * std::exp(-x + a * std::log(x) - gln);
  }
  // Continued fraction for Q directly.
  double b = x + 1.0 - a, c = 1e308, d = 1.0 / b, h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < 1e-300) d = 1e-300;
    c = b + an / c;
    if (std::abs(c) < 1e-300) c = 1e-300;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - gln) * h;
}

std::int64_t geometric_draw(PhiVariant convention, CounterRng& rng) {
  // excursion: P(k) = (2/3)(1/3)^k (mean 1/2); paper: P(k) = (1/3)(2/3)^k (mean 2).
  const double q = convention == PhiVariant::excursion ? (1.0 / 3.0) : (2.0 / 3.0);
  double u = rng.next_double();
  if (u >= q) return 0;  // P(xi = 0) = 1 - q, no log needed
  while (u == 0.0) u = rng.next_double();
  return static_cast<std::int64_t>(std::log(u) / std::log(q));
}

template <class Body>
void run_chunks(std::int64_t n_paths, std::uint64_t seed, const Body& body) {
  const std::int64_t n_chunks = (n_paths + kChunk - 1) / kChunk;
#pragma omp parallel for schedule(dynamic) num_threads(max_threads())
  for (std::int64_t c = 0; c < n_chunks; ++c) {
    CounterRng rng(seed, static_cast<std::uint64_t>(c));
    const std::int64_t count = std::min(kChunk, n_paths - c * kChunk);
    body(c, count, rng);
  }
}

}  // namespace

Trajectory simulate(const Kernel& k, const Vertex& x, std::int64_t n_steps, CounterRng& rng) {
  if (n_steps < 0) throw std::invalid_argument("simulate: negative step count");
  Trajectory traj;
  traj.start = x;
  traj.steps.reserve(static_cast<std::size_t>(n_steps));
  Vertex cur = x;
  for (std::int64_t n = 1; n <= n_steps; ++n) {
    cur = k.step(cur, rng);
    traj.steps.push_back(cur);
    if (cur.x2 == 0) traj.axis_hits.emplace_back(n, cur.x1);
  }
  return traj;
}

InducedSample sample_induced_direct(const Kernel& k, CounterRng& rng, std::int64_t step_cap) {
  Vertex cur{0, 0};
  for (std::int64_t n = 1; n <= step_cap; ++n) {
    cur = k.step(cur, rng);
    if (cur.x2 == 0) return InducedSample{cur.x1, n, false};
  }
  return InducedSample{cur.x1, step_cap, true};
}

GeomExcursion sample_induced_geometric(const Kernel& k, PhiVariant convention, CounterRng& rng,
                                       std::int64_t step_cap) {
  if (k.horizontal_dir(0) != 0)
    throw std::invalid_argument(
        "sample_induced_geometric: representation requires no horizontal edges on row 0");
  GeomExcursion e;
  e.heights.push_back(0);
  std::int64_t h = 0;
  for (;;) {
    ++e.local_times[h];
    // Lateral run at the current height happens before the next vertical move;
    // none on row 0, where the walk has vertical edges only.
    std::int64_t xi = 0;
    if (h != 0) {
      xi = geometric_draw(convention, rng);
      e.x_displacement += k.horizontal_dir(h) * xi;
    }
    e.geom_draws.push_back(xi);
    e.total_time += xi + 1;
    h += rng.below(2) == 0 ? 1 : -1;
    e.heights.push_back(h);
    if (h == 0) break;
    if (e.total_time >= step_cap) {
      e.capped = true;
      break;
    }
  }
  return e;
}

Estimate estimate_green(const Kernel& k, const Vertex& x, const Vertex& y,
                        std::int64_t n_paths, std::int64_t horizon, std::uint64_t seed) {
  if (n_paths < 1 || horizon < 0) throw std::invalid_argument("estimate_green: bad parameters");
  const std::int64_t n_chunks = (n_paths + kChunk - 1) / kChunk;
  std::vector<double> sums(n_chunks, 0.0), sumsq(n_chunks, 0.0);
  run_chunks(n_paths, seed, [&](std::int64_t c, std::int64_t count, CounterRng& rng) {
    double s = 0.0, s2 = 0.0;
    for (std::int64_t p = 0; p < count; ++p) {
      std::int64_t visits = (x == y) ? 1 : 0;
      Vertex cur = x;
      for (std::int64_t n = 0; n < horizon; ++n) {
        cur = k.step(cur, rng);
        if (cur == y) ++visits;
      }
      const double v = static_cast<double>(visits);
      s += v;
      s2 += v * v;
    }
    sums[c] = s;
    sumsq[c] = s2;
  });
  double s = 0.0, s2 = 0.0;
  for (std::int64_t c = 0; c < n_chunks; ++c) {
    s += sums[c];
    s2 += sumsq[c];
  }
  const double n = static_cast<double>(n_paths);
  const double mean = s / n;
  double stderr_v = 0.0;
  if (n_paths > 1) {
    const double var = std::max(0.0, (s2 - n * mean * mean) / (n - 1.0));
    stderr_v = std::sqrt(var / n);
  }
  return Estimate{mean, stderr_v, n_paths, seed};
}

EmpiricalLaw estimate_nu(const Kernel& k, const Vertex& x, std::int64_t n_paths,
                         std::uint64_t seed, std::int64_t step_cap) {
  if (n_paths < 1) throw std::invalid_argument("estimate_nu: bad parameters");
  const std::int64_t n_chunks = (n_paths + kChunk - 1) / kChunk;
  std::vector<std::map<std::int64_t, std::uint64_t>> maps(n_chunks);
  std::vector<std::int64_t> capped(n_chunks, 0);
  run_chunks(n_paths, seed, [&](std::int64_t c, std::int64_t count, CounterRng& rng) {
    for (std::int64_t p = 0; p < count; ++p) {
      Vertex cur = x;
      bool hit = false;
      for (std::int64_t n = 1; n <= step_cap; ++n) {
        cur = k.step(cur, rng);
        if (cur.x2 == 0) {
          ++maps[c][cur.x1];
          hit = true;
          break;
        }
      }
      if (!hit) ++capped[c];
    }
  });
  EmpiricalLaw law;
  law.n_samples = n_paths;
  law.seed = seed;
  for (std::int64_t c = 0; c < n_chunks; ++c) {
    law.capped += capped[c];
    for (const auto& [z, n] : maps[c]) law.counts[z] += n;
  }
  return law;
}

EmpiricalLaw estimate_nu_geometric(const Kernel& k, PhiVariant convention, std::int64_t n_paths,
                                   std::uint64_t seed, std::int64_t step_cap) {
  if (n_paths < 1) throw std::invalid_argument("estimate_nu_geometric: bad parameters");
  const std::int64_t n_chunks = (n_paths + kChunk - 1) / kChunk;
  std::vector<std::map<std::int64_t, std::uint64_t>> maps(n_chunks);
  std::vector<std::int64_t> capped(n_chunks, 0);
  run_chunks(n_paths, seed, [&](std::int64_t c, std::int64_t count, CounterRng& rng) {
    for (std::int64_t p = 0; p < count; ++p) {
      const GeomExcursion e = sample_induced_geometric(k, convention, rng, step_cap);
      if (e.capped)
        ++capped[c];
      else
        ++maps[c][e.x_displacement];
    }
  });
  EmpiricalLaw law;
  law.n_samples = n_paths;
  law.seed = seed;
  for (std::int64_t c = 0; c < n_chunks; ++c) {
    law.capped += capped[c];
    for (const auto& [z, n] : maps[c]) law.counts[z] += n;
  }
  return law;
}

ChiSquare chi_square_two_sample(const EmpiricalLaw& a, const EmpiricalLaw& b,
                                std::int64_t tail_from, double min_expected) {
  // Bin layout: left tail, each z in [-tail_from, tail_from], right tail.
  const std::int64_t nbins = 2 * tail_from + 3;
  std::vector<double> ca(nbins, 0.0), cb(nbins, 0.0);
  const auto bin_of = [&](std::int64_t z) {
    if (z < -tail_from) return std::int64_t{0};
    if (z > tail_from) return nbins - 1;
    return z + tail_from + 1;
  };
  double na = 0, nb = 0;
  for (const auto& [z, n] : a.counts) {
    ca[bin_of(z)] += static_cast<double>(n);
    na += static_cast<double>(n);
  }
  for (const auto& [z, n] : b.counts) {
    cb[bin_of(z)] += static_cast<double>(n);
    nb += static_cast<double>(n);
  }
  if (na == 0 || nb == 0) throw std::invalid_argument("chi_square_two_sample: empty sample");

  // Pool sparse bins left to right so each kept bin has enough mass.
  std::vector<std::pair<double, double>> pooled;
  double pa = 0, pb = 0;
  for (std::int64_t i = 0; i < nbins; ++i) {
    pa += ca[i];
    pb += cb[i];
    if (pa + pb >= 2.0 * min_expected) {
      pooled.emplace_back(pa, pb);
      pa = pb = 0;
    }
  }
  if (pa + pb > 0) {
    if (pooled.empty())
      pooled.emplace_back(pa, pb);
    else {
      pooled.back().first += pa;
      pooled.back().second += pb;
    }
  }
  if (pooled.size() < 2) throw std::invalid_argument("chi_square_two_sample: degenerate binning");

  const double ra = std::sqrt(nb / na), rb = std::sqrt(na / nb);
  double stat = 0.0;
  for (const auto& [xa, xb] : pooled) {
    const double d = ra * xa - rb * xb;
    stat += d * d / (xa + xb);
  }
  const std::int64_t dof = static_cast<std::int64_t>(pooled.size()) - 1;
  return ChiSquare{stat, dof, gammq(0.5 * static_cast<double>(dof), 0.5 * stat)};
}

}  // namespace orlat
