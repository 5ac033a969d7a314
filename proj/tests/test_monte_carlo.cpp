#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "orlat/exact_oracle.hpp"
#include "orlat/monte_carlo.hpp"

using namespace orlat;

namespace {
Kernel sign_kernel() { return Kernel{Orientation::sign_rule()}; }
}  // namespace

TEST_CASE("counter rng: deterministic per (seed, stream), distinct across streams") {
  CounterRng a(42, 0), b(42, 0), c(42, 1), d(43, 0);
  bool same = true, diff_stream = false, diff_seed = false;
  for (int i = 0; i < 64; ++i) {
    const auto va = a.next_u64();
    if (va != b.next_u64()) same = false;
    if (va != c.next_u64()) diff_stream = true;
    if (va != d.next_u64()) diff_seed = true;
  }
  CHECK(same);
  CHECK(diff_stream);
  CHECK(diff_seed);
}

TEST_CASE("counter rng: below() is in range and roughly uniform") {
  CounterRng rng(7, 3);
  std::array<std::int64_t, 5> hist{};
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const auto v = rng.below(5);
    REQUIRE(v < 5);
    ++hist[v];
  }
  for (const auto h : hist)
    CHECK(std::abs(h - n / 5) < 5 * std::sqrt(n * 0.2 * 0.8));
}

TEST_CASE("simulate: lengths, adjacency, axis hits") {
  const Kernel k = sign_kernel();
  CounterRng rng(1, 0);
  const Trajectory t0 = simulate(k, Vertex{2, 5}, 0, rng);
  CHECK(t0.steps.empty());
  CHECK(t0.axis_hits.empty());

  const Trajectory t = simulate(k, Vertex{0, 0}, 4000, rng);
  REQUIRE(t.steps.size() == 4000);
  CHECK((t.steps[0] == Vertex{0, 1} || t.steps[0] == Vertex{0, -1}));
  Vertex prev = t.start;
  for (const Vertex& v : t.steps) {
    CHECK(k.transition_prob(prev, v) > Rational(0));
    prev = v;
  }
  std::int64_t last_time = 0;
  for (const auto& [time, z] : t.axis_hits) {
    CHECK(time > last_time);
    last_time = time;
    CHECK(t.steps[time - 1] == Vertex{z, 0});
  }

  // Occupation identity: local times partition the elapsed time.
  std::map<Vertex, std::int64_t> eta;
  ++eta[t.start];
  for (const Vertex& v : t.steps) ++eta[v];
  std::int64_t total = 0;
  for (const auto& [v, c] : eta) total += c;
  CHECK(total == 4001);
}

TEST_CASE("estimate_green: exact at horizon zero, reproducible, monotone in horizon") {
  const Kernel k = sign_kernel();
  const Estimate z = estimate_green(k, Vertex{0, 0}, Vertex{0, 0}, 500, 0, 9);
  CHECK(z.value == 1.0);
  CHECK(z.stderr_ == 0.0);

  const Estimate a = estimate_green(k, Vertex{0, 0}, Vertex{1, 1}, 30000, 40, 11);
  const Estimate b = estimate_green(k, Vertex{0, 0}, Vertex{1, 1}, 30000, 40, 11);
  CHECK(a.value == b.value);
  CHECK(a.stderr_ == b.stderr_);

  const Estimate c = estimate_green(k, Vertex{0, 0}, Vertex{1, 1}, 30000, 80, 11);
  CHECK(c.value >= a.value - 1e-12);
}

TEST_CASE("estimate_green agrees with the exact truncated value") {
  const Kernel k = sign_kernel();
  const Vertex pairs[][2] = {{Vertex{0, 0}, Vertex{0, 0}}, {Vertex{0, 0}, Vertex{2, 1}},
                             {Vertex{1, 1}, Vertex{1, 1}}, {Vertex{0, -1}, Vertex{-2, -1}},
                             {Vertex{0, 2}, Vertex{0, 0}}};
  int i = 0;
  for (const auto& pr : pairs) {
    const Estimate e = estimate_green(k, pr[0], pr[1], 40000, 50, 100 + i++);
    const double exact = truncated_green<double>(k, pr[0], pr[1], 50);
    CHECK(std::abs(e.value - exact) <= 4.0 * std::max(e.stderr_, 1e-9));
  }
}

TEST_CASE("direct induced sampler: symmetric displacement, consistent zero mass") {
  const Kernel k = sign_kernel();
  CounterRng rng(21, 0);
  std::int64_t pos = 0, neg = 0, zero = 0;
  const std::int64_t n = 50000;
  for (std::int64_t i = 0; i < n; ++i) {
    const auto s = sample_induced_direct(k, rng, 1000000);
    if (s.capped) continue;
    pos += s.displacement > 0;
    neg += s.displacement < 0;
    zero += s.displacement == 0;
  }
  const double imbalance =
      std::abs(static_cast<double>(pos - neg)) / std::sqrt(static_cast<double>(pos + neg));
  CHECK(imbalance <= 3.0);

  // P(X = 0) exceeds its horizon-2 component 1/3 and stays consistent with
  // the exact enclosure at a longer horizon.
  FirstHitOptions fo;
  fo.horizon = 4096;
  fo.local_time = LocalTimeMode::none;
  const auto rep = first_hit_axis<double>(k, Vertex{0, 0}, fo);
  const double p0 = static_cast<double>(zero) / static_cast<double>(n);
  const double exact0 = *rep.hit_law.find(0);
  const double sigma = std::sqrt(exact0 * (1 - exact0) / static_cast<double>(n));
  CHECK(p0 >= 1.0 / 3.0 - 3.0 * sigma);
  CHECK(std::abs(p0 - exact0) <= 3.0 * sigma + rep.escaped_mass);
}

TEST_CASE("geometric excursion: structure and conventions") {
  const Kernel k = sign_kernel();
  CounterRng rng(33, 0);
  std::int64_t updown = 0, n = 20000;
  double xi_sum = 0.0;
  std::int64_t xi_count = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    const GeomExcursion e = sample_induced_geometric(k, PhiVariant::excursion, rng, 1000000);
    if (e.capped) continue;
    REQUIRE(e.heights.front() == 0);
    REQUIRE(e.heights.back() == 0);
    std::int64_t lt_total = 0;
    for (const auto& [lvl, c] : e.local_times) lt_total += c;
    CHECK(lt_total == static_cast<std::int64_t>(e.heights.size()) - 1);  // sigma_1 visits
    const bool upward = e.heights[1] == 1;
    if (upward) CHECK(e.x_displacement >= 0);
    if (!upward) CHECK(e.x_displacement <= 0);
    if (e.heights.size() == 3) ++updown;  // [0, +-1, 0]
    for (std::size_t j = 1; j < e.geom_draws.size(); ++j) {
      xi_sum += static_cast<double>(e.geom_draws[j]);
      ++xi_count;
    }
    CHECK(e.total_time == static_cast<std::int64_t>(e.heights.size()) - 1 + e.x_displacement *
                              (upward ? 1 : -1));
  }
  // Two-step excursions [0, +-1, 0] have probability 1/2; per-visit lateral
  // counts average 1/2 under the arbitrated convention.
  CHECK(std::abs(static_cast<double>(updown) / static_cast<double>(n) - 0.5) < 0.02);
  CHECK(std::abs(xi_sum / static_cast<double>(xi_count) - 0.5) < 0.02);
}

TEST_CASE("direct and geometric samplers produce the same law") {
  const Kernel k = sign_kernel();
  const auto a = estimate_nu(k, Vertex{0, 0}, 120000, 51, 1000000);
  const auto b = estimate_nu_geometric(k, PhiVariant::excursion, 120000, 52, 1000000);
  const auto chi = chi_square_two_sample(a, b);
  CHECK(chi.p_value > 0.005);

  // Power canary: the rejected convention is far enough away to fail.
  const auto c = estimate_nu_geometric(k, PhiVariant::paper, 120000, 53, 1000000);
  const auto chi_bad = chi_square_two_sample(a, c);
  CHECK(chi_bad.p_value < 1e-6);
}

TEST_CASE("estimate_nu: censoring reported, drift above the axis is rightward") {
  const Kernel k = sign_kernel();
  const auto law = estimate_nu(k, Vertex{0, 1}, 30000, 61, 100000);
  CHECK(law.capped >= 0);
  CHECK(law.capped < 30000 / 10);
  double mean = 0.0, mass = 0.0;
  for (const auto& [z, c] : law.counts) {
    mean += static_cast<double>(z) * static_cast<double>(c);
    mass += static_cast<double>(c);
  }
  CHECK(mean / mass > 0.0);

  FirstHitOptions fo;
  fo.horizon = 8192;
  fo.local_time = LocalTimeMode::none;
  fo.evolve.prune_threshold = 1e-15;
  const auto rep = first_hit_axis<double>(k, Vertex{0, 1}, fo);
  // Compare a few central bins against the exact law within 3 sigma + tail.
  for (const std::int64_t z : {-1, 0, 1, 2, 5}) {
    const double exact = rep.hit_law.find(z) ? *rep.hit_law.find(z) : 0.0;
    const double emp = law.counts.count(z)
                           ? static_cast<double>(law.counts.at(z)) / static_cast<double>(mass)
                           : 0.0;
    const double sigma = std::sqrt(std::max(exact * (1 - exact), 1e-12) / mass);
    CHECK(std::abs(emp - exact) <= 3.0 * sigma + rep.escaped_mass + rep.pruned_mass);
  }
}

TEST_CASE("chunked estimates equal a sequential pass over the same substreams") {
  const Kernel k = sign_kernel();
  const std::int64_t n_paths = 10000, horizon = 25;
  const std::uint64_t seed = 77;
  const Estimate est = estimate_green(k, Vertex{0, 0}, Vertex{0, 0}, n_paths, horizon, seed);

  double sum = 0.0;
  for (std::int64_t c = 0; c * 4096 < n_paths; ++c) {
    CounterRng rng(seed, static_cast<std::uint64_t>(c));
    const std::int64_t count = std::min<std::int64_t>(4096, n_paths - c * 4096);
    for (std::int64_t p = 0; p < count; ++p) {
      std::int64_t visits = 1;
      Vertex cur{0, 0};
      for (std::int64_t s = 0; s < horizon; ++s) {
        cur = k.step(cur, rng);
        if (cur == Vertex{0, 0}) ++visits;
      }
      sum += static_cast<double>(visits);
    }
  }
  CHECK(est.value == sum / static_cast<double>(n_paths));
}
