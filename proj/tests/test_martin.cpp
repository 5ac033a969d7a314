#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "orlat/exact_oracle.hpp"
#include "orlat/martin.hpp"

using namespace orlat;

namespace {
Kernel sign_kernel() { return Kernel{Orientation::sign_rule()}; }

MartinEvaluator make_eval(std::int64_t horizon = 2048) {
  MartinParams p;
  p.variant = PhiVariant::excursion;
  p.oracle_horizon = horizon;
  return MartinEvaluator(sign_kernel(), p);
}
}  // namespace

TEST_CASE("directional sequences: construction") {
  const std::int64_t ks[] = {3, 5, 9};
  const auto s = DirectionalSequence::finite(-2.0, ks);
  CHECK(s.targets[0] == Vertex{-18, 3});
  CHECK(s.targets[1] == Vertex{-50, 5});
  CHECK(s.targets[2] == Vertex{-162, 9});

  const std::int64_t xs[] = {4, 8};
  const auto h = DirectionalSequence::horizontal_row(-1, 2, xs);
  CHECK(h.targets[0] == Vertex{-4, 2});
  CHECK(h.targets[1] == Vertex{-8, 2});
}

TEST_CASE("fit_asymptotics: exact on synthetic power laws, strict about input") {
  std::vector<std::int64_t> ks;
  for (std::int64_t k = 4; k <= 32; k += 4) ks.push_back(k);
  const auto seq = DirectionalSequence::finite(0.0, ks);
  std::vector<double> vals;
  for (const auto& y : seq.targets) vals.push_back(2.25 / static_cast<double>(y.x2));
  const auto f = fit_asymptotics(seq, vals);
  CHECK(f.exponent == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(f.constant == doctest::Approx(2.25).epsilon(1e-9));
  CHECK(f.residual < 1e-12);

  std::vector<double> short_vals(vals.begin(), vals.begin() + 4);
  const std::int64_t few[] = {4, 8, 12, 16};
  CHECK_THROWS_AS(
      (void)fit_asymptotics(DirectionalSequence::finite(0.0, few), short_vals),
      std::invalid_argument);
  vals[2] = -1.0;
  CHECK_THROWS_AS((void)fit_asymptotics(seq, vals), std::invalid_argument);
}

TEST_CASE("induced Martin kernel: normalization, positivity, convergence to one") {
  auto ev = make_eval();
  for (const std::int64_t v : {1, 17, 400, 4096}) {
    CHECK(ev.martin_kernel_induced(0, v).value == doctest::Approx(1.0).epsilon(1e-12));
  }
  for (const std::int64_t u : {-5, -1, 1, 5}) {
    for (const std::int64_t v : {64, 512, 4096}) {
      const auto kv = ev.martin_kernel_induced(u, v);
      CHECK(kv.value > 0.0);
      if (v == 4096) CHECK(std::abs(kv.value - 1.0) < 0.05);
    }
  }
}

TEST_CASE("green from an axis start goes through the Fourier route exactly") {
  auto ev = make_eval();
  QuadratureSpec q;
  double err = 0.0;
  const Vertex x{2, 0};
  for (const Vertex y : {Vertex{5, 0}, Vertex{3, 2}, Vertex{-4, -1}}) {
    const auto g = ev.green(x, y);
    CHECK(g.value ==
          doctest::Approx(green_from_axis(x, y, PhiVariant::excursion, q, &err)).epsilon(1e-12));
  }
}

TEST_CASE("green from off-axis starts brackets the exact truncated value") {
  auto ev = make_eval(4096);
  const Kernel k = sign_kernel();
  EvolveOptions eo;
  eo.prune_threshold = 1e-16;
  for (const Vertex x : {Vertex{0, 1}, Vertex{2, 2}, Vertex{-1, -2}}) {
    for (const Vertex y : {Vertex{0, 0}, Vertex{2, 0}, Vertex{1, 1}}) {
      const auto g = ev.green(x, y);
      double pruned = 0.0;
      const Vertex targets[] = {y};
      const double lower =
          truncated_green_many<double>(k, x, targets, 1500, eo, &pruned)[0];
      CHECK(g.value + g.error >= lower - 1e-9);
      // The truncated value sits below the true one by at most the measured
      // ~1/sqrt(N) tail; the assembled value must not exceed it by more.
      CHECK(g.value - g.error <= lower + 0.033);
    }
  }
}

TEST_CASE("assembled green respects central symmetry") {
  auto ev = make_eval();
  const auto a = ev.green(Vertex{0, 1}, Vertex{3, 2});
  const auto b = ev.green(Vertex{0, -1}, Vertex{-3, -2});
  CHECK(std::abs(a.value - b.value) <= 2.0 * (a.error + b.error) + 1e-12);
}

TEST_CASE("martin kernel: base point and positivity") {
  auto ev = make_eval();
  for (const Vertex y : {Vertex{10, 0}, Vertex{5, 7}, Vertex{-30, 4}}) {
    CHECK(ev.martin_kernel(Vertex{0, 0}, y).value == doctest::Approx(1.0).epsilon(1e-12));
  }
  for (const Vertex x : {Vertex{1, 1}, Vertex{-2, 2}, Vertex{3, 0}}) {
    for (const Vertex y : {Vertex{0, 16}, Vertex{40, 0}}) {
      CHECK(ev.martin_kernel(x, y).value > 0.0);
    }
  }
}

TEST_CASE("first-hit decomposition identity for on-axis targets") {
  // K(x, y) assembled from local time plus the hit law against the induced
  // kernel, for y on the axis.
  auto ev = make_eval(4096);
  const Kernel k = sign_kernel();
  QuadratureSpec q;
  for (const Vertex x : {Vertex{0, 1}, Vertex{1, 2}}) {
    for (const Vertex y : {Vertex{3, 0}, Vertex{-6, 0}}) {
      const auto lhs = ev.martin_kernel(x, y);

      FirstHitOptions fo;
      fo.horizon = 4096;
      fo.local_time = LocalTimeMode::none;
      fo.evolve.prune_threshold = 1e-15;
      const auto rep = first_hit_axis<double>(k, x, fo);
      double err = 0.0;
      const double g0y = green_induced(y.x1, PhiVariant::excursion, q, &err);
      double rhs = 0.0;  // pre-hit visits to an axis point from off-axis are zero
      for (std::int64_t z = rep.hit_law.lo; z < rep.hit_law.hi(); ++z) {
        const double w = *rep.hit_law.find(z);
        if (w == 0.0) continue;
        rhs += w * green_induced(y.x1 - z, PhiVariant::excursion, q, &err) / g0y;
      }
      const double budget =
          lhs.error + (rep.escaped_mass + rep.pruned_mass) * ev.axis_to_row_max(0) / g0y + 1e-9;
      CHECK(std::abs(lhs.value - rhs) <= budget);
    }
  }
}

TEST_CASE("local time decay along a row, with exact zeros where unreachable") {
  auto ev = make_eval(4096);
  const auto at_start = ev.local_time_origin(Vertex{0, 0});
  CHECK(at_start.value >= 1.0);

  CHECK(ev.local_time_origin(Vertex{-1, 1}).value == 0.0);
  CHECK(ev.local_time_origin(Vertex{1, -1}).value == 0.0);

  std::vector<std::int64_t> xs{8, 12, 16, 24, 32, 48, 64};
  const auto rows = local_time_decay(ev, DirectionalSequence::horizontal_row(+1, 1, xs));
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].scaled < rows[i - 1].scaled);
}

TEST_CASE("martin kernel approaches one along reduced directional sequences") {
  auto ev = make_eval(4096);
  for (const double lambda : {0.0, 1.0}) {
    const std::int64_t ks[] = {32, 64};
    const auto seq = DirectionalSequence::finite(lambda, ks);
    double prev_gap = 1e300;
    for (const Vertex& y : seq.targets) {
      const auto kv = ev.martin_kernel(Vertex{1, 1}, y);
      const double gap = std::abs(kv.value - 1.0);
      CHECK(gap < prev_gap + kv.error + 0.02);
      prev_gap = gap;
    }
  }
}
