#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "orlat/exact_oracle.hpp"
#include "orlat/rng.hpp"
#include "oracle_ref.hpp"

using namespace orlat;
using RD = SparseDistribution<Rational>;

namespace {
Kernel sign_kernel() { return Kernel{Orientation::sign_rule()}; }
}  // namespace

TEST_CASE("evolve: zero, one and two steps from the origin") {
  const Kernel k = sign_kernel();
  const RD d0 = evolve(k, RD::point(Vertex{0, 0}), 0);
  CHECK(d0.at(Vertex{0, 0}) == Rational(1));
  CHECK(d0.support_size() == 1);

  const RD d1 = evolve(k, RD::point(Vertex{0, 0}), 1);
  CHECK(d1.at(Vertex{0, 1}) == Rational(1, 2));
  CHECK(d1.at(Vertex{0, -1}) == Rational(1, 2));
  CHECK(d1.support_size() == 2);

  const RD d2 = evolve(k, RD::point(Vertex{0, 0}), 2);
  CHECK(d2.at(Vertex{0, 0}) == Rational(1, 3));
  CHECK(d2.at(Vertex{0, 2}) == Rational(1, 6));
  CHECK(d2.at(Vertex{1, 1}) == Rational(1, 6));
  CHECK(d2.at(Vertex{0, -2}) == Rational(1, 6));
  CHECK(d2.at(Vertex{-1, -1}) == Rational(1, 6));
  CHECK(d2.support_size() == 5);
  CHECK(d2.mass() == Rational(1));
}

TEST_CASE("evolve agrees with path enumeration") {
  const Kernel k = sign_kernel();
  for (const Vertex x : {Vertex{0, 0}, Vertex{2, 1}, Vertex{-1, -2}}) {
    for (int n = 1; n <= 7; ++n) {
      const auto ref = testref::law_after(k, x, n);
      const RD got = evolve(k, RD::point(x), n);
      CHECK(got.mass() == Rational(1));
      std::size_t nonzero = 0;
      got.for_each([&](const Vertex& v, const Rational& w) {
        ++nonzero;
        const auto it = ref.find(v);
        REQUIRE(it != ref.end());
        CHECK(it->second == w);
      });
      CHECK(nonzero == ref.size());
    }
  }
}

TEST_CASE("evolve: support stays inside the L1 ball of the horizon") {
  const Kernel k = sign_kernel();
  const int n = 12;
  const RD d = evolve(k, RD::point(Vertex{0, 0}), n);
  d.for_each([&](const Vertex& v, const Rational&) {
    CHECK(std::llabs(v.x1) + std::llabs(v.x2) <= n);
  });
}

TEST_CASE("Chapman-Kolmogorov holds exactly") {
  const Kernel k = sign_kernel();
  const RD a = evolve(k, evolve(k, RD::point(Vertex{1, 2}), 4), 3);
  const RD b = evolve(k, RD::point(Vertex{1, 2}), 7);
  a.for_each([&](const Vertex& v, const Rational& w) { CHECK(b.at(v) == w); });
  b.for_each([&](const Vertex& v, const Rational& w) { CHECK(a.at(v) == w); });
}

TEST_CASE("support cap failure is explicit") {
  const Kernel k = sign_kernel();
  EvolveOptions opts;
  opts.support_cap = 10;
  CHECK_THROWS_AS((void)evolve(k, RD::point(Vertex{0, 0}), 6, opts), ResourceError);
}

TEST_CASE("truncated green: frozen small values and monotonicity") {
  const Kernel k = sign_kernel();
  CHECK(truncated_green<Rational>(k, Vertex{3, 2}, Vertex{3, 2}, 0) == Rational(1));
  CHECK(truncated_green<Rational>(k, Vertex{0, 0}, Vertex{0, 1}, 1) == Rational(1, 2));
  CHECK(truncated_green<Rational>(k, Vertex{0, 0}, Vertex{0, 0}, 2) == Rational(4, 3));

  Rational prev(0);
  for (int n = 0; n <= 10; ++n) {
    const Rational g = truncated_green<Rational>(k, Vertex{0, 0}, Vertex{1, 1}, n);
    CHECK(g >= prev);
    prev = g;
  }
}

TEST_CASE("truncated green agrees with enumeration") {
  const Kernel k = sign_kernel();
  CounterRng rng(5, 0);
  for (int trial = 0; trial < 6; ++trial) {
    const Vertex x{static_cast<std::int64_t>(rng.below(5)) - 2,
                   static_cast<std::int64_t>(rng.below(5)) - 2};
    const Vertex y{static_cast<std::int64_t>(rng.below(5)) - 2,
                   static_cast<std::int64_t>(rng.below(5)) - 2};
    const int n = 1 + static_cast<int>(rng.below(7));
    CHECK(truncated_green<Rational>(k, x, y, n) == testref::truncated_green_ref(k, x, y, n));
  }
}

TEST_CASE("first hit at horizon two") {
  const Kernel k = sign_kernel();
  FirstHitOptions opts;
  opts.horizon = 2;
  const auto rep = first_hit_axis<Rational>(k, Vertex{0, 0}, opts);
  REQUIRE(rep.hit_law.w.size() == 1);
  CHECK(rep.hit_law.lo == 0);
  CHECK(rep.hit_law.w[0] == Rational(1, 3));
  CHECK(rep.escaped_mass == Rational(2, 3));
  CHECK(rep.local_time.at(Vertex{0, 0}) == Rational(1));
}

TEST_CASE("first hit matches the reference enumeration exactly") {
  const Kernel k = sign_kernel();
  for (const Vertex x : {Vertex{0, 0}, Vertex{0, 1}, Vertex{1, -2}}) {
    for (const int horizon : {1, 3, 6, 9}) {
      FirstHitOptions opts;
      opts.horizon = horizon;
      const auto got = first_hit_axis<Rational>(k, x, opts);
      const auto ref = testref::first_hit_ref(k, x, horizon);
      CHECK(got.escaped_mass == ref.escaped);
      Rational hit_total(0);
      for (std::int64_t z = got.hit_law.lo; z < got.hit_law.hi(); ++z) {
        const Rational w = *got.hit_law.find(z);
        hit_total += w;
        const auto it = ref.hit.find(z);
        if (w != Rational(0)) {
          REQUIRE(it != ref.hit.end());
          CHECK(it->second == w);
        }
      }
      CHECK(hit_total + ref.escaped == Rational(1));
      for (const auto& [v, w] : ref.local_time) CHECK(got.local_time.at(v) == w);
    }
  }
}

TEST_CASE("first-hit law from the origin is symmetric; reflected starts mirror") {
  const Kernel k = sign_kernel();
  FirstHitOptions opts;
  opts.horizon = 14;
  const auto rep = first_hit_axis<Rational>(k, Vertex{0, 0}, opts);
  for (std::int64_t z = rep.hit_law.lo; z < rep.hit_law.hi(); ++z) {
    const Rational* a = rep.hit_law.find(z);
    const Rational* b = rep.hit_law.find(-z);
    REQUIRE(b != nullptr);
    CHECK(*a == *b);
  }

  const auto up = first_hit_axis<Rational>(k, Vertex{0, 2}, opts);
  const auto dn = first_hit_axis<Rational>(k, Vertex{0, -2}, opts);
  CHECK(up.escaped_mass == dn.escaped_mass);
  for (std::int64_t z = up.hit_law.lo; z < up.hit_law.hi(); ++z) {
    const Rational* b = dn.hit_law.find(-z);
    REQUIRE(b != nullptr);
    CHECK(*up.hit_law.find(z) == *b);
  }
}

TEST_CASE("escaped mass decays like the inverse square root of the horizon") {
  const Kernel k = sign_kernel();
  FirstHitOptions a;
  a.horizon = 256;
  a.local_time = LocalTimeMode::none;
  FirstHitOptions b = a;
  b.horizon = 1024;
  const auto ra = first_hit_axis<double>(k, Vertex{0, 0}, a);
  const auto rb = first_hit_axis<double>(k, Vertex{0, 0}, b);
  CHECK(rb.escaped_mass < ra.escaped_mass);
  CHECK(std::abs(rb.escaped_mass / ra.escaped_mass - 0.5) <= 0.05);
}

TEST_CASE("char of the first hit: mass at zero, vanishing sine, shrinking enclosure") {
  const Kernel k = sign_kernel();
  FirstHitOptions opts;
  opts.horizon = 512;
  opts.local_time = LocalTimeMode::none;
  const auto rep = first_hit_axis<double>(k, Vertex{0, 0}, opts);
  const auto [c0, esc0] = char_of_first_hit(rep, 0.0);
  CHECK(c0 == doctest::Approx(1.0 - esc0).epsilon(1e-12));

  opts.horizon = 1024;
  const auto rep2 = first_hit_axis<double>(k, Vertex{0, 0}, opts);
  CHECK(rep2.escaped_mass < rep.escaped_mass);

  // Off-axis starts have an asymmetric hit law; the cosine reduction must refuse.
  FirstHitOptions off;
  off.horizon = 64;
  off.local_time = LocalTimeMode::none;
  const auto rep_off = first_hit_axis<double>(k, Vertex{0, 1}, off);
  CHECK_THROWS_AS((void)char_of_first_hit(rep_off, 1.0), std::logic_error);
}

TEST_CASE("amplitude enclosure equals the assembled law's cosine moment") {
  const Kernel k = sign_kernel();
  const std::int64_t horizon = 600;
  const double ts[] = {0.0, 0.37, 1.0, 2.2, std::numbers::pi};
  const auto enc = axis_char_enclosure(k, Vertex{0, 0}, ts, horizon);

  FirstHitOptions opts;
  opts.horizon = horizon;
  opts.local_time = LocalTimeMode::none;
  const auto rep = first_hit_axis<double>(k, Vertex{0, 0}, opts);
  for (const auto& e : enc) {
    const auto [c, esc] = char_of_first_hit(rep, e.t);
    CHECK(e.cos_moment == doctest::Approx(c).epsilon(1e-10));
    CHECK(e.escaped == doctest::Approx(esc).epsilon(1e-10));
  }
}

TEST_CASE("float-mode pruning reports its deficit") {
  const Kernel k = sign_kernel();
  FirstHitOptions opts;
  opts.horizon = 300;
  opts.local_time = LocalTimeMode::none;
  opts.evolve.prune_threshold = 1e-12;
  const auto rep = first_hit_axis<double>(k, Vertex{0, 0}, opts);
  CHECK(rep.pruned_mass > 0.0);
  CHECK(rep.pruned_mass < 1e-6);
  CHECK(rep.hit_mass() + rep.escaped_mass + rep.pruned_mass == doctest::Approx(1.0).epsilon(1e-12));
}
