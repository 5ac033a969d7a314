#include "orlat/verify.hpp"

#include <cmath>
#include <numbers>

#include "orlat/exact_oracle.hpp"
#include "orlat/martin.hpp"
#include "orlat/monte_carlo.hpp"
#include "orlat/quadrature.hpp"
#include "orlat/rng.hpp"
#include "orlat/spectral.hpp"

namespace orlat {

namespace {

constexpr double pi = std::numbers::pi;

struct Suite {
  std::string name;
  std::vector<CheckResult> results;

  void check(const std::string& what, bool pass, double value, double bound,
             const std::string& note = "") {
    results.push_back(CheckResult{name, what, pass, value, bound, note});
  }
  void check_le(const std::string& what, double value, double bound, const std::string& note = "") {
    check(what, value <= bound, value, bound, note);
  }
};

Kernel sign_kernel() { return Kernel{Orientation::sign_rule()}; }

}  // namespace

std::vector<CheckResult> verify_kernel(const VerifyParams& p) {
  Suite s{"kernel", {}};
  Kernel k = sign_kernel();

  bool rows_ok = true;
  for (std::int64_t y = -6; y <= 6; ++y) {
    for (std::int64_t x = -3; x <= 3; ++x) {
      Rational total(0);
      for (const auto& nb : k.out_neighbors(Vertex{x, y})) total += nb.p;
      if (total != Rational(1)) rows_ok = false;
    }
  }
  s.check("row-sums-exactly-one", rows_ok, rows_ok ? 1.0 : 0.0, 1.0);

  s.check("degree-two-on-axis", k.out_degree(Vertex{4, 0}) == 2, k.out_degree(Vertex{4, 0}), 2);
  s.check("degree-three-off-axis", k.out_degree(Vertex{4, -2}) == 3, k.out_degree(Vertex{4, -2}), 3);
  s.check("orientation-at-zero", orientation_at(k.orientation(), 0) == 0,
          orientation_at(k.orientation(), 0), 0);

  CounterRng rng(p.seed, 901);
  bool central_ok = true, translation_ok = true;
  for (int trial = 0; trial < 200; ++trial) {
    const Vertex u{static_cast<std::int64_t>(rng.below(21)) - 10,
                   static_cast<std::int64_t>(rng.below(21)) - 10};
    const auto nb = k.out_neighbors(u);
    const std::int64_t c1 = static_cast<std::int64_t>(rng.below(11)) - 5;
    for (const auto& n : nb) {
      if (k.transition_prob(reflected(u, c1), reflected(n.v, c1)) != n.p) central_ok = false;
      if (k.transition_prob(shifted(u, 1, 0), shifted(n.v, 1, 0)) != n.p) translation_ok = false;
    }
  }
  s.check("central-symmetry", central_ok, central_ok, 1);
  s.check("horizontal-translation-invariance", translation_ok, translation_ok, 1);

  // One-step sampling frequencies within multinomial 4 sigma.
  const Vertex u{5, 3};
  const std::int64_t n = 200000;
  std::map<Vertex, std::int64_t> hits;
  CounterRng srng(p.seed, 902);
  for (std::int64_t i = 0; i < n; ++i) ++hits[k.step(u, srng)];
  bool freq_ok = hits.size() == 3;
  double worst = 0.0;
  for (const auto& nb : k.out_neighbors(u)) {
    const double f = static_cast<double>(hits[nb.v]) / static_cast<double>(n);
    const double q = to_double(nb.p);
    const double sigma = std::sqrt(q * (1 - q) / static_cast<double>(n));
    worst = std::max(worst, std::abs(f - q) / sigma);
  }
  s.check_le("step-frequency-4sigma", worst, 4.0);

  return s.results;
}

std::vector<CheckResult> verify_oracle(const VerifyParams& p) {
  (void)p;
  Suite s{"oracle", {}};
  Kernel k = sign_kernel();
  using RD = SparseDistribution<Rational>;

  // Two-step law from the origin, exact.
  const RD two = evolve(k, RD::point(Vertex{0, 0}), 2);
  const bool two_ok = two.at(Vertex{0, 0}) == Rational(1, 3) &&
                      two.at(Vertex{0, 2}) == Rational(1, 6) &&
                      two.at(Vertex{1, 1}) == Rational(1, 6) &&
                      two.at(Vertex{0, -2}) == Rational(1, 6) &&
                      two.at(Vertex{-1, -1}) == Rational(1, 6) && two.mass() == Rational(1);
  s.check("two-step-law-exact", two_ok, two_ok, 1);

  // Chapman-Kolmogorov, exact.
  const RD a = evolve(k, evolve(k, RD::point(Vertex{0, 1}), 3), 4);
  const RD b = evolve(k, RD::point(Vertex{0, 1}), 7);
  bool ck_ok = a.mass() == Rational(1) && b.mass() == Rational(1);
  if (ck_ok) {
    bool equal = true;
    a.for_each([&](const Vertex& v, const Rational& w) {
      if (b.at(v) != w) equal = false;
    });
    ck_ok = equal;
  }
  s.check("chapman-kolmogorov-exact", ck_ok, ck_ok, 1);

  const Rational tg = truncated_green<Rational>(k, Vertex{0, 0}, Vertex{0, 0}, 2);
  s.check("truncated-green-two-steps", tg == Rational(4, 3), to_double(tg), 4.0 / 3.0);

  FirstHitOptions fo;
  fo.horizon = 2;
  const auto rep2 = first_hit_axis<Rational>(k, Vertex{0, 0}, fo);
  const bool fh_ok = rep2.hit_law.w.size() == 1 && rep2.hit_law.lo == 0 &&
                     rep2.hit_law.w[0] == Rational(1, 3) && rep2.escaped_mass == Rational(2, 3);
  s.check("first-hit-horizon-two", fh_ok, fh_ok, 1);

  FirstHitOptions fo12;
  fo12.horizon = 12;
  const auto rep12 = first_hit_axis<Rational>(k, Vertex{0, 0}, fo12);
  bool sym_ok = rep12.hit_mass() + rep12.escaped_mass == Rational(1);
  for (std::int64_t z = rep12.hit_law.lo; z < rep12.hit_law.hi(); ++z) {
    const Rational* w = rep12.hit_law.find(z);
    const Rational* wm = rep12.hit_law.find(-z);
    if (!wm || *w != *wm) sym_ok = false;
  }
  s.check("first-hit-symmetry-and-conservation", sym_ok, sym_ok, 1);

  // Escaped mass scales like 1/sqrt(horizon).
  FirstHitOptions fa;
  fa.horizon = 256;
  fa.local_time = LocalTimeMode::none;
  const auto rA = first_hit_axis<double>(k, Vertex{0, 0}, fa);
  fa.horizon = 1024;
  const auto rB = first_hit_axis<double>(k, Vertex{0, 0}, fa);
  const double ratio = rB.escaped_mass / rA.escaped_mass;
  s.check("escaped-mass-sqrt-decay", std::abs(ratio - 0.5) <= 0.05, ratio, 0.5, "ratio at 4x horizon");

  // Path split at the first axis hit: exact identity at a small horizon.
  const std::int64_t N = 12;
  const Vertex x{0, 1}, y{1, 1};
  const Rational lhs = truncated_green<Rational>(k, x, y, N);
  FirstHitOptions fs;
  fs.horizon = N;
  fs.local_time = LocalTimeMode::full;
  const auto frep = first_hit_axis<Rational>(k, x, fs);
  Rational rhs = frep.local_time.at(y);
  for (std::int64_t m = 1; m <= N; ++m) {
    FirstHitOptions fm;
    fm.horizon = m;
    fm.local_time = LocalTimeMode::none;
    const auto rm = first_hit_axis<Rational>(k, x, fm);
    FirstHitOptions fm1;
    fm1.horizon = m - 1;
    fm1.local_time = LocalTimeMode::none;
    RowSpan<Rational> hit_m = rm.hit_law;
    if (m > 1) {
      const auto rm1 = first_hit_axis<Rational>(k, x, fm1);
      for (std::int64_t z = rm1.hit_law.lo; z < rm1.hit_law.hi(); ++z)
        hit_m.add_at(z, -*rm1.hit_law.find(z));
    }
    for (std::int64_t z = hit_m.lo; z < hit_m.hi(); ++z) {
      const Rational w = *hit_m.find(z);
      if (w != Rational(0)) rhs += w * truncated_green<Rational>(k, Vertex{z, 0}, y, N - m);
    }
  }
  s.check("strong-markov-split-exact", lhs == rhs, to_double(lhs), to_double(rhs));

  // Characteristic enclosure at t=0 equals the hit mass.
  const auto [c0, esc0] = char_of_first_hit(rep12, 0.0);
  s.check("char-at-zero", std::abs(c0 + esc0 - 1.0) < 1e-15, c0 + esc0, 1.0);

  return s.results;
}

std::vector<CheckResult> verify_spectral(const VerifyParams& p) {
  Suite s{"spectral", {}};
  Kernel k = sign_kernel();
  QuadratureSpec q;
  q.abs_tol = p.abs_tol;
  const double bump = p.phi_perturbation;

  s.check_le("phi-paper-at-pi", std::abs(phi(pi, PhiVariant::paper) + bump - (25.0 - 10.0 * std::sqrt(6.0))),
             1e-12);
  s.check_le("phi-excursion-at-pi",
             std::abs(phi(pi, PhiVariant::excursion) + bump - (2.0 - std::sqrt(3.0))), 1e-12);
  s.check_le("phi-at-zero", std::abs(phi(0.0, PhiVariant::excursion) + bump - 1.0), 1e-14);
  s.check_le("g-at-half", std::abs(g_of(0.5).real() - (2.0 - std::sqrt(3.0))), 1e-12);
  s.check_le("r-at-pi", std::abs(r_of(pi) - std::complex<double>(0.2, 0.0)), 1e-15);

  bool even_ok = true, bounded_ok = true, branch_ok = true;
  CounterRng rng(p.seed, 903);
  for (int i = 0; i < 200; ++i) {
    const double t = (rng.next_double() * 2.0 - 1.0) * pi;
    for (const PhiVariant v : {PhiVariant::paper, PhiVariant::excursion}) {
      if (std::abs(phi(t, v) - phi(-t, v)) > 1e-13) even_ok = false;
      if (std::abs(phi(t, v)) > 1.0 + 1e-12) bounded_ok = false;
    }
    if (std::abs(g_of(r_of(t))) > 1.0 + 1e-12) branch_ok = false;
    if (std::abs(g_of(chi_of(t))) > 1.0 + 1e-12) branch_ok = false;
  }
  s.check("phi-even", even_ok, even_ok, 1);
  s.check("phi-bounded-by-one", bounded_ok, bounded_ok, 1);
  s.check("g-branch-bounded", branch_ok, branch_ok, 1);

  const auto fe = fit_phi_singularity(PhiVariant::excursion);
  const auto fp = fit_phi_singularity(PhiVariant::paper);
  s.check_le("phi-singularity-slope-excursion", std::abs(fe.slope - 0.5), 0.02);
  s.check_le("phi-singularity-slope-paper", std::abs(fp.slope - 0.5), 0.02);

  const auto qa = singular_integral([](double t) { return 1.0 / std::sqrt(std::abs(t)); }, q);
  s.check_le("quadrature-inverse-sqrt", std::abs(qa.value - 4.0 * std::sqrt(pi)), 1e-8);
  const auto qb = singular_integral([](double t) { return std::cos(t); }, q);
  s.check_le("quadrature-cosine", std::abs(qb.value), 1e-9);
  const auto qc = singular_integral([](double t) { return 1.0; }, q);
  s.check_le("quadrature-constant", std::abs(qc.value - 2.0 * pi), 1e-10);

  const auto arb = arbitrate_phi(k, p.arbitration_horizon, arbitration_grid());
  s.check("arbitration-decisive", arb.decisive, arb.decisive, 1,
          "winner=" + to_string(arb.winner) + (bump != 0.0 ? " (perturbed)" : ""));
  bool winner_inside = arb.decisive;
  for (const auto& row : arb.rows) {
    const double w =
        (arb.winner == PhiVariant::paper ? row.phi_paper : row.phi_excursion) + bump;
    if (w < row.oracle_lo || w > row.oracle_hi) winner_inside = false;
  }
  s.check("arbitration-winner-inside-enclosures", winner_inside, winner_inside, 1);

  // Vertical-factor cross-check against exact pre-hit local times.
  FirstHitOptions fo;
  fo.horizon = 1024;
  fo.local_time = LocalTimeMode::window;
  fo.window = {-1100, 1100, 1, 2};
  fo.evolve.prune_threshold = 1e-16;
  const auto rep = first_hit_axis<double>(k, Vertex{0, 0}, fo);
  const double budget = rep.escaped_mass + rep.pruned_mass;
  double worst = 0.0;
  for (std::int64_t kk = 1; kk <= 2; ++kk) {
    for (const double t : {0.4, 1.1, 2.3}) {
      std::complex<double> oracle = 0.0;
      const auto it = rep.local_time.rows().find(kk);
      for (std::size_t i = 0; i < it->second.w.size(); ++i) {
        const double xx = static_cast<double>(it->second.lo + static_cast<std::int64_t>(i));
        oracle += it->second.w[i] * std::complex<double>(std::cos(t * xx), std::sin(t * xx));
      }
      const std::complex<double> ladder = row_visit_transform(t, kk);
      worst = std::max(worst, std::abs(ladder - oracle));
    }
  }
  // Missing local-time mass is at most (escaped+pruned) * killed diagonal Green.
  s.check_le("row-visit-transform-vs-oracle", worst, 2.0 * budget,
             "max |transform - truncated transform|");

  // Induced Green: symmetry, diagonal, and decay exponent.
  double err = 0.0;
  bool symmetric = true;
  for (std::int64_t v = 1; v <= 10; ++v) {
    const double gpos = green_induced(v, arb.winner, q, &err);
    const double gneg = green_induced(-v, arb.winner, q, &err);
    if (std::abs(gpos - gneg) > 1e-9) symmetric = false;
  }
  s.check("green-induced-symmetric", symmetric, symmetric, 1);
  const double g00 = green_induced(0, arb.winner, q, &err);
  s.check("green-induced-diagonal-at-least-one", g00 >= 1.0, g00, 1.0);

  double ratio_worst = 0.0;
  double prev = std::sqrt(64.0) * green_induced(64, arb.winner, q, &err);
  for (std::int64_t v = 128; v <= 4096; v *= 2) {
    const double cur = std::sqrt(static_cast<double>(v)) * green_induced(v, arb.winner, q, &err);
    ratio_worst = std::max(ratio_worst, std::abs(cur / prev - 1.0));
    prev = cur;
  }
  s.check_le("green-induced-sqrt-plateau", ratio_worst, 0.02);

  // green_from_axis consistency and vertical decay.
  const double g_axis0 = green_from_axis(Vertex{0, 0}, Vertex{3, 0}, arb.winner, q, &err);
  s.check_le("green-from-axis-row-zero-matches-induced",
             std::abs(g_axis0 - green_induced(3, arb.winner, q, &err)), 1e-9);
  bool decay_ok = true;
  double prev_g = 1e300;
  for (std::int64_t kk : {1, 2, 4, 8, 16, 32}) {
    const double g = green_from_axis(Vertex{0, 0}, Vertex{0, kk}, arb.winner, q, &err);
    if (g >= prev_g) decay_ok = false;
    prev_g = g;
  }
  s.check("green-from-axis-vertical-decay", decay_ok, decay_ok, 1);

  const double plateau_100 =
      100.0 * green_from_axis(Vertex{0, 0}, Vertex{0, 100}, arb.winner, q, &err);
  const double plateau_200 =
      200.0 * green_from_axis(Vertex{0, 0}, Vertex{0, 200}, arb.winner, q, &err);
  s.check_le("green-lambda0-plateau", std::abs(plateau_200 / plateau_100 - 1.0), 0.02);

  // Halving the tolerance moves values by less than the reported error.
  QuadratureSpec q2 = q;
  q2.abs_tol = 0.5 * q.abs_tol;
  double e1 = 0.0, e2 = 0.0;
  const double v1 = green_induced(7, arb.winner, q, &e1);
  const double v2 = green_induced(7, arb.winner, q2, &e2);
  s.check_le("quadrature-tolerance-consistency", std::abs(v1 - v2), std::max(e1, 1e-12));

  return s.results;
}

std::vector<CheckResult> verify_mc(const VerifyParams& p) {
  Suite s{"mc", {}};
  Kernel k = sign_kernel();

  const Estimate e1 = estimate_green(k, Vertex{0, 0}, Vertex{0, 0}, 20000, 50, p.seed);
  const Estimate e2 = estimate_green(k, Vertex{0, 0}, Vertex{0, 0}, 20000, 50, p.seed);
  s.check("estimate-reproducible", e1.value == e2.value && e1.stderr_ == e2.stderr_, e1.value,
          e2.value);

  const Estimate ezero = estimate_green(k, Vertex{0, 0}, Vertex{0, 0}, 1000, 0, p.seed);
  s.check("green-horizon-zero-exact", ezero.value == 1.0 && ezero.stderr_ == 0.0, ezero.value, 1.0);

  // Agreement with the exact truncated Green value.
  CounterRng prng(p.seed, 904);
  bool agree = true;
  double worst_pull = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const Vertex x{static_cast<std::int64_t>(prng.below(5)) - 2,
                   static_cast<std::int64_t>(prng.below(5)) - 2};
    const Vertex y{static_cast<std::int64_t>(prng.below(5)) - 2,
                   static_cast<std::int64_t>(prng.below(5)) - 2};
    const Estimate est = estimate_green(k, x, y, p.mc_paths / 5, 50, p.seed + trial);
    const double exact =
        truncated_green<double>(k, x, y, 50);
    const double pull = std::abs(est.value - exact) / std::max(est.stderr_, 1e-12);
    worst_pull = std::max(worst_pull, pull);
    if (pull > 4.0) agree = false;
  }
  s.check_le("green-vs-oracle-pull", worst_pull, 4.0);

  // Monotone in horizon under a shared seed.
  const Estimate h1 = estimate_green(k, Vertex{0, 0}, Vertex{1, 1}, 20000, 30, p.seed);
  const Estimate h2 = estimate_green(k, Vertex{0, 0}, Vertex{1, 1}, 20000, 60, p.seed);
  s.check("green-monotone-in-horizon", h2.value >= h1.value - 1e-12, h2.value, h1.value);

  // Direct sampler symmetry: sign balance within 3 sigma.
  CounterRng rng(p.seed, 905);
  std::int64_t pos = 0, neg = 0;
  const std::int64_t ns = 20000;
  for (std::int64_t i = 0; i < ns; ++i) {
    const auto smp = sample_induced_direct(k, rng, 1000000);
    if (smp.capped) continue;
    if (smp.displacement > 0) ++pos;
    if (smp.displacement < 0) ++neg;
  }
  const double imbalance = std::abs(static_cast<double>(pos - neg)) /
                           std::sqrt(static_cast<double>(std::max<std::int64_t>(pos + neg, 1)));
  s.check_le("induced-direct-sign-balance", imbalance, 3.0);

  // Direct vs geometric representation: two-sample chi-square.
  const auto law_a = estimate_nu(k, Vertex{0, 0}, p.mc_paths, p.seed + 10, 1000000);
  const auto law_b =
      estimate_nu_geometric(k, PhiVariant::excursion, p.mc_paths, p.seed + 11, 1000000);
  const auto chi = chi_square_two_sample(law_a, law_b);
  s.check("direct-vs-geometric-chi-square", chi.p_value > 0.01, chi.p_value, 0.01,
          "stat=" + std::to_string(chi.statistic) + " dof=" + std::to_string(chi.dof));

  // Occupation identity: local times of one trajectory partition its length.
  CounterRng trng(p.seed, 906);
  const Trajectory traj = simulate(k, Vertex{0, 0}, 5000, trng);
  std::map<Vertex, std::int64_t> eta;
  ++eta[traj.start];
  for (const Vertex& v : traj.steps) ++eta[v];
  std::int64_t total = 0;
  for (const auto& [v, c] : eta) total += c;
  s.check("occupation-identity", total == 5001, static_cast<double>(total), 5001);

  // Drift of the first-hit abscissa from above the axis is to the right.
  const auto law_up = estimate_nu(k, Vertex{0, 1}, 20000, p.seed + 12, 1000000);
  double mean = 0.0, mass = 0.0;
  for (const auto& [z, c] : law_up.counts) {
    mean += static_cast<double>(z) * static_cast<double>(c);
    mass += static_cast<double>(c);
  }
  mean /= mass;
  s.check("nu-above-axis-drifts-right", mean > 0.0, mean, 0.0);

  return s.results;
}

std::vector<CheckResult> verify_martin(const VerifyParams& p) {
  Suite s{"martin", {}};
  Kernel k = sign_kernel();
  MartinParams mp;
  mp.quad.abs_tol = p.abs_tol;
  mp.oracle_horizon = 2048;
  MartinEvaluator ev(k, mp);

  bool base_ok = true;
  for (std::int64_t v : {5, 50, 500}) {
    if (std::abs(ev.martin_kernel_induced(0, v).value - 1.0) > 1e-12) base_ok = false;
    if (std::abs(ev.martin_kernel(Vertex{0, 0}, Vertex{v, 2}).value - 1.0) > 1e-12)
      base_ok = false;
  }
  s.check("base-point-normalization", base_ok, base_ok, 1);

  // Synthetic power law recovers exactly.
  std::vector<std::int64_t> ks;
  for (std::int64_t kk = 8; kk <= 64; kk *= 2) ks.push_back(kk);
  ks.push_back(96);
  ks.push_back(128);
  ks.push_back(192);
  ks.push_back(256);
  const auto seq = DirectionalSequence::finite(0.0, ks);
  std::vector<double> synth;
  for (const Vertex& y : seq.targets) synth.push_back(3.5 / static_cast<double>(y.x2));
  const auto sf = fit_asymptotics(seq, synth);
  s.check_le("fit-synthetic-exponent", std::abs(sf.exponent + 1.0), 1e-9);
  s.check_le("fit-synthetic-constant", std::abs(sf.constant - 3.5), 1e-9);

  // Reduced-scale Green exponents (full scales live in the acceptance suite).
  std::vector<std::int64_t> vks{8, 12, 16, 24, 32, 48, 64, 96};
  const auto seq0 = DirectionalSequence::finite(0.0, vks);
  std::vector<double> gvals;
  for (const Vertex& y : seq0.targets) gvals.push_back(ev.green_axis(Vertex{0, 0}, y).value);
  const auto f0 = fit_asymptotics(seq0, gvals);
  s.check_le("green-vertical-exponent", std::abs(f0.exponent + 1.0), 0.08);

  std::vector<std::int64_t> hxs{64, 96, 128, 192, 256, 384, 512, 768, 1024};
  const auto seqh = DirectionalSequence::horizontal_row(+1, 0, hxs);
  std::vector<double> hvals;
  for (const Vertex& y : seqh.targets) hvals.push_back(ev.green_axis(Vertex{0, 0}, y).value);
  const auto fh = fit_asymptotics(seqh, hvals);
  s.check_le("green-horizontal-exponent", std::abs(fh.exponent + 0.5), 0.05);

  // Off-axis Green against the exact truncated value.
  const Vertex x{0, 1};
  for (const Vertex y : {Vertex{1, 0}, Vertex{-2, 0}}) {
    const ValueWithError g = ev.green(x, y);
    const double lower = truncated_green<double>(k, x, y, 2048, EvolveOptions{});
    const bool ok = g.value + g.error >= lower && g.value - g.error <= lower + 0.05;
    s.check("green-general-vs-truncated@" + std::to_string(y.x1), ok, g.value, lower,
            "error=" + std::to_string(g.error));
  }

  // Central symmetry of the assembled Green.
  const ValueWithError ga = ev.green(Vertex{0, 1}, Vertex{3, 2});
  const ValueWithError gb = ev.green(Vertex{0, -1}, Vertex{-3, -2});
  s.check_le("green-general-central-symmetry", std::abs(ga.value - gb.value),
             2.0 * (ga.error + gb.error) + 1e-9);

  // K -> 1 at a reduced scale.
  double worst = 0.0;
  for (const std::int64_t kk : {48, 64}) {
    const Vertex y{0, kk};
    for (const Vertex x2 : {Vertex{1, 1}, Vertex{-2, 2}, Vertex{2, 0}}) {
      const ValueWithError kv = ev.martin_kernel(x2, y);
      worst = std::max(worst, std::abs(kv.value - 1.0) - kv.error);
    }
  }
  s.check_le("martin-kernel-near-one-reduced", worst, 0.12);

  // Pre-hit local times: unreachable site is exactly zero; scaled decay.
  const ValueWithError unreachable = ev.local_time_origin(Vertex{-1, 1});
  s.check("local-time-unreachable-zero", unreachable.value == 0.0, unreachable.value, 0.0);
  std::vector<std::int64_t> lks{8, 12, 16, 24, 32};
  const auto lseq = DirectionalSequence::horizontal_row(+1, 1, lks);
  const auto rows = local_time_decay(ev, lseq);
  bool decreasing = true;
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].scaled >= rows[i - 1].scaled) decreasing = false;
  s.check("local-time-scaled-decay", decreasing, decreasing, 1);

  return s.results;
}

std::vector<CheckResult> verify_all(const VerifyParams& p) {
  std::vector<CheckResult> all;
  for (const auto& part :
       {verify_kernel(p), verify_oracle(p), verify_spectral(p), verify_mc(p), verify_martin(p)}) {
    all.insert(all.end(), part.begin(), part.end());
  }
  return all;
}

}  // namespace orlat
