#include "orlat/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace orlat {

namespace {

using cd = std::complex<double>;

cd expi(double t) { return {std::cos(t), std::sin(t)}; }

// 1 - e^{it} without cancellation: cos t - 1 = -2 sin^2(t/2).
cd one_minus_expi(double t) {
  const double s = std::sin(0.5 * t);
  return {2.0 * s * s, -std::sin(t)};
}

cd clog1p(cd z) {
  if (std::abs(z) < 1e-4) {
    // log(1+z) = z - z^2/2 + z^3/3 - z^4/4 + O(z^5); tail below 1e-21 here.
    return z * (1.0 - z * (0.5 - z * (1.0 / 3.0 - z * 0.25)));
  }
  return std::log(1.0 + z);
}

cd cexpm1(cd z) {
  if (std::abs(z) < 1e-4) {
    return z * (1.0 + z * (0.5 + z * (1.0 / 6.0 + z / 24.0)));
  }
  return std::exp(z) - 1.0;
}

// x^n by squaring; for huge n via exp(n log x) with the series-stable log
// around x = 1 supplied by the caller when needed.
cd pow_int(cd x, std::int64_t n) {
  if (n <= 0) return 1.0;
  if (n > 10000) return std::exp(static_cast<double>(n) * std::log(x));
  cd acc = 1.0, base = x;
  std::int64_t m = n;
  while (m > 0) {
    if (m & 1) acc *= base;
    base *= base;
    m >>= 1;
  }
  return acc;
}

// delta = 1 - chi(t), exact to full relative precision near t = 0.
cd one_minus_chi(double t) { return one_minus_expi(t) / (3.0 - expi(t)); }

// delta_r = 1 - r(t).
cd one_minus_r(double t) { return 2.0 * one_minus_expi(t) / (3.0 - 2.0 * expi(t)); }

// 1 - g(x) given delta = 1 - x:  g = (1 - w)/x, w = sqrt(delta (2 - delta)),
// so 1 - g = (w - delta) / (1 - delta).  No near-1 subtraction survives.
cd one_minus_g_from_delta(cd delta) {
  const cd w = std::sqrt(delta * (2.0 - delta));
  return (w - delta) / (1.0 - delta);
}

// 1 - r^{-1} g(r) given delta_r = 1 - r:
// r^{-1} g(r) = (1 - w)/r^2, w = sqrt(delta_r (2 - delta_r)), hence
// 1 - r^{-1} g(r) = (w - delta_r(2 - delta_r)) / r^2.
cd one_minus_rg_from_delta(cd delta_r) {
  const cd p = delta_r * (2.0 - delta_r);
  const cd w = std::sqrt(p);
  const cd r = 1.0 - delta_r;
  return (w - p) / (r * r);
}

double kappa_of(PhiVariant v);

double one_minus_phi_raw(double t, PhiVariant v) {
  if (v == PhiVariant::excursion) return one_minus_g_from_delta(one_minus_chi(t)).real();
  return one_minus_rg_from_delta(one_minus_r(t)).real();
}

double kappa_of(PhiVariant v) {
  static const double kp = fit_phi_singularity(PhiVariant::paper).kappa;
  static const double ke = fit_phi_singularity(PhiVariant::excursion).kappa;
  return v == PhiVariant::paper ? kp : ke;
}

}  // namespace

std::string to_string(PhiVariant v) {
  return v == PhiVariant::paper ? "paper" : "excursion";
}

cd r_of(double t) { return 1.0 / (3.0 - 2.0 * expi(t)); }

cd chi_of(double t) { return 2.0 / (3.0 - expi(t)); }

cd g_of(cd x) {
  // (1 - sqrt(1 - x^2))/x in the form x/(1 + sqrt(1 - x^2)): removable at 0
  // and no subtraction; principal branch keeps |g| <= 1 on the curves used.
  const cd w = std::sqrt(1.0 - x * x);
  return x / (1.0 + w);
}

double phi(double t, PhiVariant v) { return 1.0 - one_minus_phi(t, v); }

double one_minus_phi(double t, PhiVariant v) {
  const double a = std::abs(t);
  if (a < 1e-12) return kappa_of(v) * std::sqrt(a);
  return one_minus_phi_raw(t, v);
}

SqrtFit fit_phi_singularity(PhiVariant v) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = 40;
  for (int i = 0; i < n; ++i) {
    const double lt = -6.0 + 3.0 * i / (n - 1);
    const double t = std::pow(10.0, lt);
    const double x = std::log(t);
    const double y = std::log(one_minus_phi_raw(t, v));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  SqrtFit f;
  f.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  f.kappa = std::exp((sy - f.slope * sx) / n);
  return f;
}

cd row_visit_transform(double t, std::int64_t k) {
  if (k < 0) throw std::invalid_argument("row_visit_transform: k must be >= 0");
  if (k == 0) return 1.0;
  const cd delta = one_minus_chi(t);   // 1 - beta
  const cd u = one_minus_g_from_delta(delta);  // 1 - g(beta)
  const cd g = 1.0 - u;
  const cd beta = 1.0 - delta;
  const cd m = 3.0 / (3.0 - expi(t));  // per-visit run-length factor
  const cd L = clog1p(-u);             // log g, stable near g = 1

  const cd one_minus_g2 = u * (2.0 - u);
  const cd one_minus_g2k = -cexpm1(2.0 * static_cast<double>(k) * L);
  const cd one_minus_g2k2 = -cexpm1(2.0 * static_cast<double>(k - 1) * L);
  const cd gk1 = k > 10000 ? std::exp(static_cast<double>(k - 1) * L)
                           : pow_int(g, k - 1);

  // Ladder return weight to row k avoiding the axis:
  //   rho = beta g / 2 * (1 + (1 - g^{2k-2}) / (1 - g^{2k}))
  // assembled so 1 - rho keeps its O(1/k) size instead of cancelling.
  const cd ratio = one_minus_g2k2 / one_minus_g2k;
  const cd one_plus_small = 1.0 + delta + u - delta * u;  // 2 - beta g, shifted
  const cd one_minus_rho = 0.5 * (one_plus_small - (beta * g) * ratio);

  return m * 0.5 * gk1 * one_minus_g2 / (one_minus_g2k * one_minus_rho);
}

cd row_visit_transform_paper(double t, std::int64_t k) {
  if (k < 0) throw std::invalid_argument("row_visit_transform_paper: k must be >= 0");
  if (k == 0) return 1.0;
  const cd u = one_minus_g_from_delta(one_minus_r(t));  // 1 - g(r)
  if (k > 10000) return std::exp(static_cast<double>(k) * clog1p(-u));
  return pow_int(1.0 - u, k);
}

double green_induced(std::int64_t v, PhiVariant var, const QuadratureSpec& q, double* error) {
  const double vd = static_cast<double>(v);
  const auto f = [&](double t) { return std::cos(t * vd) / one_minus_phi(t, var); };
  const QuadResult r = singular_integral(f, q);
  if (error) *error = r.error / (2.0 * std::numbers::pi);
  return r.value / (2.0 * std::numbers::pi);
}

double green_from_axis(const Vertex& z, const Vertex& y, PhiVariant var,
                       const QuadratureSpec& q, double* error) {
  if (z.x2 != 0) throw std::invalid_argument("green_from_axis: source must lie on the axis");
  const std::int64_t k = y.x2 < 0 ? -y.x2 : y.x2;
  // Central symmetry maps (x1, -x2) onto (-x1, x2); fold below-axis targets.
  std::int64_t delta = checked_add(y.x1, -z.x1);
  if (y.x2 < 0) delta = -delta;
  const double dd = static_cast<double>(delta);

  const auto f = [&](double t) {
    const cd v = var == PhiVariant::excursion ? row_visit_transform(t, k)
                                              : row_visit_transform_paper(t, k);
    const double re = std::cos(t * dd) * v.real() + std::sin(t * dd) * v.imag();
    return re / one_minus_phi(t, var);
  };
  const QuadResult r = singular_integral(f, q);
  if (error) *error = r.error / (2.0 * std::numbers::pi);
  return r.value / (2.0 * std::numbers::pi);
}

std::vector<double> arbitration_grid() {
  std::vector<double> g;
  for (int k = 1; k <= 16; ++k) g.push_back(k * std::numbers::pi / 16.0);
  return g;
}

ArbitrationReport arbitrate_phi(const Kernel& k, std::int64_t horizon,
                                std::span<const double> grid) {
  const Vertex origin{0, 0};
  const auto enclosures = axis_char_enclosure(k, origin, grid, horizon);

  ArbitrationReport rep;
  bool paper_in_all = true, excursion_in_all = true;
  for (const auto& e : enclosures) {
    ArbitrationRow row;
    row.t = e.t;
    row.phi_paper = phi(e.t, PhiVariant::paper);
    row.phi_excursion = phi(e.t, PhiVariant::excursion);
    row.oracle_lo = e.lo();
    row.oracle_hi = e.hi();
    rep.rows.push_back(row);
    rep.enclosure_width = std::max(rep.enclosure_width, e.hi() - e.lo());
    if (row.phi_paper < row.oracle_lo || row.phi_paper > row.oracle_hi) paper_in_all = false;
    if (row.phi_excursion < row.oracle_lo || row.phi_excursion > row.oracle_hi)
      excursion_in_all = false;
  }
  rep.decisive = paper_in_all != excursion_in_all;
  rep.winner = paper_in_all && !excursion_in_all ? PhiVariant::paper : PhiVariant::excursion;
  return rep;
}

}  // namespace orlat
