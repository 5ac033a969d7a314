#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "orlat/exact_oracle.hpp"
#include "orlat/quadrature.hpp"
#include "orlat/vertex.hpp"

namespace orlat {

// Two closed forms circulate for the characteristic function of the
// horizontal displacement accumulated over one vertical excursion:
//
//   paper:      phi(t) = Re[ r(t)^{-1} g(r(t)) ],  r(t) = (3 - 2 e^{it})^{-1}
//   excursion:  phi(t) = Re[ g(chi(t)) ],          chi(t) = 2 / (3 - e^{it})
//
// with g(x) = (1 - sqrt(1 - x^2)) / x.  They disagree numerically (0.5051
// vs 0.2679 at t = pi); the exact finite-horizon hit law arbitrates which
// one is the law of the walk, and the loser stays available behind the flag.
enum class PhiVariant { paper, excursion };

std::string to_string(PhiVariant v);

std::complex<double> r_of(double t);
std::complex<double> chi_of(double t);
std::complex<double> g_of(std::complex<double> x);

double phi(double t, PhiVariant v);

// 1 - phi evaluated through algebraically rearranged expressions, so the
// sqrt|t| behaviour near 0 comes out at full relative precision instead of
// cancelling; below |t| = 1e-12 the fitted kappa sqrt|t| model takes over.
double one_minus_phi(double t, PhiVariant v);

struct SqrtFit {
  double kappa = 0.0;  // 1 - phi ~ kappa sqrt|t|
  double slope = 0.0;  // log-log slope, should be 1/2
};
SqrtFit fit_phi_singularity(PhiVariant v);

// Green function of the axis chain: G0(0, v) as a Fourier integral.
double green_induced(std::int64_t v, PhiVariant var, const QuadratureSpec& q,
                     double* error = nullptr);

// Green function from an axis point z to any y, via the Fourier integral
// with the vertical-passage factor of the chosen variant.
double green_from_axis(const Vertex& z, const Vertex& y, PhiVariant var,
                       const QuadratureSpec& q, double* error = nullptr);

// Fourier transform (over the landing abscissa, relative to the start) of
// the expected pre-hit visits to row k, for the excursion variant; the
// integrand factor green_from_axis uses.  k = 0 gives 1.
std::complex<double> row_visit_transform(double t, std::int64_t k);

// Paper-variant vertical factor g(r(t))^k, kept verbatim behind the flag.
std::complex<double> row_visit_transform_paper(double t, std::int64_t k);

// Which closed form sits inside the exact-oracle enclosure at every grid
// point.  Decisive only when exactly one does, uniformly over the grid.
struct ArbitrationRow {
  double t = 0.0;
  double phi_paper = 0.0;
  double phi_excursion = 0.0;
  double oracle_lo = 0.0;
  double oracle_hi = 0.0;
};

struct ArbitrationReport {
  PhiVariant winner = PhiVariant::excursion;
  bool decisive = false;
  double enclosure_width = 0.0;  // max over grid
  std::vector<ArbitrationRow> rows;
};

// Default grid t = k pi/16, k = 1..16.
std::vector<double> arbitration_grid();

ArbitrationReport arbitrate_phi(const Kernel& k, std::int64_t horizon,
                                std::span<const double> grid);

}  // namespace orlat
