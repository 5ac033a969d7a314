#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "orlat/exact_oracle.hpp"
#include "orlat/spectral.hpp"

namespace orlat {

// Family of targets going to infinity with y1 / y2^2 -> lambda, or
// horizontally along a fixed row (the +-infinity case).
struct DirectionalSequence {
  bool horizontal = false;
  double lambda = 0.0;  // finite case only
  int direction = +1;   // horizontal case only
  std::int64_t row = 0;
  std::vector<Vertex> targets;

  static DirectionalSequence finite(double lambda, std::span<const std::int64_t> ks);
  static DirectionalSequence horizontal_row(int direction, std::int64_t row,
                                            std::span<const std::int64_t> xs);
};

struct AsymptoticFit {
  double exponent = 0.0;
  double constant = 0.0;
  double residual = 0.0;  // rms of log-residuals
  std::size_t n_points = 0;
};

// Least squares of log(value) against log(regressor): |y2| along finite-
// lambda sequences, |y1 - z1| along horizontal ones.
AsymptoticFit fit_asymptotics(const DirectionalSequence& seq, std::span<const double> values,
                              const Vertex& base = Vertex{0, 0});

struct ValueWithError {
  double value = 0.0;
  double error = 0.0;
};

struct MartinParams {
  PhiVariant variant = PhiVariant::excursion;
  QuadratureSpec quad{};
  std::int64_t oracle_horizon = 4096;  // first-hit truncation for off-axis starts
  double oracle_prune = 1e-15;
  // nu-sum evaluation: exact within +-exact_window of the mass centre and of
  // the target column, geometric 3-point bins beyond.
  std::int64_t exact_window = 384;
};

// Green and Martin kernel evaluation with shared caches: first-hit reports
// per start row, spectral Green values per (row, offset).  All entries are
// deterministic, so concurrent builds of the same table agree.
class MartinEvaluator {
 public:
  MartinEvaluator(Kernel k, MartinParams p);

  const MartinParams& params() const { return params_; }
  const Kernel& kernel() const { return kernel_; }

  // Spectral Green from an axis start; cached.
  ValueWithError green_axis(const Vertex& z, const Vertex& y);

  // Green from any start: axis starts go through the Fourier integral,
  // off-axis starts through the first-hit decomposition
  //   G(x, y) = E^x[pre-hit visits to y] + sum_z nu_x(z) G((z,0), y)
  // with truncation, pruning and tail contributions folded into the bound.
  ValueWithError green(const Vertex& x, const Vertex& y);

  ValueWithError martin_kernel(const Vertex& x, const Vertex& y);

  ValueWithError martin_kernel_induced(std::int64_t u, std::int64_t v);

  // Estimated sup over axis starts of G((z,0), y) for targets on row k,
  // the multiplier turning unaccounted hit mass into a Green error.
  double axis_to_row_max(std::int64_t k);

  // E^0[pre-hit visits to y] with its truncation bound, from the cached
  // origin report.
  ValueWithError local_time_origin(const Vertex& y);

  // Pre-axis-return paths never leave a constant-orientation half-plane,
  // where a return consumes no lateral step; counting the purely vertical
  // return paths bounds the killed diagonal Green by sum C(2n,n) 9^-n.
  static constexpr double kKilledDiagonalBound = 1.3416407864998739;  // 3/sqrt(5)

 private:
  struct RowReport {
    RowSpan<double> hit_law;
    SparseDistribution<double> local_time;
    SparseDistribution<double> alive_at_horizon;
    double escaped = 0.0;
    double pruned = 0.0;
  };

  const RowReport& row_report(std::int64_t row);  // row >= 0
  double nu_weighted_green(const RowReport& rep, std::int64_t shift, std::int64_t y1,
                           std::int64_t k, bool mirror, double& error);

  Kernel kernel_;
  MartinParams params_;
  std::map<std::int64_t, RowReport> reports_;           // start row (>= 0; 0 = origin)
  std::map<std::pair<std::int64_t, std::int64_t>, ValueWithError> green_cache_;  // (k, delta)
  std::map<std::int64_t, double> row_max_cache_;        // k -> axis_to_row_max
};

// One-shot wrappers matching the evaluator methods.
ValueWithError green_general(const Kernel& k, const Vertex& x, const Vertex& y,
                             const MartinParams& p);
ValueWithError martin_kernel(const Kernel& k, const Vertex& x, const Vertex& y,
                             const MartinParams& p);

struct LocalTimeDecayRow {
  Vertex y{};
  double value = 0.0;
  double bound = 0.0;     // truncation contribution
  double scaled = 0.0;    // value * sqrt|y1| or value * |y2|
  bool conclusive = true; // bound small enough to certify the decay step
};

// Pre-hit expected local times from the origin along a sequence, with the
// scaling the decay claim is stated in.
std::vector<LocalTimeDecayRow> local_time_decay(MartinEvaluator& ev,
                                                const DirectionalSequence& seq);

}  // namespace orlat
