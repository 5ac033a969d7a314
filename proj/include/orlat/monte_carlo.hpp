#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "orlat/kernel.hpp"
#include "orlat/rng.hpp"
#include "orlat/spectral.hpp"

namespace orlat {

struct Trajectory {
  Vertex start{};
  std::vector<Vertex> steps;  // positions after steps 1..n
  std::vector<std::pair<std::int64_t, std::int64_t>> axis_hits;  // (time, abscissa), time >= 1
};

Trajectory simulate(const Kernel& k, const Vertex& x, std::int64_t n_steps, CounterRng& rng);

// One induced-chain step sampled by running the walk from (0,0) to the
// first axis return.  tau_1 is almost surely finite but heavy-tailed, so a
// hard cap guards the loop; capped draws are flagged, never hidden.
struct InducedSample {
  std::int64_t displacement = 0;
  std::int64_t hit_time = 0;
  bool capped = false;
};

InducedSample sample_induced_direct(const Kernel& k, CounterRng& rng,
                                    std::int64_t step_cap = 100'000'000);

// Same law assembled from the vertical excursion plus per-visit geometric
// horizontal run lengths.  The geometric convention is tied to the
// arbitrated characteristic-function variant.  Requires a row-0 orientation
// of 0 (otherwise the representation does not apply).
struct GeomExcursion {
  std::vector<std::int64_t> heights;                  // vertical path 0 ... 0
  std::map<std::int64_t, std::int64_t> local_times;   // level -> visits before return
  std::vector<std::int64_t> geom_draws;               // per vertical step (0 at the first)
  std::int64_t x_displacement = 0;
  std::int64_t total_time = 0;                        // vertical steps + lateral steps
  bool capped = false;
};

GeomExcursion sample_induced_geometric(const Kernel& k, PhiVariant convention, CounterRng& rng,
                                       std::int64_t step_cap = 100'000'000);

struct Estimate {
  double value = 0.0;
  double stderr_ = 0.0;
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;
};

// Mean number of visits to y within `horizon` steps from x: unbiased for the
// truncated Green value.  Chunked over fixed-size counter-based substreams;
// the estimate is a function of (seed, n_paths) only, independent of the
// thread layout.
Estimate estimate_green(const Kernel& k, const Vertex& x, const Vertex& y,
                        std::int64_t n_paths, std::int64_t horizon, std::uint64_t seed);

struct EmpiricalLaw {
  std::map<std::int64_t, std::uint64_t> counts;  // landing abscissa -> draws
  std::int64_t n_samples = 0;
  std::int64_t capped = 0;  // censored draws, reported as deficit mass
  std::uint64_t seed = 0;
};

// Empirical law of the first-hit abscissa from any start (off-axis included).
EmpiricalLaw estimate_nu(const Kernel& k, const Vertex& x, std::int64_t n_paths,
                         std::uint64_t seed, std::int64_t step_cap = 1'000'000);

// Empirical law of the induced-chain displacement from the geometric
// representation, capped compatibly with estimate_nu at (0,0).
EmpiricalLaw estimate_nu_geometric(const Kernel& k, PhiVariant convention, std::int64_t n_paths,
                                   std::uint64_t seed, std::int64_t step_cap = 1'000'000);

struct ChiSquare {
  double statistic = 0.0;
  std::int64_t dof = 0;
  double p_value = 0.0;
};

// Two-sample chi-square on binned displacements: |z| <= tail_from pointwise,
// two tail bins beyond.  Bins with too few expected counts are pooled.
ChiSquare chi_square_two_sample(const EmpiricalLaw& a, const EmpiricalLaw& b,
                                std::int64_t tail_from = 30, double min_expected = 5.0);

}  // namespace orlat
