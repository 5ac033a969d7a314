#include "orlat/exact_oracle.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace orlat {

namespace {

struct RowTables {
  std::vector<double> prob;  // 1/out-degree per row, index r + R
  std::vector<int> eps;      // horizontal direction per row
  std::int64_t R = 0;

  RowTables(const Kernel& k, std::int64_t radius) : R(radius) {
    prob.resize(static_cast<std::size_t>(2 * R + 1));
    eps.resize(static_cast<std::size_t>(2 * R + 1));
    for (std::int64_t r = -R; r <= R; ++r) {
      const int e = k.horizontal_dir(r);
      eps[static_cast<std::size_t>(r + R)] = e;
      prob[static_cast<std::size_t>(r + R)] = e == 0 ? 0.5 : (1.0 / 3.0);
    }
  }
  std::size_t idx(std::int64_t r) const { return static_cast<std::size_t>(r + R); }
};

}  // namespace

std::vector<CharEnclosure> axis_char_enclosure(const Kernel& k, const Vertex& start,
                                               std::span<const double> ts,
                                               std::int64_t horizon) {
  if (horizon < 1) throw std::invalid_argument("axis_char_enclosure: horizon must be >= 1");
  const std::int64_t R = horizon + std::llabs(start.x2) + 1;
  const RowTables tab(k, R);

  // Killed-walk amplitude recursion at one frequency.  At t=0 this is the
  // plain mass recursion, so the escaped mass falls out of the same code.
  const auto run = [&](double t) -> std::complex<double> {
    std::vector<std::complex<double>> cur(tab.prob.size()), nxt(tab.prob.size());
    cur[tab.idx(start.x2)] = 1.0;
    const std::complex<double> lat_pos = std::polar(1.0, t);
    const std::complex<double> lat_neg = std::polar(1.0, -t);
    std::complex<double> absorbed = 0.0;
    for (std::int64_t n = 1; n <= horizon; ++n) {
      const std::int64_t span = std::llabs(start.x2) + n;
      absorbed += tab.prob[tab.idx(1)] * cur[tab.idx(1)] +
                  tab.prob[tab.idx(-1)] * cur[tab.idx(-1)];
      if (tab.eps[tab.idx(0)] != 0)
        absorbed += tab.prob[tab.idx(0)] *
                    (tab.eps[tab.idx(0)] > 0 ? lat_pos : lat_neg) * cur[tab.idx(0)];
      for (std::int64_t r = -span; r <= span; ++r) {
        if (r == 0) continue;
        const std::size_t i = tab.idx(r);
        std::complex<double> v = tab.prob[i - 1] * cur[i - 1] + tab.prob[i + 1] * cur[i + 1];
        const int e = tab.eps[i];
        if (e != 0) v += tab.prob[i] * (e > 0 ? lat_pos : lat_neg) * cur[i];
        nxt[i] = v;
      }
      nxt[tab.idx(0)] = 0.0;
      // clear one cell beyond the active span on both sides before swap
      nxt[tab.idx(-span - 1 >= -R ? -span - 1 : -R)] = 0.0;
      nxt[tab.idx(span + 1 <= R ? span + 1 : R)] = 0.0;
      std::swap(cur, nxt);
    }
    return absorbed;
  };

  const double escaped = 1.0 - run(0.0).real();

  std::vector<CharEnclosure> out(ts.size());
#pragma omp parallel for schedule(dynamic) num_threads(max_threads())
  for (std::size_t j = 0; j < ts.size(); ++j) {
    const std::complex<double> a = run(ts[j]);
    out[j] = CharEnclosure{ts[j], a.real(), escaped};
  }
  return out;
}

}  // namespace orlat
