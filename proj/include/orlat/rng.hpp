#pragma once

#include <array>
#include <cstdint>

namespace orlat {

// Counter-based stream (Philox4x32-10): draws are a pure function of
// (seed, stream, counter), so chunked parallel runs produce exactly the
// sequence a sequential run over the same chunks would.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed), stream_(stream) {}

  std::uint64_t next_u64() {
    if (pos_ >= 4) refill();
    const std::uint64_t lo = buf_[pos_];
    const std::uint64_t hi = buf_[pos_ + 1];
    pos_ += 2;
    return (hi << 32) | lo;
  }

  // Uniform double in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in {0, ..., n-1}, unbiased via rejection.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      const std::uint64_t x = next_u64();
      if (x >= threshold) return x % n;
    }
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  static std::uint32_t mulhi(std::uint32_t a, std::uint32_t b, std::uint32_t* lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    *lo = static_cast<std::uint32_t>(p);
    return static_cast<std::uint32_t>(p >> 32);
  }

  void refill() {
    std::uint32_t c0 = static_cast<std::uint32_t>(counter_);
    std::uint32_t c1 = static_cast<std::uint32_t>(counter_ >> 32);
    std::uint32_t c2 = static_cast<std::uint32_t>(stream_);
    std::uint32_t c3 = static_cast<std::uint32_t>(stream_ >> 32);
    std::uint32_t k0 = static_cast<std::uint32_t>(seed_);
    std::uint32_t k1 = static_cast<std::uint32_t>(seed_ >> 32);
    for (int round = 0; round < 10; ++round) {
      std::uint32_t lo0, lo1;
      const std::uint32_t hi0 = mulhi(0xD2511F53u, c0, &lo0);
      const std::uint32_t hi1 = mulhi(0xCD9E8D57u, c2, &lo1);
      const std::uint32_t n0 = hi1 ^ c1 ^ k0;
      const std::uint32_t n1 = lo1;
      const std::uint32_t n2 = hi0 ^ c3 ^ k1;
      const std::uint32_t n3 = lo0;
      c0 = n0;
      c1 = n1;
      c2 = n2;
      c3 = n3;
      k0 += 0x9E3779B9u;
      k1 += 0xBB67AE85u;
    }
    buf_ = {c0, c1, c2, c3};
    ++counter_;
    pos_ = 0;
  }

  std::uint64_t seed_ = 0;
  std::uint64_t stream_ = 0;
  std::uint64_t counter_ = 0;
  std::array<std::uint32_t, 4> buf_{};
  int pos_ = 4;
};

}  // namespace orlat
