#pragma once

#include <cstdint>
#include <random>

namespace stoq {

// Counter-style seeded stream: identical (master_seed, stream_id) pairs
// reproduce identical draws bit-for-bit on every platform.  mt19937_64 is
// fully specified by the standard; the real-valued mappings below avoid
// std::uniform_real_distribution, whose output is implementation-defined.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
      : master_seed_(master_seed), stream_id_(stream_id) {
    std::uint64_t s = splitmix(master_seed ^ splitmix(stream_id * 0x9E3779B97F4A7C15ULL));
    engine_.seed(s);
  }

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64() { return engine_(); }

  // uniform in [0, 1) with 53 random bits
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // uniform in [-1, 1)
  double uniform_sym() { return 2.0 * uniform01() - 1.0; }

  // uniform in [lo, hi)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // +1 or -1 with equal probability
  double pm1() { return (next_u64() & 1u) ? 1.0 : -1.0; }

  // unbiased integer in [0, n) by rejection
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % n);
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % n;
  }

  static std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

}  // namespace stoq
