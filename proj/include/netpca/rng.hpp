#pragma once

#include <cstdint>
#include <random>

namespace netpca {

// 64-bit mixing finalizer (splitmix64 step). Used to spread seeds so that
// per-graph / per-replicate sub-streams are independent of each other.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Sub-stream seed for item `index` under a master seed. Growing a sample or
// adding replicates never perturbs the stream of an existing index.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(master ^ mix64(index + 0x6a09e667f3bcc909ULL));
}

// Deterministic uniform source. std::mt19937_64 has a portable output
// sequence; the conversions below avoid std::uniform_*_distribution, whose
// algorithms are implementation-defined, so results match across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // uniform in [0,1) with 53-bit resolution
  double next_double() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool next_bernoulli(double p) { return next_double() < p; }

  // uniform on {0,...,n-1}, unbiased via masked rejection
  std::uint64_t next_below(std::uint64_t n) {
    std::uint64_t mask = n - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    std::uint64_t r;
    do {
      r = engine_() & mask;
    } while (r >= n);
    return r;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace netpca
