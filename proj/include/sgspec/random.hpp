#pragma once

#include <cstdint>
#include <random>

namespace sgspec {

// Seeded generator with platform-independent derived draws (the standard distributions are
// implementation-defined, so uniform doubles are built from raw bits).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix(seed)) {}

  // Independent stream for (seed, stream), e.g. one per trial.
  static Rng derive(std::uint64_t seed, std::uint64_t stream) { return Rng(mix(seed) ^ mix(stream + 0x9e3779b97f4a7c15ULL)); }

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t index(std::uint64_t n) { return n == 0 ? 0 : next() % n; }
  bool bernoulli(double prob) { return uniform() < prob; }
  int sign() { return (next() >> 63) ? 1 : -1; }

  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace sgspec
