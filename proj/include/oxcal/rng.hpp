#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace oxcal {

// splitmix64 finalizer; used to derive independent sub-seeds from a user seed
// so nested operations (per-sweep, per-point, per-trial) get decorrelated
// streams while staying reproducible.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double normal(double sigma) {
    if (sigma <= 0.0) return 0.0;
    return std::normal_distribution<double>(0.0, sigma)(eng_);
  }

  // Gaussian truncated to |x| <= bound by rejection.
  double normal_truncated(double sigma, double bound) {
    if (sigma <= 0.0) return 0.0;
    std::normal_distribution<double> dist(0.0, sigma);
    double x = dist(eng_);
    while (std::abs(x) > bound) x = dist(eng_);
    return x;
  }

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(eng_);
  }

  std::uint64_t next_u64() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace oxcal
