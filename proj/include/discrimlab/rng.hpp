#pragma once

#include <cstdint>

namespace discrimlab {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based stream: the i-th draw is a pure function of (key, i), so
/// any partition of the work across threads sees the same numbers.
class CounterRng {
 public:
  constexpr CounterRng(std::uint64_t seed, std::uint64_t stream) : key_(mix64(seed ^ mix64(stream))) {}

  constexpr std::uint64_t at(std::uint64_t i) const { return mix64(key_ + 0x9e3779b97f4a7c15ULL * i); }
  /// Uniform in [0, 1) with 53 random bits.
  constexpr double uniform_at(std::uint64_t i) const { return static_cast<double>(at(i) >> 11) * 0x1.0p-53; }

  std::uint64_t next() { return at(counter_++); }
  double uniform() { return uniform_at(counter_++); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace discrimlab
