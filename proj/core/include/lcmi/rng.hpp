#pragma once

#include <cstdint>

namespace lcmi {

// SplitMix64 output function. Together with the Weyl increment below this
// forms a counter-based stream: output i depends only on (seed, i), so runs
// are reproducible bit-for-bit regardless of platform or thread schedule.
constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next() {
    counter_ += 0x9e3779b97f4a7c15ull;
    return splitmix64(seed_ + counter_);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1p-53; }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

// Per-task seed, stable in (master_seed, task_index). Recorded in reports so
// any single task can be replayed in isolation.
constexpr std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t task_index) {
  return splitmix64(splitmix64(master_seed ^ 0x6a09e667f3bcc909ull) +
                    (task_index + 1) * 0x9e3779b97f4a7c15ull);
}

}  // namespace lcmi
