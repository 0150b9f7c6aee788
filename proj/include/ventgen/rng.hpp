#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace ventgen {

// splitmix64 finalizer. Seed fan-out for solutions, restart attempts and sweep
// cases goes through derive_seed so that any subset of a run reproduces the
// exact values of the full run.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Counter-based split: (master, stream, counter) -> independent sub-seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                 std::uint64_t counter = 0) {
  return splitmix64(master ^ splitmix64(stream ^ splitmix64(counter)));
}

// Thin deterministic wrapper around mt19937_64. Doubles are produced from the
// raw 64-bit stream directly (not via std::uniform_real_distribution, whose
// output is implementation-defined), so sequences are identical across
// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Index drawn proportionally to weights; entries <= 0 are never picked.
  // Requires at least one positive weight.
  std::size_t weighted_index(std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) {
      if (w > 0.0) total += w;
    }
    double r = uniform() * total;
    std::size_t last_positive = 0;
    bool seen = false;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (weights[i] <= 0.0) continue;
      last_positive = i;
      seen = true;
      r -= weights[i];
      if (r <= 0.0) return i;
    }
    (void)seen;
    return last_positive;  // float round-off fell off the end
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ventgen
