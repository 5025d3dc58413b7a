#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace lexcourt {

// Seeded generator whose outputs are identical across standard libraries.
// std::uniform_int_distribution and std::shuffle are implementation-defined,
// so bounded draws go through Lemire's method on raw mt19937_64 output.
class DeterministicRng {
 public:
  explicit DeterministicRng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound);

  // Uniform in [lo, hi], inclusive.
  std::int64_t between(std::int64_t lo, std::int64_t hi);

  // k distinct indices out of [0, n), in draw order (partial Fisher-Yates).
  std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k);

 private:
  std::mt19937_64 engine_;
};

}  // namespace lexcourt
