// Seeded random numbers with a reproducibility contract: the same seed and
// call sequence produce the same draws on every platform. Raw generator words
// are mapped to doubles in-house so results do not depend on the standard
// library's distribution implementations.
#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace biphoton {

// splitmix64 step; derives independent child seeds from one master seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform double in [0, 1) with 53 random bits.
  double uniform();

  // Standard normal via Box-Muller.
  double gaussian();

  // Index drawn proportionally to the (non-negative) weights.
  std::size_t pick(std::span<const double> weights);

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace biphoton
