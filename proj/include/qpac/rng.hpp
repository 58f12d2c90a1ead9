#pragma once

#include <cstdint>
#include <random>

namespace qpac {

// SplitMix64 finalizer; used to derive independent stream seeds.
std::uint64_t mix64(std::uint64_t x);

// Seed for stream (a, b) below a base seed. Distinct tuples give unrelated seeds.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0);

// mt19937_64 with hand-written distributions. The standard distribution
// classes are implementation-defined, so they are avoided to keep sampled
// sequences identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double uniform01();
  // Uniform integer in [0, bound), unbiased (rejection sampling). bound > 0.
  std::uint64_t uniform_index(std::uint64_t bound);
  // Standard normal via the Box-Muller transform.
  double normal();
  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace qpac
