#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace mwl {

/// splitmix64 finalizer; used for all seed derivation.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Substream seed for a numbered stream (trial index, batch index, ...).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept;

/// Substream seed for a labeled stream ("pool", "measures", ...).
std::uint64_t derive_seed(std::uint64_t master, std::string_view label) noexcept;

/// Deterministic generator with fully specified output mappings.
///
/// The engine is std::mt19937_64 (bit-exact across implementations by the
/// standard). uniform() maps the top 53 bits to [0,1); normal() is a plain
/// Box-Muller transform consuming exactly two uniforms per call. Identical
/// seeds therefore reproduce identical streams everywhere, which is what the
/// seeded-substream concurrency contract relies on.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform double in [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller (two uniforms per call, no caching).
  double normal();

  std::uint64_t next_u64() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

/// Effective thread count: caps `requested` by the MWL_THREADS environment
/// variable (0 or unset = hardware concurrency). Always >= 1.
int thread_budget(int requested = 0);

}  // namespace mwl
