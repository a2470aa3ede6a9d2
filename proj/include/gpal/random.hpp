#pragma once

#include <cstdint>
#include <random>

namespace gpal {

// Distribution helpers that depend only on raw engine output, so seeded runs
// are reproducible across standard library implementations.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) { return n == 0 ? 0 : rng() % n; }

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

inline bool coin(std::mt19937_64& rng) { return (rng() >> 63) != 0; }

inline std::uint64_t random_bits(std::mt19937_64& rng, int n) {
  const std::uint64_t mask = n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
  return rng() & mask;
}

}  // namespace gpal
