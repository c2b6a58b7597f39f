#pragma once

#include <cstdint>
#include <random>

namespace cscs::detail {

// Deterministic across standard libraries, unlike the std distributions.
inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1p-53;
  return lo + (hi - lo) * u;
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() %
                               static_cast<std::uint64_t>(hi - lo + 1));
}

}  // namespace cscs::detail
