#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace sle {

// Counter-based random numbers: every (seed, path, step, slot) tuple maps to
// an independent uniform via splitmix64 finalization. This makes ensembles
// reproducible regardless of thread scheduling.
namespace rng {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t key(std::uint64_t seed, std::uint64_t path,
                         std::uint64_t step, std::uint64_t slot = 0) {
  std::uint64_t h = splitmix64(seed ^ 0x243f6a8885a308d3ULL);
  h = splitmix64(h ^ path);
  h = splitmix64(h ^ step);
  h = splitmix64(h ^ slot);
  return h;
}

// Uniform in (0, 1); never exactly 0 or 1.
inline double uniform(std::uint64_t k) {
  return (static_cast<double>(k >> 11) + 0.5) * 0x1.0p-53;
}

// Standard normal via Box-Muller from two decorrelated counters.
inline double normal(std::uint64_t seed, std::uint64_t path,
                     std::uint64_t step) {
  const double u1 = uniform(key(seed, path, step, 0));
  const double u2 = uniform(key(seed, path, step, 1));
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace rng
}  // namespace sle
