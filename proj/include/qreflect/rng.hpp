#pragma once

#include <cstdint>
#include <string>

#include "qreflect/scalar.hpp"

namespace qreflect {

/// Deterministic 64-bit stream (splitmix64).
struct SplitMix64 {
  uint64_t state = 0;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    state += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform value in [0, n).
  uint64_t below(uint64_t n) { return next() % n; }
};

inline uint64_t fnv1a(const std::string& s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Mix a global seed with a job identity into a per-job stream seed.
inline uint64_t job_seed(uint64_t global, const std::string& name) {
  SplitMix64 s(global ^ fnv1a(name));
  return s.next();
}

/// Deformation parameter draw: +-p/r with 2 <= p, r <= 7 and p != r, so the
/// value is never 0, +-1, or singular for the q-number denominators.
inline Scalar draw_q(SplitMix64& rng, Mode mode) {
  const long p = 2 + static_cast<long>(rng.below(6));
  long r = 2 + static_cast<long>(rng.below(6));
  while (r == p) r = 2 + static_cast<long>(rng.below(6));
  const long sign = rng.below(2) == 0 ? 1 : -1;
  const Scalar q = Scalar::exact(sign * p, r);
  return mode == Mode::exact ? q : q.to_float();
}

/// Nonzero rational with |num|, |den| <= 5.
inline Scalar draw_nonzero_rational(SplitMix64& rng, Mode mode) {
  const long num = 1 + static_cast<long>(rng.below(5));
  const long den = 1 + static_cast<long>(rng.below(5));
  const long sign = rng.below(2) == 0 ? 1 : -1;
  const Scalar v = Scalar::exact(sign * num, den);
  return mode == Mode::exact ? v : v.to_float();
}

}  // namespace qreflect
