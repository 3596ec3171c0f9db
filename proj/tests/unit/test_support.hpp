#pragma once

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

namespace test {

/// |a - b| <= rel * max(|a|, |b|), or both exactly equal.
inline bool close_rel(double a, double b, double rel) {
  if (a == b)
    return true;
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

/// Fixed-seed generator so that property tests are reproducible.
inline std::mt19937_64 rng(std::uint64_t salt = 0) { return std::mt19937_64(0x5EEDull + salt); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline double log_uniform(std::mt19937_64& g, double lo, double hi) {
  return std::exp(uniform(g, std::log(lo), std::log(hi)));
}

} // namespace test
