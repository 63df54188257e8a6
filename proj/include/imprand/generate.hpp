#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>

#include "imprand/common.hpp"
#include "imprand/forecast.hpp"
#include "imprand/situation.hpp"

namespace imprand {

/// Name recorded in metadata for the generator behind every seeded draw.
inline constexpr const char* kGeneratorName = "mt19937_64";

/// Deterministic 64-bit source. The engine is fully specified by the C++
/// standard, so outputs match across platforms.
class SeededSampler {
 public:
  explicit SeededSampler(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform on [lo, hi].
  long between(long lo, long hi);
  /// True with probability p, comparing one 64-bit draw u against p via
  /// u * den < num * 2^64.
  bool bernoulli(const Rational& p);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Samples n outcomes from a precise forecasting system. An imprecise
/// forecast on the realized path is a semantics error.
PathPrefix sample_path(const ForecastSystem& forecast, std::size_t n, std::uint64_t seed);

enum class CanonicalPath { alternating, all_zero, all_one };
CanonicalPath canonical_path_from_string(const std::string& name);

/// alternating is 0101..., zero at the odd positions counted from 1.
PathPrefix canonical_path(CanonicalPath kind, std::size_t n);

}  // namespace imprand
