#pragma once

#include <cstdint>

namespace lltlab {

/// Counter-based generator: output i of stream s is mix(key(s) + i * golden).
/// Streams for (master, path) pairs are independent and reproducible.
class CounterRng {
 public:
  CounterRng(std::uint64_t master, std::uint64_t stream);

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  bool bernoulli(double p) { return uniform() < p; }
  std::uint64_t counter() const { return counter_; }

  static std::uint64_t mix(std::uint64_t z);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace lltlab
