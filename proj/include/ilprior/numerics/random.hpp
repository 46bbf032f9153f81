#pragma once

#include <cstdint>
#include <random>

namespace ilprior {

/// Seeded random source with platform-independent draws.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. All distributions are implemented here rather than through
/// <random> distribution objects, whose algorithms vary between standard
/// libraries. A stream must not be shared between threads; fork one per
/// consumer instead.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  std::uint64_t seed() const noexcept { return seed_; }

  /// Child stream whose seed depends only on this stream's seed and `id`.
  /// Does not advance this stream.
  RandomStream fork(std::uint64_t id) const;

  /// Seed that fork(id) would use.
  static std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t id) noexcept;

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01();

  /// Uniform integer in [0, bound) without modulo bias. bound must be > 0.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Uniform integer in [lo, hi]. Throws InvalidArgument when lo > hi.
std::int64_t sample_uniform_int(RandomStream& rng, std::int64_t lo, std::int64_t hi);

/// Uniform real in [lo, hi]. Throws InvalidArgument when lo > hi.
double sample_uniform_real(RandomStream& rng, double lo, double hi);

/// Binomial(n, p) by CDF inversion. Throws InvalidArgument for n < 0 or p outside [0, 1].
int sample_binomial(RandomStream& rng, int n, double p);

}  // namespace ilprior
