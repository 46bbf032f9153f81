#include "ilprior/numerics/random.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ilprior/errors.hpp"

namespace ilprior {

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

std::uint64_t RandomStream::derive_seed(std::uint64_t parent, std::uint64_t id) noexcept {
  return splitmix64(splitmix64(parent) ^ splitmix64(id + 0x632be59bd9b4e019ULL));
}

RandomStream RandomStream::fork(std::uint64_t id) const {
  return RandomStream(derive_seed(seed_, id));
}

double RandomStream::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t RandomStream::below(std::uint64_t bound) {
  // Rejection on the top of the range keeps every residue equally likely.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return x % bound;
}

std::int64_t sample_uniform_int(RandomStream& rng, std::int64_t lo, std::int64_t hi) {
  if (lo > hi) {
    throw InvalidArgument("sample_uniform_int: invalid range [" + std::to_string(lo) +
                          ", " + std::to_string(hi) + "]");
  }
  const auto span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(rng.next_u64());  // full 64-bit range
  return lo + static_cast<std::int64_t>(rng.below(span));
}

double sample_uniform_real(RandomStream& rng, double lo, double hi) {
  if (!(lo <= hi)) throw InvalidArgument("sample_uniform_real: invalid range");
  return lo + (hi - lo) * rng.uniform01();
}

int sample_binomial(RandomStream& rng, int n, double p) {
  if (n < 0) throw InvalidArgument("sample_binomial: negative trial count");
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("sample_binomial: invalid probability");
  if (p == 0.0 || n == 0) return 0;
  if (p == 1.0) return n;
  if (p > 0.5) return n - sample_binomial(rng, n, 1.0 - p);

  const double u = rng.uniform01();
  const double odds = p / (1.0 - p);
  double pmf = std::pow(1.0 - p, n);
  double cdf = pmf;
  int k = 0;
  while (u >= cdf && k < n) {
    pmf *= odds * static_cast<double>(n - k) / static_cast<double>(k + 1);
    ++k;
    cdf += pmf;
  }
  return k;
}

}  // namespace ilprior
