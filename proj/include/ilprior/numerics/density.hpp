#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ilprior {

/// Default bin count for scalar hypothesis spaces.
inline constexpr std::size_t kDefaultBins = 100;

/// Points per axis of the causal-strength grid (0.00, 0.01, ..., 1.00).
inline constexpr std::size_t kCausalGridPoints = 101;

/// Probability mass on uniform bins over [lo, hi]. Masses are normalized on
/// construction and immutable afterwards.
class Density1D {
 public:
  /// Throws InvalidArgument if lo >= hi, fewer than 2 bins, a negative or
  /// non-finite weight, or zero total weight.
  Density1D(double lo, double hi, std::vector<double> weights);

  static Density1D uniform(double lo, double hi, std::size_t bins = kDefaultBins);

  /// Beta(a, b) rescaled onto [lo, hi], discretized by CDF differences per bin.
  static Density1D beta(double a, double b, double lo, double hi,
                        std::size_t bins = kDefaultBins);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  std::size_t bins() const noexcept { return masses_.size(); }
  double width() const noexcept { return (hi_ - lo_) / static_cast<double>(masses_.size()); }
  double center(std::size_t i) const noexcept;
  double edge(std::size_t i) const noexcept;
  double mass(std::size_t i) const { return masses_.at(i); }
  std::span<const double> masses() const noexcept { return masses_; }

  /// Index of the bin containing x; values outside [lo, hi] clamp to the end bins.
  std::size_t bin_of(double x) const noexcept;

  /// Cumulative mass up to and including bin i.
  double cdf(std::size_t i) const;
  double mean() const noexcept;

 private:
  double lo_;
  double hi_;
  std::vector<double> masses_;
};

/// Probability mass on a square grid of points over (w0, w1) in [0, 1]^2.
/// Row-major with w0 as the row index.
class DensityGrid2D {
 public:
  /// weights.size() must equal resolution^2. Normalizes; throws
  /// InvalidArgument on negative/non-finite weights or zero total.
  DensityGrid2D(std::size_t resolution, std::vector<double> weights);
  explicit DensityGrid2D(std::vector<double> weights)
      : DensityGrid2D(kCausalGridPoints, std::move(weights)) {}

  static DensityGrid2D uniform(std::size_t resolution = kCausalGridPoints);

  std::size_t resolution() const noexcept { return resolution_; }
  std::size_t size() const noexcept { return masses_.size(); }
  double axis_value(std::size_t i) const noexcept {
    return static_cast<double>(i) / static_cast<double>(resolution_ - 1);
  }
  double mass(std::size_t i0, std::size_t i1) const {
    return masses_.at(i0 * resolution_ + i1);
  }
  std::span<const double> masses() const noexcept { return masses_; }

  /// Nearest grid index for a coordinate in [0, 1].
  std::size_t index_of(double w) const noexcept;

  std::vector<double> marginal_w0() const;
  std::vector<double> marginal_w1() const;

 private:
  std::size_t resolution_;
  std::vector<double> masses_;
};

}  // namespace ilprior
