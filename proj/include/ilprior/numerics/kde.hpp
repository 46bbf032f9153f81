#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>

#include "ilprior/numerics/density.hpp"

namespace ilprior {

/// Silverman's rule of thumb, 1.06 * sd * n^(-1/5), floored at min_width.
double silverman_bandwidth(std::span<const double> samples, double min_width);

/// Gaussian KDE integrated over each bin of [lo, hi]. Kernel mass falling
/// outside the support is dropped and the result renormalized.
/// bandwidth: explicit (> 0) or nullopt for Silverman clamped to one bin.
Density1D kde_gaussian(std::span<const double> samples, double lo, double hi,
                       std::size_t bins = kDefaultBins,
                       std::optional<double> bandwidth = std::nullopt);

/// Product-kernel Gaussian KDE on the (w0, w1) grid. Each grid point owns
/// the cell of half a spacing around it, clipped to [0, 1].
DensityGrid2D kde_gaussian_2d(std::span<const std::pair<double, double>> samples,
                              std::size_t resolution = kCausalGridPoints,
                              std::optional<double> bandwidth_w0 = std::nullopt,
                              std::optional<double> bandwidth_w1 = std::nullopt);

}  // namespace ilprior
