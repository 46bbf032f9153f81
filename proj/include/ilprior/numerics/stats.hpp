#pragma once

#include <cstddef>
#include <span>

#include "ilprior/numerics/density.hpp"

namespace ilprior {

struct MannWhitneyResult {
  double u = 0.0;        ///< rank-sum statistic for the first sample
  double p_value = 1.0;  ///< two-sided
};

/// Samples with n1 + n2 at or below this size use the exact conditional
/// permutation distribution; larger ones use the normal approximation.
inline constexpr std::size_t kMannWhitneyExactMaxTotal = 24;

/// Two-sided Mann-Whitney U test.
///
/// Small samples: exact p-value from the permutation distribution of the
/// rank sum given the observed tie pattern. Large samples: normal
/// approximation with tie-corrected variance and continuity correction.
/// Symmetric in its arguments: p(a, b) == p(b, a) exactly.
/// Throws InvalidArgument if either sample is empty.
MannWhitneyResult mann_whitney_u(std::span<const double> a, std::span<const double> b);

/// Throws InvalidArgument on length mismatch, fewer than 2 points, or a
/// constant input.
double pearson_r(std::span<const double> x, std::span<const double> y);

/// Root-mean-squared elementwise difference. Throws InvalidArgument on
/// length mismatch or empty input.
double rmsd(std::span<const double> x, std::span<const double> y);

double mean(std::span<const double> x);

/// Middle order statistic (average of the two middle values for even n).
double median(std::span<const double> x);

/// Kolmogorov-Smirnov distance between the empirical distribution of
/// bin indices and a reference mass vector on the same bins.
double ks_distance_binned(std::span<const std::size_t> indices,
                          std::span<const double> reference_masses);

/// KS distance between samples and a binned density, after assigning each
/// sample to its bin.
double ks_distance(std::span<const double> samples, const Density1D& reference);

}  // namespace ilprior
