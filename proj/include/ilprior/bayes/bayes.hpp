#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "ilprior/likelihoods/likelihoods.hpp"
#include "ilprior/numerics/density.hpp"

namespace ilprior {

struct UniformPrior {};

/// Sparse-and-strong prior: favors one strong and one weak cause.
struct SparseStrongPrior {
  double alpha = 5.0;
  CausalDirection direction = CausalDirection::Generative;
};

struct EmpiricalPrior {
  DensityGrid2D grid;
};

using PriorSpec = std::variant<UniformPrior, SparseStrongPrior, EmpiricalPrior>;

/// Prior mass on the (w0, w1) grid. Sparse-strong weights:
///   generative  exp(-a(w0 + 1 - w1)) + exp(-a(1 - w0 + w1))
///   preventive  exp(-a(2 - w0 - w1)) + exp(-a(1 - w0 + w1))
/// An empirical prior must already have the requested resolution.
/// Throws InvalidArgument for a negative or non-finite alpha.
DensityGrid2D prior_grid(const PriorSpec& spec, std::size_t resolution = kCausalGridPoints);

/// prior x likelihood, max-shifted and normalized. Throws DegeneratePosterior
/// if the data have zero probability everywhere the prior has mass.
DensityGrid2D posterior_grid(const DensityGrid2D& prior, const CausalObservation& d, CausalDirection dir);

/// Mass-weighted coordinate means.
CausalHypothesis posterior_mean(const DensityGrid2D& grid);

struct JudgmentItem {
  CausalDirection direction = CausalDirection::Generative;
  CausalObservation observation;
  std::optional<CausalHypothesis> model_prediction;
  std::optional<CausalHypothesis> agent_judgment;
};

/// Group sizes 8, 16 and 32 for both groups; effect counts 0..n in steps of
/// n / 8, giving 729 items per direction. Ordered by n_c_plus, n_c_minus,
/// k_plus, k_minus.
std::vector<JudgmentItem> generate_judgment_items(CausalDirection dir);

/// Generative items followed by preventive items (1458 in total).
std::vector<JudgmentItem> generate_judgment_items();

/// Fills model_prediction with the posterior mean under `prior` for each
/// item (items of either direction use their own likelihood).
void predict(const DensityGrid2D& prior, std::vector<JudgmentItem>& items);

struct FitMetrics {
  double pearson = 0.0;
  double rmsd = 0.0;
  std::size_t n = 0;  // number of flattened values
};

FitMetrics fit_metrics(std::span<const double> predictions, std::span<const double> judgments);

/// Flattens (w0, w1) of items having both a prediction and a judgment.
/// Throws InvalidArgument if fewer than two such items exist.
FitMetrics fit_metrics(const std::vector<JudgmentItem>& items);

struct BinnedPoint {
  double x_lo = 0.0;
  double x_hi = 0.0;
  std::size_t count = 0;
  double x_mean = 0.0;  // NaN for an empty window
  double y_mean = 0.0;
  double y_se = 0.0;    // standard error of y_mean; 0 for a single point
};

/// Splits the x range into `bins` equal windows and summarizes y in each.
/// Always returns exactly `bins` entries.
std::vector<BinnedPoint> window_bin(std::span<const double> x, std::span<const double> y, std::size_t bins = 13);

}  // namespace ilprior
