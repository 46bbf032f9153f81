#include "ilprior/bayes/bayes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ilprior/errors.hpp"
#include "ilprior/numerics/stats.hpp"

namespace ilprior {

DensityGrid2D prior_grid(const PriorSpec& spec, std::size_t resolution) {
  if (const auto* e = std::get_if<EmpiricalPrior>(&spec)) {
    if (e->grid.resolution() != resolution) throw InvalidArgument("empirical prior has a different grid resolution");
    return e->grid;
  }
  if (std::holds_alternative<UniformPrior>(spec)) return DensityGrid2D::uniform(resolution);

  const auto& ss = std::get<SparseStrongPrior>(spec);
  if (!(ss.alpha >= 0.0) || !std::isfinite(ss.alpha)) throw InvalidArgument("sparse-strong alpha must be >= 0");
  DensityGrid2D axis_probe = DensityGrid2D::uniform(resolution);
  std::vector<double> w(resolution * resolution);
  const double a = ss.alpha;
  for (std::size_t i = 0; i < resolution; ++i) {
    const double w0 = axis_probe.axis_value(i);
    for (std::size_t j = 0; j < resolution; ++j) {
      const double w1 = axis_probe.axis_value(j);
      const double first = ss.direction == CausalDirection::Generative ? w0 + 1.0 - w1 : 1.0 - w0 + 1.0 - w1;
      w[i * resolution + j] = std::exp(-a * first) + std::exp(-a * (1.0 - w0 + w1));
    }
  }
  return DensityGrid2D(resolution, std::move(w));
}

DensityGrid2D posterior_grid(const DensityGrid2D& prior, const CausalObservation& d, CausalDirection dir) {
  const auto ll = causal_log_likelihood_grid(d, dir, prior.resolution());
  const auto masses = prior.masses();
  double max_ll = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ll.size(); ++i)
    if (masses[i] > 0.0) max_ll = std::max(max_ll, ll[i]);
  if (!std::isfinite(max_ll)) throw DegeneratePosterior("observation has zero probability under the prior");
  std::vector<double> w(ll.size());
  for (std::size_t i = 0; i < ll.size(); ++i) w[i] = masses[i] > 0.0 ? masses[i] * std::exp(ll[i] - max_ll) : 0.0;
  return DensityGrid2D(prior.resolution(), std::move(w));
}

CausalHypothesis posterior_mean(const DensityGrid2D& grid) {
  const auto m0 = grid.marginal_w0();
  const auto m1 = grid.marginal_w1();
  CausalHypothesis out;
  for (std::size_t i = 0; i < m0.size(); ++i) {
    out.w0 += m0[i] * grid.axis_value(i);
    out.w1 += m1[i] * grid.axis_value(i);
  }
  return out;
}

std::vector<JudgmentItem> generate_judgment_items(CausalDirection dir) {
  constexpr int kSizes[] = {8, 16, 32};
  constexpr int kLevels = 9;
  std::vector<JudgmentItem> items;
  items.reserve(729);
  for (int n_plus : kSizes) {
    for (int n_minus : kSizes) {
      for (int a = 0; a < kLevels; ++a) {
        for (int b = 0; b < kLevels; ++b) {
          JudgmentItem item;
          item.direction = dir;
          item.observation = CausalObservation{n_plus, n_minus, a * n_plus / 8, b * n_minus / 8};
          items.push_back(item);
        }
      }
    }
  }
  return items;
}

std::vector<JudgmentItem> generate_judgment_items() {
  auto items = generate_judgment_items(CausalDirection::Generative);
  const auto prev = generate_judgment_items(CausalDirection::Preventive);
  items.insert(items.end(), prev.begin(), prev.end());
  return items;
}

void predict(const DensityGrid2D& prior, std::vector<JudgmentItem>& items) {
  for (auto& item : items) item.model_prediction = posterior_mean(posterior_grid(prior, item.observation, item.direction));
}

FitMetrics fit_metrics(std::span<const double> predictions, std::span<const double> judgments) {
  return FitMetrics{pearson_r(predictions, judgments), rmsd(predictions, judgments), predictions.size()};
}

FitMetrics fit_metrics(const std::vector<JudgmentItem>& items) {
  std::vector<double> pred, judged;
  for (const auto& item : items) {
    if (!item.model_prediction || !item.agent_judgment) continue;
    pred.push_back(item.model_prediction->w0);
    pred.push_back(item.model_prediction->w1);
    judged.push_back(item.agent_judgment->w0);
    judged.push_back(item.agent_judgment->w1);
  }
  if (pred.size() < 4) throw InvalidArgument("fit_metrics: need at least two items with prediction and judgment");
  return fit_metrics(pred, judged);
}

std::vector<BinnedPoint> window_bin(std::span<const double> x, std::span<const double> y, std::size_t bins) {
  if (x.size() != y.size()) throw InvalidArgument("window_bin: length mismatch");
  if (x.empty() || bins == 0) throw InvalidArgument("window_bin: need data and at least one bin");
  const auto [mn, mx] = std::minmax_element(x.begin(), x.end());
  const double lo = *mn;
  const double hi = *mx > *mn ? *mx : *mn + 1.0;
  const double width = (hi - lo) / static_cast<double>(bins);

  std::vector<BinnedPoint> out(bins);
  std::vector<double> sx(bins, 0.0), sy(bins, 0.0), syy(bins, 0.0);
  for (std::size_t b = 0; b < bins; ++b) {
    out[b].x_lo = lo + width * static_cast<double>(b);
    out[b].x_hi = b + 1 == bins ? hi : lo + width * static_cast<double>(b + 1);
  }
  std::vector<std::size_t> bin_of(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const std::size_t b = std::min(static_cast<std::size_t>(std::floor((x[i] - lo) / width)), bins - 1);
    bin_of[i] = b;
    ++out[b].count;
    sx[b] += x[i];
    sy[b] += y[i];
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    const std::size_t b = bin_of[i];
    const double dy = y[i] - sy[b] / static_cast<double>(out[b].count);
    syy[b] += dy * dy;
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t b = 0; b < bins; ++b) {
    const auto n = static_cast<double>(out[b].count);
    if (out[b].count == 0) {
      out[b].x_mean = out[b].y_mean = out[b].y_se = nan;
      continue;
    }
    out[b].x_mean = sx[b] / n;
    out[b].y_mean = sy[b] / n;
    out[b].y_se = out[b].count > 1 ? std::sqrt(syy[b] / (n - 1.0)) / std::sqrt(n) : 0.0;
  }
  return out;
}

}  // namespace ilprior
