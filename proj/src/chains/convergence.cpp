#include "ilprior/chains/convergence.hpp"

#include <algorithm>
#include <limits>

#include "ilprior/numerics/kde.hpp"
#include "ilprior/numerics/stats.hpp"

namespace ilprior {

int final_iteration(const ChainSet& chains) {
  int final = std::numeric_limits<int>::max();
  bool any = false;
  for (const auto& c : chains.chains) {
    if (c.failed) continue;
    any = true;
    final = std::min(final, static_cast<int>(c.records.size()) - 1);
  }
  if (!any) throw InvalidArgument("no surviving chains");
  return final;
}

std::vector<Hypothesis> hypotheses_at(const ChainSet& chains, int iteration) {
  std::vector<Hypothesis> out;
  for (const auto& c : chains.chains) {
    if (c.failed) continue;
    if (const Hypothesis* h = c.hypothesis_at(iteration)) out.push_back(*h);
  }
  return out;
}

namespace {

void split(const std::vector<Hypothesis>& hs, std::vector<double>& a, std::vector<double>& b, bool& pairs) {
  a.clear();
  b.clear();
  for (const auto& h : hs) {
    if (const auto* c = std::get_if<CausalHypothesis>(&h)) {
      pairs = true;
      a.push_back(c->w0);
      b.push_back(c->w1);
    } else {
      a.push_back(std::get<double>(h));
    }
  }
}

}  // namespace

ConvergenceReport detect_convergence(const ChainSet& chains, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("alpha must be in (0, 1)");
  ConvergenceReport report;
  report.alpha = alpha;
  report.chains_failed = chains.failed_count();
  report.final_iteration = final_iteration(chains);
  if (report.final_iteration < 2) throw InvalidArgument("convergence needs at least 2 iterations");

  std::vector<double> final_a, final_b;
  bool pairs = false;
  split(hypotheses_at(chains, report.final_iteration), final_a, final_b, pairs);
  report.chains_used = final_a.size();
  if (report.chains_used < kMinChainsForPower) {
    report.warning = "only " + std::to_string(report.chains_used) + " surviving chains; the test has low power";
  }

  std::vector<double> a, b;
  for (int t = 1; t < report.final_iteration; ++t) {
    bool t_pairs = false;
    split(hypotheses_at(chains, t), a, b, t_pairs);
    double p = mann_whitney_u(a, final_a).p_value;
    if (pairs) p = std::min(1.0, 2.0 * std::min(p, mann_whitney_u(b, final_b).p_value));
    report.p_values.push_back(p);
  }
  for (int t = report.final_iteration - 1; t >= 1; --t) {
    if (report.p_values[static_cast<std::size_t>(t - 1)] < alpha) break;
    report.first_converged_iteration = t;
  }
  return report;
}

PriorDensity empirical_prior(const ChainSet& chains, const TaskSpec& spec, int iteration,
                             std::optional<double> bandwidth) {
  const auto hs = hypotheses_at(chains, iteration);
  if (hs.empty()) throw Error("no hypotheses at iteration " + std::to_string(iteration) + " in surviving chains");
  if (spec.is_causal()) {
    std::vector<std::pair<double, double>> pts;
    pts.reserve(hs.size());
    for (const auto& h : hs) {
      const auto& c = std::get<CausalHypothesis>(h);
      pts.emplace_back(c.w0, c.w1);
    }
    return kde_gaussian_2d(pts, kCausalGridPoints, bandwidth, bandwidth);
  }
  std::vector<double> xs;
  xs.reserve(hs.size());
  for (const auto& h : hs) xs.push_back(std::get<double>(h));
  return kde_gaussian(xs, spec.hypothesis_lo, spec.hypothesis_hi, kDefaultBins, bandwidth);
}

}  // namespace ilprior
