#include "ilprior/agents/simulated.hpp"

#include <cmath>
#include <limits>

#include "ilprior/errors.hpp"

namespace ilprior {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

}  // namespace

std::size_t posterior_sample_grid(RandomStream& rng, std::span<const double> prior,
                                  std::span<const double> loglik) {
  if (prior.size() != loglik.size() || prior.empty()) {
    throw InvalidArgument("posterior_sample_grid: prior and log-likelihood shapes differ");
  }
  double max_ll = kNegInf;
  for (std::size_t i = 0; i < prior.size(); ++i) {
    if (prior[i] > 0.0 && loglik[i] > max_ll) max_ll = loglik[i];
  }
  if (max_ll == kNegInf || std::isnan(max_ll)) {
    throw DegeneratePosterior("posterior has zero mass in every cell");
  }
  std::vector<double> weight(prior.size());
  double total = 0.0;
  for (std::size_t i = 0; i < prior.size(); ++i) {
    const double w = prior[i] > 0.0 ? prior[i] * std::exp(loglik[i] - max_ll) : 0.0;
    weight[i] = w;
    total += w;
  }
  const double target = rng.uniform01() * total;
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weight.size(); ++i) {
    if (weight[i] <= 0.0) continue;
    last_positive = i;
    acc += weight[i];
    if (target < acc) return i;
  }
  return last_positive;  // rounding at the top end
}

SimulatedAgent::SimulatedAgent(PriorDensity prior, LikelihoodSpec likelihood)
    : prior_(std::move(prior)), likelihood_(likelihood) {
  const bool grid = std::holds_alternative<DensityGrid2D>(prior_);
  if (grid != likelihood_.is_causal()) {
    throw InvalidArgument("SimulatedAgent: causal likelihoods need a 2D grid prior, scalar ones a 1D prior");
  }
}

SimulatedAgent SimulatedAgent::for_task(const TaskSpec& spec, PriorDensity prior) {
  if (const auto* d = std::get_if<Density1D>(&prior)) {
    if (d->lo() != spec.hypothesis_lo || d->hi() != spec.hypothesis_hi) {
      throw InvalidArgument("SimulatedAgent: prior support does not match the bounds of task '" + spec.name + "'");
    }
  }
  return SimulatedAgent(std::move(prior), spec.likelihood);
}

std::span<const double> SimulatedAgent::prior_masses() const noexcept {
  return std::visit([](const auto& p) { return p.masses(); }, prior_);
}

Hypothesis SimulatedAgent::hypothesis_at(std::size_t i) const {
  if (const auto* d = std::get_if<Density1D>(&prior_)) return d->center(i);
  const auto& g = std::get<DensityGrid2D>(prior_);
  return CausalHypothesis{g.axis_value(i / g.resolution()), g.axis_value(i % g.resolution())};
}

std::vector<double> SimulatedAgent::log_likelihoods(const Observation& d) const {
  if (const auto* g = std::get_if<DensityGrid2D>(&prior_)) {
    const auto* obs = std::get_if<CausalObservation>(&d);
    if (!obs) throw InvalidArgument("SimulatedAgent: causal agent needs a causal observation");
    return causal_log_likelihood_grid(*obs, likelihood_.direction(), g->resolution());
  }
  const auto& density = std::get<Density1D>(prior_);
  std::vector<double> ll(density.bins());
  for (std::size_t i = 0; i < ll.size(); ++i) ll[i] = log_likelihood(likelihood_, d, representative(i, d));
  return ll;
}

double SimulatedAgent::representative(std::size_t i, const Observation& d) const {
  const auto& density = std::get<Density1D>(prior_);
  const double c = density.center(i);
  // A probe in the upper half of bin i is still consistent with the bin; move
  // its representative up to the probe so the bin keeps its likelihood.
  if (const auto* p = std::get_if<ProbeObservation>(&d)) {
    if (p->probe > c && p->probe <= density.edge(i + 1)) return p->probe;
  }
  return c;
}

AgentResponse SimulatedAgent::respond(const TaskSpec& spec, const Observation& d, RandomStream& rng) const {
  if (spec.likelihood.family != likelihood_.family) {
    throw InvalidArgument("SimulatedAgent: likelihood family differs from task '" + spec.name + "'");
  }
  const std::vector<double> ll = log_likelihoods(d);
  const std::size_t idx = posterior_sample_grid(rng, prior_masses(), ll);
  if (std::holds_alternative<Density1D>(prior_)) return AgentResponse{representative(idx, d), {}, 1, std::nullopt};
  return AgentResponse{hypothesis_at(idx), {}, 1, std::nullopt};
}

std::string SimulatedAgent::describe() const {
  return std::holds_alternative<DensityGrid2D>(prior_) ? "simulated-bayesian (2D grid prior)"
                                                       : "simulated-bayesian (1D binned prior)";
}

AgentResponse PriorSamplingAgent::respond(const TaskSpec&, const Observation&, RandomStream& rng) const {
  const auto masses = std::visit([](const auto& p) { return p.masses(); }, prior_);
  const std::vector<double> flat(masses.size(), 0.0);
  const std::size_t idx = posterior_sample_grid(rng, masses, flat);
  if (const auto* d = std::get_if<Density1D>(&prior_)) return AgentResponse{d->center(idx), {}, 1, std::nullopt};
  const auto& g = std::get<DensityGrid2D>(prior_);
  return AgentResponse{CausalHypothesis{g.axis_value(idx / g.resolution()), g.axis_value(idx % g.resolution())},
                       {}, 1, std::nullopt};
}

}  // namespace ilprior
