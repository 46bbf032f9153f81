#pragma once

#include <span>
#include <variant>
#include <vector>

#include "ilprior/agents/agent.hpp"
#include "ilprior/numerics/density.hpp"

namespace ilprior {

using PriorDensity = std::variant<Density1D, DensityGrid2D>;

/// Draws a grid index with probability proportional to
/// prior[i] * exp(loglik[i] - max loglik). Throws InvalidArgument on a shape
/// mismatch and DegeneratePosterior when no cell has positive mass.
std::size_t posterior_sample_grid(RandomStream& rng, std::span<const double> prior,
                                  std::span<const double> loglik);

/// Exact Bayesian learner on a discretized hypothesis space.
///
/// Scalar priors are Density1D; hypotheses are returned at bin centers
/// (see representative()).
/// Causal priors are DensityGrid2D; hypotheses are grid points.
class SimulatedAgent final : public Agent {
 public:
  /// Throws InvalidArgument if the prior's shape does not fit the
  /// likelihood family (1D for scalar families, 2D for causal ones).
  SimulatedAgent(PriorDensity prior, LikelihoodSpec likelihood);

  /// Agent for a task; additionally requires the prior's support to equal
  /// the task's hypothesis bounds.
  static SimulatedAgent for_task(const TaskSpec& spec, PriorDensity prior);

  /// Throws DegeneratePosterior if the data are impossible under every
  /// hypothesis the prior supports.
  AgentResponse respond(const TaskSpec& spec, const Observation& d, RandomStream& rng) const override;

  /// Unnormalized log posterior weights' log-likelihood component for d.
  std::vector<double> log_likelihoods(const Observation& d) const;

  /// Hypothesis represented by grid/bin index i.
  Hypothesis hypothesis_at(std::size_t i) const;

  /// Scalar value standing for bin i given d: the bin center, or the probe
  /// when d's probe lies between the center and the bin's upper edge.
  double representative(std::size_t i, const Observation& d) const;

  std::span<const double> prior_masses() const noexcept;
  const PriorDensity& prior() const noexcept { return prior_; }
  const LikelihoodSpec& likelihood() const noexcept { return likelihood_; }

  std::size_t max_concurrency() const noexcept override { return 1024; }
  std::string describe() const override;

 private:
  PriorDensity prior_;
  LikelihoodSpec likelihood_;
};

/// Agent that ignores its data and samples the prior directly. Its chains are
/// stationary from the first iteration; used to check convergence detection.
class PriorSamplingAgent final : public Agent {
 public:
  explicit PriorSamplingAgent(PriorDensity prior) : prior_(std::move(prior)) {}

  AgentResponse respond(const TaskSpec& spec, const Observation& d, RandomStream& rng) const override;
  std::size_t max_concurrency() const noexcept override { return 1024; }
  std::string describe() const override { return "prior-sampling"; }

 private:
  PriorDensity prior_;
};

}  // namespace ilprior
