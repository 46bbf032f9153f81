#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ilprior/agents/simulated.hpp"
#include "ilprior/chains/chains.hpp"

namespace ilprior {

/// Below this many surviving chains the report carries a low-power warning.
inline constexpr std::size_t kMinChainsForPower = 20;

struct ConvergenceReport {
  double alpha = 0.05;
  int final_iteration = 0;
  /// p_values[t - 1] compares iteration t with the final one, t = 1..final-1.
  std::vector<double> p_values;
  std::optional<int> first_converged_iteration;
  std::size_t chains_used = 0;
  std::size_t chains_failed = 0;
  std::optional<std::string> warning;
};

/// Mann-Whitney U between the cross-chain hypotheses at each iteration t and
/// at the final iteration. Causal pairs are tested per coordinate and
/// combined as min(1, 2 * min p). first_converged_iteration is the smallest t
/// from which no test rejects at alpha. Failed chains are left out.
/// Throws InvalidArgument when fewer than 2 iterations exist or no chain
/// survived.
ConvergenceReport detect_convergence(const ChainSet& chains, double alpha = 0.05);

/// Hypotheses of the surviving chains at `iteration`.
std::vector<Hypothesis> hypotheses_at(const ChainSet& chains, int iteration);

/// Last iteration reached by every surviving chain.
int final_iteration(const ChainSet& chains);

/// Gaussian-KDE density of the hypotheses at `iteration`: 100 bins over the
/// task's bounds for scalar tasks, the 101 x 101 grid for causal ones.
/// Throws Error when no chain survived.
PriorDensity empirical_prior(const ChainSet& chains, const TaskSpec& spec, int iteration,
                             std::optional<double> bandwidth = std::nullopt);

}  // namespace ilprior
