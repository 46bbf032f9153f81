#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ilprior/likelihoods/likelihoods.hpp"
#include "ilprior/numerics/random.hpp"
#include "ilprior/tasks/task.hpp"

namespace ilprior {

struct AgentResponse {
  Hypothesis hypothesis;
  std::vector<std::string> raw_text;       // one entry per question; empty for simulated agents
  int attempts = 1;                        // completions requested, including retries
  std::optional<std::string> timestamp;    // UTC time the response arrived, if wall-clock based
};

/// Maps an observation to a sampled hypothesis. Implementations must be safe
/// to call concurrently from several threads, each with its own stream.
class Agent {
 public:
  virtual ~Agent() = default;

  virtual AgentResponse respond(const TaskSpec& spec, const Observation& d, RandomStream& rng) const = 0;

  /// Upper bound on useful concurrent respond() calls.
  virtual std::size_t max_concurrency() const noexcept = 0;

  virtual std::string describe() const = 0;
};

}  // namespace ilprior
