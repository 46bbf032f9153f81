#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ilprior/agents/agent.hpp"
#include "ilprior/errors.hpp"

namespace ilprior {

/// One step of one chain. Iteration 0 holds the seed observation and no
/// hypothesis; for t >= 1 the observation was generated from the hypothesis.
struct ChainRecord {
  int chain_id = 0;
  int iteration = 0;
  Observation observation;
  std::optional<Hypothesis> hypothesis;
  std::vector<std::string> raw_text;
  int attempts = 0;
  std::uint64_t stream_seed = 0;
  std::size_t seed_index = 0;
  std::optional<std::string> timestamp;

  friend bool operator==(const ChainRecord&, const ChainRecord&) = default;
};

struct Chain {
  int chain_id = 0;
  std::uint64_t stream_seed = 0;
  std::size_t seed_index = 0;
  std::vector<ChainRecord> records;
  bool failed = false;
  std::string failure;  // reason, when failed

  /// Hypothesis at iteration t, if the chain reached it.
  const Hypothesis* hypothesis_at(int t) const noexcept;
  friend bool operator==(const Chain&, const Chain&) = default;
};

struct ChainSet {
  std::string task;
  std::vector<Chain> chains;  // ordered by chain_id

  std::size_t failed_count() const noexcept;
  friend bool operator==(const ChainSet&, const ChainSet&) = default;
};

struct EnsembleConfig {
  int n_chains = 100;
  int n_iterations = 12;
  std::uint64_t base_seed = 0;
  std::size_t parallel = 0;  // worker threads; 0 = hardware concurrency
  std::function<void(std::size_t done, std::size_t total)> on_chain_done;

  void validate() const;
};

/// Raised when every chain of an ensemble failed; carries what was recorded.
class EnsembleFailure : public Error {
 public:
  EnsembleFailure(const std::string& what, ChainSet partial) : Error(what), partial_(std::move(partial)) {}
  const ChainSet& partial() const noexcept { return partial_; }

 private:
  ChainSet partial_;
};

/// Runs one chain for n_iter steps: h_t = agent(d_{t-1}), d_t ~ p(d | h_t).
/// An agent failure or an impossible posterior stops the chain; the chain
/// is returned marked failed with the records gathered so far.
Chain run_chain(RandomStream& rng, const TaskSpec& spec, const Agent& agent, int n_iter, int chain_id = 0,
                std::size_t seed_index = 0);

/// Runs n_chains chains, chain i with stream derive_seed(base_seed, i) and
/// seed slot i mod seed_count. Chains run concurrently up to
/// min(parallel, agent.max_concurrency()); the result does not depend on
/// the schedule. Throws EnsembleFailure only when every chain failed.
ChainSet run_ensemble(const EnsembleConfig& config, const TaskSpec& spec, const Agent& agent);

}  // namespace ilprior
