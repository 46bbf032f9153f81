#include "ilprior/chains/chains.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

namespace ilprior {

const Hypothesis* Chain::hypothesis_at(int t) const noexcept {
  if (t < 0 || static_cast<std::size_t>(t) >= records.size()) return nullptr;
  const auto& h = records[static_cast<std::size_t>(t)].hypothesis;
  return h ? &*h : nullptr;
}

std::size_t ChainSet::failed_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(chains.begin(), chains.end(), [](const Chain& c) { return c.failed; }));
}

void EnsembleConfig::validate() const {
  if (n_chains < 1) throw InvalidArgument("n_chains must be >= 1");
  if (n_iterations < 1) throw InvalidArgument("n_iterations must be >= 1");
}

Chain run_chain(RandomStream& rng, const TaskSpec& spec, const Agent& agent, int n_iter, int chain_id,
                std::size_t seed_index) {
  if (n_iter < 1) throw InvalidArgument("run_chain: n_iter must be >= 1");
  Chain chain;
  chain.chain_id = chain_id;
  chain.stream_seed = rng.seed();
  chain.seed_index = seed_index;
  chain.records.reserve(static_cast<std::size_t>(n_iter) + 1);

  Observation d = initial_observation(rng, spec, seed_index);
  chain.records.push_back(ChainRecord{chain_id, 0, d, std::nullopt, {}, 0, rng.seed(), seed_index, std::nullopt});

  for (int t = 1; t <= n_iter; ++t) {
    try {
      AgentResponse r = agent.respond(spec, d, rng);
      d = sample_observation(rng, spec.likelihood, r.hypothesis);
      chain.records.push_back(ChainRecord{chain_id, t, d, std::move(r.hypothesis), std::move(r.raw_text), r.attempts,
                                          rng.seed(), seed_index, std::move(r.timestamp)});
    } catch (const AgentFailure& e) {
      chain.failed = true;
      chain.failure = "iteration " + std::to_string(t) + ": " + e.what();
      if (!e.last_raw_text().empty()) chain.failure += " [last reply: " + e.last_raw_text().substr(0, 200) + "]";
      break;
    } catch (const DegeneratePosterior& e) {
      chain.failed = true;
      chain.failure = "iteration " + std::to_string(t) + ": " + e.what();
      break;
    } catch (const DegenerateHypothesis& e) {
      chain.failed = true;
      chain.failure = "iteration " + std::to_string(t) + ": " + e.what();
      break;
    }
  }
  return chain;
}

ChainSet run_ensemble(const EnsembleConfig& config, const TaskSpec& spec, const Agent& agent) {
  config.validate();
  const auto n = static_cast<std::size_t>(config.n_chains);
  const std::size_t slots = seed_count(spec);

  ChainSet out;
  out.task = spec.name;
  out.chains.resize(n);

  std::size_t workers = config.parallel ? config.parallel : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min({workers, agent.max_concurrency(), n});
  workers = std::max<std::size_t>(workers, 1);

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex callback_mutex;
  std::exception_ptr error;
  std::mutex error_mutex;

  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        RandomStream rng(RandomStream::derive_seed(config.base_seed, i));
        out.chains[i] = run_chain(rng, spec, agent, config.n_iterations, static_cast<int>(i), i % slots);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = n;  // stop handing out work
        return;
      }
      const std::size_t finished = ++done;
      if (config.on_chain_done) {
        std::lock_guard lock(callback_mutex);
        config.on_chain_done(finished, n);
      }
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);

  if (out.failed_count() == n) {
    std::string what = "all " + std::to_string(n) + " chains failed; first: " + out.chains.front().failure;
    throw EnsembleFailure(what, std::move(out));
  }
  return out;
}

}  // namespace ilprior
