#pragma once

#include <memory>

#include "ilprior/agents/agent.hpp"
#include "ilprior/agents/llm_client.hpp"

namespace ilprior {

/// Agent backed by a chat model. Every question of the task is asked in a
/// fresh conversation; unparseable or out-of-range answers are re-asked up
/// to parse_retries times per question.
class LlmAgent final : public Agent {
 public:
  LlmAgent(std::shared_ptr<const CompletionService> service, int parse_retries = 5);

  /// Throws AgentFailure (carrying the last raw reply) when a question
  /// exhausts its budget or the transport gives up.
  AgentResponse respond(const TaskSpec& spec, const Observation& d, RandomStream& rng) const override;

  std::size_t max_concurrency() const noexcept override { return service_->max_concurrency(); }
  std::string describe() const override { return "llm"; }

 private:
  std::shared_ptr<const CompletionService> service_;
  int parse_retries_;
};

}  // namespace ilprior
