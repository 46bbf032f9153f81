#include "ilprior/agents/llm_agent.hpp"

#include "ilprior/agents/parse.hpp"
#include "ilprior/errors.hpp"

namespace ilprior {

LlmAgent::LlmAgent(std::shared_ptr<const CompletionService> service, int parse_retries)
    : service_(std::move(service)), parse_retries_(parse_retries) {
  if (!service_) throw InvalidArgument("LlmAgent needs a completion service");
  if (parse_retries_ < 0) throw InvalidArgument("parse_retries must be >= 0");
}

AgentResponse LlmAgent::respond(const TaskSpec& spec, const Observation& d, RandomStream&) const {
  AgentResponse out;
  out.attempts = 0;
  std::vector<double> answers;
  for (const MessageList& messages : render_prompts(spec, d)) {
    std::string last_text;
    std::string last_error;
    bool accepted = false;
    for (int round = 0; round <= parse_retries_ && !accepted; ++round) {
      try {
        const Completion c = service_->complete(messages);
        out.attempts += c.attempts;
        last_text = c.text;
      } catch (const TransportError& e) {
        out.attempts += e.attempts();
        throw AgentFailure(std::string("chat request failed: ") + e.what(), last_text, out.attempts);
      }
      try {
        const auto values = parse_numeric_response(last_text, spec.response_schema, spec.response_lo, spec.response_hi);
        answers.insert(answers.end(), values.begin(), values.end());
        out.raw_text.push_back(last_text);
        accepted = true;
      } catch (const ParseError& e) {
        last_error = e.what();
      } catch (const BoundsError& e) {
        last_error = e.what();
      }
    }
    if (!accepted) {
      throw AgentFailure("no usable answer after " + std::to_string(parse_retries_ + 1) + " replies: " + last_error,
                         last_text, out.attempts);
    }
  }
  out.hypothesis = hypothesis_from_answers(spec, answers);
  out.timestamp = utc_timestamp();
  return out;
}

}  // namespace ilprior
