#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "ilprior/likelihoods/likelihoods.hpp"
#include "ilprior/numerics/random.hpp"

namespace ilprior {

enum class HypothesisKind { CausalPair, Proportion, Scalar, Year };
enum class ResponseSchema { OneNumber, TwoNumbers };

const char* to_string(HypothesisKind kind) noexcept;
HypothesisKind parse_hypothesis_kind(const std::string& text);
const char* to_string(ResponseSchema schema) noexcept;
ResponseSchema parse_response_schema(const std::string& text);

/// Chains start from data generated at the maximum value.
struct MaxValueSeed {
  double t_max = 0.0;
};
/// Chains start from data generated at one of these (w0, w1) pairs.
struct CausalPairsSeed {
  std::vector<CausalHypothesis> pairs;
};
/// Chains start from coin flips with one of these head probabilities.
struct HeadProbsSeed {
  std::vector<double> values;
};
using SeedRule = std::variant<MaxValueSeed, CausalPairsSeed, HeadProbsSeed>;

struct ChatMessage {
  std::string role;
  std::string content;
  friend bool operator==(const ChatMessage&, const ChatMessage&) = default;
};
using MessageList = std::vector<ChatMessage>;

/// Everything needed to run one elicitation task.
///
/// Each entry of user_templates is asked as a separate, fresh conversation
/// per iteration. With the one-number schema and two templates, the first
/// answer is w0 and the second w1; with the two-number schema a single
/// template yields both. Raw answers are multiplied by response_scale
/// (0.01 for "out of 100" answers) to get hypothesis units.
struct TaskSpec {
  std::string name;
  std::string title;
  std::string system_prompt;
  std::vector<std::string> user_templates;
  ResponseSchema response_schema = ResponseSchema::OneNumber;
  double response_scale = 1.0;
  double response_lo = 0.0;  // accepted raw-answer range, response units
  double response_hi = 0.0;
  LikelihoodSpec likelihood;
  SeedRule seed_rule;
  HypothesisKind hypothesis_kind = HypothesisKind::Scalar;
  double hypothesis_lo = 0.0;
  double hypothesis_hi = 0.0;
  int probe_decimals = 0;  // digits after the point when a probe is rendered

  bool is_causal() const noexcept { return hypothesis_kind == HypothesisKind::CausalPair; }
};

/// Placeholder names an observation of the given likelihood family supplies.
std::vector<std::string> placeholder_names(LikelihoodFamily family);

/// Checks the structural invariants of a spec; throws InvalidArgument or
/// TemplateError describing the first violation.
void validate(const TaskSpec& spec);

/// Substitutes {name} placeholders. Throws TemplateError for unterminated
/// braces or a placeholder missing from vars.
std::string fill_template(const std::string& tmpl, const std::map<std::string, std::string>& vars);

/// Placeholder values for an observation under this task's conventions.
std::map<std::string, std::string> observation_vars(const TaskSpec& spec, const Observation& d);

/// One message list (system + user) per question in the task.
std::vector<MessageList> render_prompts(const TaskSpec& spec, const Observation& d);

/// Number of distinct seeds the rule cycles through.
std::size_t seed_count(const TaskSpec& spec) noexcept;

/// Hypothesis that generates the initial data for seed slot `seed_index`
/// (taken modulo seed_count).
Hypothesis seed_hypothesis(const TaskSpec& spec, std::size_t seed_index);

/// d_0 for a chain assigned to seed slot `seed_index`.
Observation initial_observation(RandomStream& rng, const TaskSpec& spec, std::size_t seed_index);

/// Human-readable seed description, e.g. "t_max=150" or "p(head)={0.3, 0.5, 0.7}".
std::string describe_seed(const TaskSpec& spec);

/// Format a number for a prompt with a fixed number of decimals.
std::string format_number(double x, int decimals);

}  // namespace ilprior
