#include <fstream>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "ilprior/errors.hpp"
#include "ilprior/tasks/registry.hpp"

namespace ilprior {

namespace {

std::size_t line_of(const YAML::Node& node) {
  const auto mark = node.Mark();
  return mark.line >= 0 ? static_cast<std::size_t>(mark.line) + 1 : 0;
}

[[noreturn]] void fail(const YAML::Node& node, const std::string& msg) {
  throw LoadError("task config line " + std::to_string(line_of(node)) + ": " + msg, line_of(node));
}

const YAML::Node require(const YAML::Node& parent, const char* key) {
  const YAML::Node n = parent[key];
  if (!n) fail(parent, std::string("missing key '") + key + "'");
  return n;
}

template <class T>
T as(const YAML::Node& node, const char* what) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    fail(node, std::string("bad value for '") + what + "'");
  }
}

std::pair<double, double> bounds(const YAML::Node& node, const char* what) {
  if (!node.IsSequence() || node.size() != 2) fail(node, std::string("'") + what + "' must be [lo, hi]");
  return {as<double>(node[0], what), as<double>(node[1], what)};
}

SeedRule parse_seed(const YAML::Node& node) {
  if (!node.IsMap()) fail(node, "'seed' must be a mapping");
  if (const auto m = node["max_value"]) return MaxValueSeed{as<double>(m, "max_value")};
  if (const auto pairs = node["causal_pairs"]) {
    CausalPairsSeed rule;
    if (!pairs.IsSequence()) fail(pairs, "'causal_pairs' must be a list of [w0, w1]");
    for (const auto& p : pairs) {
      const auto [w0, w1] = bounds(p, "causal_pairs");
      rule.pairs.push_back({w0, w1});
    }
    return rule;
  }
  if (const auto probs = node["head_probs"]) {
    HeadProbsSeed rule;
    if (!probs.IsSequence()) fail(probs, "'head_probs' must be a list");
    for (const auto& p : probs) rule.values.push_back(as<double>(p, "head_probs"));
    return rule;
  }
  fail(node, "'seed' needs one of max_value, causal_pairs, head_probs");
}

TaskSpec parse_task(const YAML::Node& node) {
  if (!node.IsMap()) fail(node, "each task must be a mapping");
  TaskSpec t;
  t.name = as<std::string>(require(node, "name"), "name");
  t.title = node["title"] ? as<std::string>(node["title"], "title") : t.name;
  t.system_prompt = as<std::string>(require(node, "system_prompt"), "system_prompt");

  const YAML::Node templates = require(node, "user_templates");
  if (templates.IsScalar()) {
    t.user_templates.push_back(as<std::string>(templates, "user_templates"));
  } else {
    for (const auto& tmpl : templates) t.user_templates.push_back(as<std::string>(tmpl, "user_templates"));
  }
  // Block scalars keep their trailing newline; prompts should not.
  for (auto& tmpl : t.user_templates)
    while (!tmpl.empty() && (tmpl.back() == '\n' || tmpl.back() == ' ')) tmpl.pop_back();
  while (!t.system_prompt.empty() && t.system_prompt.back() == '\n') t.system_prompt.pop_back();

  try {
    t.response_schema = parse_response_schema(node["response_schema"] ? node["response_schema"].as<std::string>()
                                                                       : std::string("one-number"));
    const YAML::Node lik = require(node, "likelihood");
    t.likelihood.family = parse_likelihood_family(as<std::string>(require(lik, "family"), "family"));
    if (lik["lower"]) t.likelihood.lower = as<double>(lik["lower"], "lower");
    if (lik["trials"]) t.likelihood.trials = as<int>(lik["trials"], "trials");
    if (lik["n_c_plus"]) t.likelihood.n_c_plus = as<int>(lik["n_c_plus"], "n_c_plus");
    if (lik["n_c_minus"]) t.likelihood.n_c_minus = as<int>(lik["n_c_minus"], "n_c_minus");
    t.hypothesis_kind = parse_hypothesis_kind(as<std::string>(require(node, "hypothesis_kind"), "hypothesis_kind"));
  } catch (const InvalidArgument& e) {
    fail(node, e.what());
  }

  std::tie(t.hypothesis_lo, t.hypothesis_hi) = bounds(require(node, "hypothesis_bounds"), "hypothesis_bounds");
  if (node["response_bounds"]) {
    std::tie(t.response_lo, t.response_hi) = bounds(node["response_bounds"], "response_bounds");
  } else {
    t.response_lo = t.hypothesis_lo;
    t.response_hi = t.hypothesis_hi;
  }
  if (node["response_scale"]) t.response_scale = as<double>(node["response_scale"], "response_scale");
  if (node["probe_decimals"]) t.probe_decimals = as<int>(node["probe_decimals"], "probe_decimals");
  t.seed_rule = parse_seed(require(node, "seed"));

  try {
    validate(t);
  } catch (const Error& e) {
    fail(node, e.what());
  }
  return t;
}

}  // namespace

std::vector<TaskSpec> parse_task_config(const std::string& yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::ParserException& e) {
    const auto line = e.mark.line >= 0 ? static_cast<std::size_t>(e.mark.line) + 1 : 0;
    throw LoadError("task config line " + std::to_string(line) + ": " + e.msg, line);
  }
  const YAML::Node tasks = root["tasks"];
  if (!tasks || !tasks.IsSequence()) throw LoadError("task config: top-level 'tasks' list is required", 1);
  std::vector<TaskSpec> out;
  for (const auto& node : tasks) out.push_back(parse_task(node));
  return out;
}

std::vector<TaskSpec> load_task_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open task config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_task_config(ss.str());
}

}  // namespace ilprior
