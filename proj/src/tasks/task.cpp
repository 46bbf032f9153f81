#include "ilprior/tasks/task.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "ilprior/errors.hpp"

namespace ilprior {

const char* to_string(HypothesisKind kind) noexcept {
  switch (kind) {
    case HypothesisKind::CausalPair: return "causal-pair";
    case HypothesisKind::Proportion: return "proportion";
    case HypothesisKind::Scalar: return "scalar";
    case HypothesisKind::Year: return "year";
  }
  return "?";
}

HypothesisKind parse_hypothesis_kind(const std::string& text) {
  for (auto k : {HypothesisKind::CausalPair, HypothesisKind::Proportion, HypothesisKind::Scalar,
                 HypothesisKind::Year}) {
    if (text == to_string(k)) return k;
  }
  throw InvalidArgument("unknown hypothesis kind '" + text + "'");
}

const char* to_string(ResponseSchema schema) noexcept {
  return schema == ResponseSchema::OneNumber ? "one-number" : "two-numbers";
}

ResponseSchema parse_response_schema(const std::string& text) {
  if (text == "one-number") return ResponseSchema::OneNumber;
  if (text == "two-numbers") return ResponseSchema::TwoNumbers;
  throw InvalidArgument("unknown response schema '" + text + "'");
}

std::vector<std::string> placeholder_names(LikelihoodFamily family) {
  switch (family) {
    case LikelihoodFamily::NoisyOr:
    case LikelihoodFamily::NoisyAndNot:
      return {"k_minus", "k_plus", "n_c_minus", "n_c_plus"};
    case LikelihoodFamily::Binomial:
      return {"n_flips", "n_heads", "n_tails"};
    case LikelihoodFamily::UniformInteger:
    case LikelihoodFamily::UniformReal:
      return {"probe"};
  }
  return {};
}

namespace {

std::vector<std::string> placeholders_in(const std::string& tmpl) {
  std::vector<std::string> names;
  std::size_t pos = 0;
  while ((pos = tmpl.find('{', pos)) != std::string::npos) {
    const std::size_t end = tmpl.find('}', pos);
    if (end == std::string::npos) throw TemplateError("unterminated placeholder in template");
    names.push_back(tmpl.substr(pos + 1, end - pos - 1));
    pos = end + 1;
  }
  return names;
}

bool in_bounds(double x, double lo, double hi) { return x >= lo && x <= hi; }

}  // namespace

void validate(const TaskSpec& spec) {
  if (spec.name.empty()) throw InvalidArgument("task spec without a name");
  const auto fail = [&](const std::string& msg) { throw InvalidArgument("task '" + spec.name + "': " + msg); };
  if (spec.user_templates.empty()) fail("no user templates");
  if (!(std::isfinite(spec.hypothesis_lo) && std::isfinite(spec.hypothesis_hi) &&
        spec.hypothesis_lo < spec.hypothesis_hi)) {
    fail("hypothesis bounds must be finite and ordered");
  }
  if (!(spec.response_lo <= spec.response_hi)) fail("response bounds must be ordered");
  if (!(spec.response_scale > 0.0)) fail("response scale must be > 0");

  const bool causal_family = spec.likelihood.is_causal();
  if (causal_family != spec.is_causal()) fail("hypothesis kind does not match likelihood family");
  if (spec.is_causal()) {
    const bool two_questions = spec.response_schema == ResponseSchema::OneNumber && spec.user_templates.size() == 2;
    const bool one_pair = spec.response_schema == ResponseSchema::TwoNumbers && spec.user_templates.size() == 1;
    if (!two_questions && !one_pair) fail("causal tasks need two one-number questions or one two-number question");
  } else if (spec.response_schema != ResponseSchema::OneNumber || spec.user_templates.size() != 1) {
    fail("scalar tasks need exactly one one-number question");
  }

  const auto allowed = placeholder_names(spec.likelihood.family);
  for (const auto& tmpl : spec.user_templates) {
    for (const auto& name : placeholders_in(tmpl)) {
      if (std::find(allowed.begin(), allowed.end(), name) == allowed.end()) {
        throw TemplateError("task '" + spec.name + "': placeholder {" + name +
                            "} is not produced by its observations");
      }
    }
  }

  std::visit(
      [&](const auto& rule) {
        using T = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<T, MaxValueSeed>) {
          if (spec.is_causal() || spec.likelihood.family == LikelihoodFamily::Binomial)
            fail("max-value seed needs a uniform likelihood");
          if (!in_bounds(rule.t_max, spec.hypothesis_lo, spec.hypothesis_hi)) fail("t_max outside hypothesis bounds");
          if (rule.t_max < spec.likelihood.lower) fail("t_max below the likelihood's lower bound");
        } else if constexpr (std::is_same_v<T, CausalPairsSeed>) {
          if (!spec.is_causal()) fail("causal-pair seeds need a causal likelihood");
          if (rule.pairs.empty()) fail("empty seed list");
          for (const auto& p : rule.pairs)
            if (!in_bounds(p.w0, 0.0, 1.0) || !in_bounds(p.w1, 0.0, 1.0)) fail("seed pair outside [0, 1]");
        } else {
          if (spec.likelihood.family != LikelihoodFamily::Binomial) fail("head-probability seeds need a binomial likelihood");
          if (rule.values.empty()) fail("empty seed list");
          for (double v : rule.values)
            if (!in_bounds(v, 0.0, 1.0)) fail("head probability outside [0, 1]");
        }
      },
      spec.seed_rule);
}

std::string fill_template(const std::string& tmpl, const std::map<std::string, std::string>& vars) {
  std::string out;
  out.reserve(tmpl.size() + 32);
  std::size_t pos = 0;
  while (pos < tmpl.size()) {
    const std::size_t open = tmpl.find('{', pos);
    if (open == std::string::npos) {
      out.append(tmpl, pos, std::string::npos);
      break;
    }
    out.append(tmpl, pos, open - pos);
    const std::size_t close = tmpl.find('}', open);
    if (close == std::string::npos) throw TemplateError("unterminated placeholder in template");
    const std::string name = tmpl.substr(open + 1, close - open - 1);
    const auto it = vars.find(name);
    if (it == vars.end()) throw TemplateError("no value for placeholder {" + name + "}");
    out += it->second;
    pos = close + 1;
  }
  return out;
}

std::string format_number(double x, int decimals) {
  if (decimals <= 0) {
    std::ostringstream os;
    os << static_cast<long long>(std::llround(x));
    return os.str();
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
  return buf;
}

std::map<std::string, std::string> observation_vars(const TaskSpec& spec, const Observation& d) {
  std::map<std::string, std::string> vars;
  if (const auto* c = std::get_if<CausalObservation>(&d)) {
    vars["k_plus"] = std::to_string(c->k_plus);
    vars["k_minus"] = std::to_string(c->k_minus);
    vars["n_c_plus"] = std::to_string(c->n_c_plus);
    vars["n_c_minus"] = std::to_string(c->n_c_minus);
  } else if (const auto* coin = std::get_if<CoinObservation>(&d)) {
    vars["n_flips"] = std::to_string(coin->n_flips);
    vars["n_heads"] = std::to_string(coin->k_heads);
    vars["n_tails"] = std::to_string(coin->n_flips - coin->k_heads);
  } else if (const auto* p = std::get_if<ProbeObservation>(&d)) {
    vars["probe"] = format_number(p->probe, spec.probe_decimals);
  }
  return vars;
}

std::vector<MessageList> render_prompts(const TaskSpec& spec, const Observation& d) {
  const auto vars = observation_vars(spec, d);
  std::vector<MessageList> out;
  out.reserve(spec.user_templates.size());
  for (const auto& tmpl : spec.user_templates) {
    out.push_back({ChatMessage{"system", spec.system_prompt}, ChatMessage{"user", fill_template(tmpl, vars)}});
  }
  return out;
}

std::size_t seed_count(const TaskSpec& spec) noexcept {
  return std::visit(
      [](const auto& rule) -> std::size_t {
        using T = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<T, MaxValueSeed>) return 1;
        else if constexpr (std::is_same_v<T, CausalPairsSeed>) return rule.pairs.size();
        else return rule.values.size();
      },
      spec.seed_rule);
}

Hypothesis seed_hypothesis(const TaskSpec& spec, std::size_t seed_index) {
  return std::visit(
      [&](const auto& rule) -> Hypothesis {
        using T = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<T, MaxValueSeed>) return rule.t_max;
        else if constexpr (std::is_same_v<T, CausalPairsSeed>) return rule.pairs.at(seed_index % rule.pairs.size());
        else return rule.values.at(seed_index % rule.values.size());
      },
      spec.seed_rule);
}

Observation initial_observation(RandomStream& rng, const TaskSpec& spec, std::size_t seed_index) {
  return sample_observation(rng, spec.likelihood, seed_hypothesis(spec, seed_index));
}

std::string describe_seed(const TaskSpec& spec) {
  std::ostringstream os;
  std::visit(
      [&](const auto& rule) {
        using T = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<T, MaxValueSeed>) {
          os << "t_max=" << rule.t_max;
        } else if constexpr (std::is_same_v<T, CausalPairsSeed>) {
          os << "(w0,w1)={";
          for (std::size_t i = 0; i < rule.pairs.size(); ++i)
            os << (i ? ", " : "") << "(" << rule.pairs[i].w0 << "," << rule.pairs[i].w1 << ")";
          os << "}";
        } else {
          os << "p(head)={";
          for (std::size_t i = 0; i < rule.values.size(); ++i) os << (i ? ", " : "") << rule.values[i];
          os << "}";
        }
      },
      spec.seed_rule);
  return os.str();
}

}  // namespace ilprior
