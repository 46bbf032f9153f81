#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include "ilprior/errors.hpp"
#include "ilprior/tasks/registry.hpp"

using namespace ilprior;

namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string user_text(const MessageList& m) { return m.at(1).content; }

}  // namespace

TEST(Registry, SixteenUniqueTasks) {
  const auto& r = builtin_tasks();
  EXPECT_EQ(r.size(), 16u);
  std::set<std::string> names;
  for (const auto& t : r.tasks()) names.insert(t.name);
  EXPECT_EQ(names.size(), 16u);
}

TEST(Registry, Lifespan) {
  const auto& t = builtin_tasks().at("lifespan-male");
  EXPECT_EQ(std::get<MaxValueSeed>(t.seed_rule).t_max, 150);
  EXPECT_EQ(t.likelihood.family, LikelihoodFamily::UniformInteger);
  EXPECT_EQ(t.likelihood.describe(), "U[1, h]");
  EXPECT_EQ(t.hypothesis_lo, 1);
  EXPECT_EQ(t.hypothesis_hi, 150);
}

TEST(Registry, SuperhumanAi) {
  const auto& t = builtin_tasks().at("superhuman-ai");
  EXPECT_EQ(std::get<MaxValueSeed>(t.seed_rule).t_max, 2200);
  EXPECT_EQ(t.likelihood.describe(), "U[2024, h]");
  EXPECT_EQ(t.hypothesis_kind, HypothesisKind::Year);
}

TEST(Registry, CoinFlips) {
  const auto& t = builtin_tasks().at("coin-flips");
  EXPECT_EQ(std::get<HeadProbsSeed>(t.seed_rule).values, (std::vector<double>{0.3, 0.5, 0.7}));
  EXPECT_EQ(t.likelihood.describe(), "Bin(10, h)");
}

TEST(Registry, LowerBoundsAndIntegrality) {
  const auto& r = builtin_tasks();
  struct Row {
    const char* name;
    LikelihoodFamily family;
    double lower, t_max;
  };
  for (const Row& row : {Row{"movie-grosses", LikelihoodFamily::UniformReal, 0, 3000},
                         Row{"poem-lengths", LikelihoodFamily::UniformInteger, 1, 200},
                         Row{"pharaoh-reigns", LikelihoodFamily::UniformInteger, 0, 100},
                         Row{"movie-runtimes", LikelihoodFamily::UniformReal, 0, 800},
                         Row{"cake-baking", LikelihoodFamily::UniformReal, 0, 120},
                         Row{"zero-carbon", LikelihoodFamily::UniformInteger, 2024, 2200},
                         Row{"mars-colony", LikelihoodFamily::UniformInteger, 2024, 2200}}) {
    const auto& t = r.at(row.name);
    EXPECT_EQ(t.likelihood.family, row.family) << row.name;
    EXPECT_EQ(t.likelihood.lower, row.lower) << row.name;
    EXPECT_EQ(std::get<MaxValueSeed>(t.seed_rule).t_max, row.t_max) << row.name;
  }
}

TEST(Registry, CausalTasksCarryBothDirections) {
  const auto& r = builtin_tasks();
  EXPECT_EQ(r.at("causal-generative").likelihood.direction(), CausalDirection::Generative);
  EXPECT_EQ(r.at("causal-preventive").likelihood.direction(), CausalDirection::Preventive);
  for (const char* n : {"causal-generative", "causal-preventive", "causal-physical", "causal-medical", "causal-social",
                        "causal-psychic"}) {
    const auto& t = r.at(n);
    EXPECT_EQ(std::get<CausalPairsSeed>(t.seed_rule).pairs.size(), 4u);
    EXPECT_EQ(t.likelihood.n_c_plus, 16);
    EXPECT_EQ(t.likelihood.n_c_minus, 16);
  }
}

TEST(Registry, UnknownTask) { EXPECT_THROW(builtin_tasks().at("no-such-task"), InvalidArgument); }

TEST(RenderPrompt, Lifespan) {
  const auto& t = builtin_tasks().at("lifespan-male");
  const auto p = render_prompts(t, ProbeObservation{30});
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p[0][0].role, "system");
  EXPECT_EQ(p[0][0].content, "You are an expert at predicting future events.");
  EXPECT_EQ(user_text(p[0]),
            "If you were to evaluate the lifespan of a random 30-year-old man, what age would you predict he might "
            "reach? Please limit your answer to a single value without outputing anything else.");
}

TEST(RenderPrompt, Coin) {
  const auto& t = builtin_tasks().at("coin-flips");
  const auto p = render_prompts(t, CoinObservation{10, 7});
  EXPECT_NE(user_text(p[0]).find("Out of 10 coin flips, 7 resulted in heads and 3 in tails."), std::string::npos);
}

TEST(RenderPrompt, GeneProteinGenerative) {
  const auto& t = builtin_tasks().at("causal-generative");
  const auto p = render_prompts(t, CausalObservation{16, 16, 12, 4});
  ASSERT_EQ(p.size(), 2u);
  for (const auto& m : p) {
    EXPECT_NE(user_text(m).find("4 of 16 DNA fragments were turned on; within sample 2 that had been exposed to the "
                                "protein, 12 of 16 DNA fragments"),
              std::string::npos);
  }
  EXPECT_NE(user_text(p[0]).find("these fragments were not exposed to the protein"), std::string::npos);
  EXPECT_NE(user_text(p[1]).find("the gene is currently off"), std::string::npos);
  const auto q = render_prompts(builtin_tasks().at("causal-preventive"), CausalObservation{16, 16, 12, 4});
  EXPECT_NE(user_text(q[1]).find("turned off?"), std::string::npos);
}

TEST(RenderPrompt, CoverStoryTwoNumbers) {
  const auto& t = builtin_tasks().at("causal-psychic");
  EXPECT_EQ(t.response_schema, ResponseSchema::TwoNumbers);
  const auto p = render_prompts(t, CausalObservation{16, 16, 9, 3});
  ASSERT_EQ(p.size(), 1u);
  EXPECT_NE(user_text(p[0]).find("With 16 molecules when a particular psychic was simply standing next to the "
                                 "molecules, 3 of them emitted photons; with 16 molecules when psychic used his/her "
                                 "power, 9 of them emitted photons."),
            std::string::npos);
  EXPECT_TRUE(ends_with(user_text(p[0]), kTwoValueInstruction));
}

TEST(RenderPrompt, RealProbesUseOneDecimal) {
  const auto p = render_prompts(builtin_tasks().at("movie-grosses"), ProbeObservation{123.456});
  EXPECT_NE(user_text(p[0]).find("already earned 123.5 million dollars"), std::string::npos);
}

TEST(RenderPrompt, FuzzEveryTaskRendersItsOwnObservations) {
  RandomStream rng(2024);
  for (const auto& t : builtin_tasks().tasks()) {
    for (int i = 0; i < 1000; ++i) {
      const Observation d =
          i == 0 ? initial_observation(rng, t, 0) : sample_observation(rng, t.likelihood, seed_hypothesis(t, i));
      std::vector<MessageList> prompts;
      ASSERT_NO_THROW(prompts = render_prompts(t, d)) << t.name;
      for (const auto& m : prompts) {
        const std::string u = user_text(m);
        EXPECT_EQ(u.find('{'), std::string::npos) << t.name;
        EXPECT_TRUE(ends_with(u, kSingleValueInstruction) || ends_with(u, kTwoValueInstruction) ||
                    ends_with(u, kSingleNumberInstruction) || ends_with(u, kSingleYearInstruction))
            << t.name;
      }
    }
  }
}

TEST(FillTemplate, Errors) {
  EXPECT_EQ(fill_template("a {x} b", {{"x", "1"}}), "a 1 b");
  EXPECT_THROW(fill_template("a {x b", {{"x", "1"}}), TemplateError);
  EXPECT_THROW(fill_template("a {y} b", {{"x", "1"}}), TemplateError);
}

TEST(Validate, RejectsUnknownPlaceholder) {
  TaskSpec t = builtin_tasks().at("lifespan-male");
  t.user_templates = {"How old is a {age}-year-old?"};
  EXPECT_THROW(validate(t), TemplateError);
  t = builtin_tasks().at("lifespan-male");
  t.hypothesis_hi = 0.5;
  EXPECT_ANY_THROW(validate(t));
}

TEST(InitialObservation, LifespanProbeInBounds) {
  const auto& t = builtin_tasks().at("lifespan-male");
  RandomStream rng(1);
  for (int i = 0; i < 1000; ++i) {
    const double p = std::get<ProbeObservation>(initial_observation(rng, t, 0)).probe;
    EXPECT_GE(p, 1);
    EXPECT_LE(p, 150);
  }
}

TEST(InitialObservation, CausalSeedMean) {
  const auto& t = builtin_tasks().at("causal-generative");
  ASSERT_EQ(std::get<CausalHypothesis>(seed_hypothesis(t, 3)), (CausalHypothesis{0.7, 0.7}));
  RandomStream rng(2);
  double s = 0;
  constexpr int kDraws = 10000;
  for (int i = 0; i < kDraws; ++i) s += std::get<CausalObservation>(initial_observation(rng, t, 3)).k_plus;
  const double sigma = std::sqrt(16 * 0.91 * 0.09 / kDraws);
  EXPECT_NEAR(s / kDraws, 14.56, 3 * sigma);
}

TEST(InitialObservation, CoinSeedMean) {
  const auto& t = builtin_tasks().at("coin-flips");
  RandomStream rng(3);
  double s = 0;
  for (int i = 0; i < 10000; ++i) s += std::get<CoinObservation>(initial_observation(rng, t, 1)).k_heads;
  EXPECT_NEAR(s / 10000, 5.0, 0.05);
}

TEST(InitialObservation, SeedSlotsWrap) {
  const auto& t = builtin_tasks().at("causal-generative");
  EXPECT_EQ(seed_count(t), 4u);
  EXPECT_EQ(std::get<CausalHypothesis>(seed_hypothesis(t, 5)), std::get<CausalHypothesis>(seed_hypothesis(t, 1)));
  EXPECT_EQ(describe_seed(builtin_tasks().at("lifespan-male")), "t_max=150");
}

TEST(TaskConfig, ParsesCustomTask) {
  const std::string yaml = R"(tasks:
  - name: bus-wait
    title: Waiting for a bus
    system_prompt: You are an expert at predicting future events.
    user_templates: |
      You have waited {probe} minutes for a bus. How long will the total wait be? Please limit your answer to a single value without outputing anything else.
    likelihood:
      family: uniform-real
      lower: 0
    hypothesis_kind: scalar
    hypothesis_bounds: [0, 90]
    probe_decimals: 1
    seed:
      max_value: 90
)";
  const auto tasks = parse_task_config(yaml);
  ASSERT_EQ(tasks.size(), 1u);
  const auto& t = tasks[0];
  EXPECT_EQ(t.name, "bus-wait");
  EXPECT_EQ(t.hypothesis_hi, 90);
  EXPECT_EQ(t.response_hi, 90);
  EXPECT_EQ(t.likelihood.family, LikelihoodFamily::UniformReal);
  EXPECT_TRUE(ends_with(t.user_templates[0], "anything else."));
  const auto p = render_prompts(t, ProbeObservation{12.25});
  const std::string u = user_text(p[0]);
  EXPECT_TRUE(u.find("waited 12.2 minutes") != std::string::npos || u.find("waited 12.3 minutes") != std::string::npos);
}

TEST(TaskConfig, ErrorsCiteLine) {
  const std::string yaml = R"(tasks:
  - name: broken
    system_prompt: x
    user_templates: "{probe}"
    likelihood:
      family: not-a-family
    hypothesis_kind: scalar
    hypothesis_bounds: [0, 10]
    seed:
      max_value: 10
)";
  try {
    parse_task_config(yaml);
    FAIL() << "expected LoadError";
  } catch (const LoadError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_NE(std::string(e.what()).find("not-a-family"), std::string::npos);
  }
  EXPECT_THROW(parse_task_config("tasks: [\n"), LoadError);
  EXPECT_THROW(parse_task_config("other: 1\n"), LoadError);
}

TEST(TaskConfig, OverridesBuiltinByName) {
  const auto path = std::filesystem::temp_directory_path() / "ilprior_tasks_override.yaml";
  {
    std::ofstream out(path);
    out << R"(tasks:
  - name: lifespan-male
    system_prompt: Short system prompt.
    user_templates: ["A {probe}-year-old man. Please limit your answer to a single value without outputing anything else."]
    likelihood: {family: uniform-integer, lower: 1}
    hypothesis_kind: scalar
    hypothesis_bounds: [1, 120]
    seed: {max_value: 120}
)";
  }
  const auto r = make_registry(path);
  EXPECT_EQ(r.size(), 16u);
  EXPECT_EQ(r.at("lifespan-male").hypothesis_hi, 120);
  std::filesystem::remove(path);
}
