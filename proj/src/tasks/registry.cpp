#include "ilprior/tasks/registry.hpp"

#include <algorithm>

#include "ilprior/errors.hpp"

namespace ilprior {

void TaskRegistry::add(TaskSpec spec) {
  validate(spec);
  auto it = std::find_if(tasks_.begin(), tasks_.end(), [&](const TaskSpec& t) { return t.name == spec.name; });
  if (it != tasks_.end()) {
    *it = std::move(spec);
  } else {
    tasks_.push_back(std::move(spec));
  }
}

const TaskSpec* TaskRegistry::find(const std::string& name) const noexcept {
  auto it = std::find_if(tasks_.begin(), tasks_.end(), [&](const TaskSpec& t) { return t.name == name; });
  return it == tasks_.end() ? nullptr : &*it;
}

const TaskSpec& TaskRegistry::at(const std::string& name) const {
  if (const TaskSpec* spec = find(name)) return *spec;
  throw InvalidArgument("unknown task '" + name + "'");
}

namespace {

// Counts in the causal prompts: {k_minus} of {n_c_minus} unexposed, {k_plus}
// of {n_c_plus} exposed.

const char* const kGeneSystem =
    "Please imagine that you are a researcher working for a bio-technology company and you are studying the "
    "relationship between genes and proteins concerning gene expression. This process may or may not be "
    "modulated by the presence of proteins. You will be given information about some past results involving "
    "this gene/protein pair and you will be asked to make some predictions based on these information. The "
    "past results consist of two samples: 1) a sample of DNA fragments that had not been exposed to the "
    "protein, and 2) a sample of DNA fragments that had been exposed to the protein. The number of DNA "
    "fragments that resulted in gene expression in each of these samples will be shown to you. Because there "
    "are many causes of gene expression, some background factors besides the presence or absence of the "
    "protein may play a role in whether the gene is expressed or not. Your job is to make predictions "
    "concerning the effect of these proteins on gene expression and answer the question based on this.";

const char* const kGeneContext =
    "Within sample 1 that had not been exposed to the protein, {k_minus} of {n_c_minus} DNA fragments were "
    "turned on; within sample 2 that had been exposed to the protein, {k_plus} of {n_c_plus} DNA fragments "
    "were turned on. ";

const char* const kGeneBackgroundQuestion =
    "Suppose that there is a sample of 100 DNA fragments and these fragments were not exposed to the protein, "
    "in how many of them would the gene be turned on? ";

const char* const kGeneGenerativeQuestion =
    "Suppose that there is a sample of 100 DNA fragments and that the gene is currently off in all those DNA "
    "fragments. If these 100 fragments were exposed to the protein, in how many of them would the gene be "
    "turned on? ";

const char* const kGenePreventiveQuestion =
    "Suppose that there is a sample of 100 DNA fragments and that the gene is currently on in all those DNA "
    "fragments. If these 100 fragments were exposed to the protein, in how many of them would the gene be "
    "turned off? ";

const char* const kPencilSystem =
    "Please imagine that you are working for a pencil company and you are studying the relationship between a "
    "material called 'super lead' and machines called 'super lead detectors'. Pencil lead is made of carbon. "
    "Your company recently discovered that a new production process was resulting in a new carbon structure in "
    "their pencils—what they call 'super lead'. Since they are not sure which pencils they previously "
    "manufactured contain super lead, they are building a set of machines in order to detect it. These "
    "machines are programmed with different parameters to detect different types of carbon structures. You "
    "will be testing machines that are set up with different parameters. There are a number of trials in this "
    "experiment. Each trial involves a different type of super lead, and a super lead detector programmed with "
    "a different parameter set. You will see some information about how often the machine indicates the "
    "presence of super lead with a set of pencils that do not contain super lead, and how often with a set of "
    "pencils that do contain a particular type of super lead. You will be then asked to make some predictions "
    "based on these pieces of information.";

const char* const kPencilUser =
    "With {n_c_minus} pencils that do not contain super lead, the super lead detector indicated that {k_minus} "
    "of them contain super lead; with {n_c_plus} pencils that contain super lead, the super lead detector "
    "indicated that {k_plus} of them contain super lead. Question: Suppose that there are 100 pencils that do "
    "not contain super lead, how many of them would be detected to contain super lead by the detector? And if "
    "there are 100 pencils that do contain super lead, how many of them would be detected to contain super "
    "lead by the detector? ";

const char* const kMedicalSystem =
    "Please imagine that you are a researcher working for a medical company and you are studying the "
    "relationship between some allergy medicines and hormonal imbalance as a side effect of these medicines. "
    "Your company recently discovered that a new production process was resulting in changes in the molecular "
    "structures in the allergy medicines, and these new medicines cause abnormal levels of hormones in people. "
    "Since they are not sure which medicines they previously manufactured might cause anomalies in which type "
    "of hormone, you are tasked with investigating this. There are a number of trials in this experiment and "
    "each trial involves a different type of medicine and a different hormone. You will see some information "
    "about how often people who don’t take the medicine have a particular kind of hormonal imbalance, and "
    "how often people who take that medicine have the same kind of hormonal imbalance. You will be then asked "
    "to make some predictions based on these pieces of information.";

const char* const kMedicalUser =
    "Within {n_c_minus} people who don’t take the medicine, {k_minus} of them have a particular kind of "
    "hormonal imbalance; within {n_c_plus} people who take the medicine, {k_plus} of them have a particular "
    "kind of hormonal imbalance. Question: Suppose that there are 100 people who don’t take the medicine, "
    "how many of them would have a particular kind of hormonal imbalance? And if there are 100 people who "
    "don't have a particular kind of hormonal imbalance currently and then take the medicine, how many of them "
    "would have a particular kind of hormonal imbalance after taking the medicine? ";

const char* const kSocialSystem =
    "Please imagine that you are an animal researcher and you are studying the relationship between music and "
    "the tail-wagging behavior of different dog breeds. You have found that some dogs would wag their tails "
    "after listening to some kinds of music. Since you are not sure what kind of music might cause which breed "
    "of dog to wag their tails, you have decided to investigate this. There are a number of trials in this "
    "experiment and each trial involves a different kind of music and a different breed of dogs. For each kind "
    "of music, you will see some information about how often dogs who were not played the music wagged their "
    "tails, and how often dogs who were played the music wagged their tails. You will be then asked to make "
    "some predictions based on these pieces of information.";

const char* const kSocialUser =
    "Within {n_c_minus} dogs who were not played the music, {k_minus} of them wagged their tails; within "
    "{n_c_plus} dogs who were played the music, {k_plus} of them wagged their tails. Question: Suppose that "
    "there are 100 dogs who are not played the music, how many of them would wag their tails? And if there are "
    "100 dogs who don't wag their tails currently, how many of them would wag their tails when they are played "
    "the music? ";

const char* const kPsychicSystem =
    "Please imagine that you are a physics researcher and you are studying the relationship between psychic "
    "power and the behavior of molecules. All molecules that you are currently investigating share a "
    "characteristic in that they all emit photons at random intervals, but at different rates. A number of "
    "psychics have claimed that they can make these molecules emit photons within a minute of when they use "
    "their power. You are tasked with investigating this. There are a number of trials in this study and each "
    "trial involves a different psychic and a different type of molecule. For each psychic, you will see some "
    "information about how many molecules have emitted photons when a particular psychic was simply standing "
    "next to the molecules, and how many of them have emitted photons following when psychic used his/her "
    "power. You will be then asked to make some predictions based on these pieces of information.";

const char* const kPsychicUser =
    "With {n_c_minus} molecules when a particular psychic was simply standing next to the molecules, {k_minus} "
    "of them emitted photons; with {n_c_plus} molecules when psychic used his/her power, {k_plus} of them "
    "emitted photons. Question: Suppose that there are 100 molecules when a particular psychic is simply "
    "standing next to the molecules, how many of them would emit photons? And if there are 100 molecules that "
    "don't emit photons currently, how many of them would emit photons when psychic uses his/her power? ";

const char* const kFutureEventsSystem = "You are an expert at predicting future events.";

std::string single(const std::string& body) { return body + kSingleValueInstruction; }

const std::vector<CausalHypothesis> kCausalSeeds = {{0.3, 0.3}, {0.3, 0.7}, {0.7, 0.3}, {0.7, 0.7}};

TaskSpec causal_task(std::string name, std::string title, CausalDirection dir, std::string system,
                     std::vector<std::string> templates, ResponseSchema schema) {
  TaskSpec t;
  t.name = std::move(name);
  t.title = std::move(title);
  t.system_prompt = std::move(system);
  t.user_templates = std::move(templates);
  t.response_schema = schema;
  t.response_scale = 0.01;
  t.response_lo = 0.0;
  t.response_hi = 100.0;
  t.likelihood.family = dir == CausalDirection::Generative ? LikelihoodFamily::NoisyOr : LikelihoodFamily::NoisyAndNot;
  t.likelihood.n_c_plus = 16;
  t.likelihood.n_c_minus = 16;
  t.seed_rule = CausalPairsSeed{kCausalSeeds};
  t.hypothesis_kind = HypothesisKind::CausalPair;
  t.hypothesis_lo = 0.0;
  t.hypothesis_hi = 1.0;
  return t;
}

TaskSpec cover_story(std::string name, std::string title, std::string system, const char* user) {
  return causal_task(std::move(name), std::move(title), CausalDirection::Generative, std::move(system),
                     {std::string(user) + kTwoValueInstruction}, ResponseSchema::TwoNumbers);
}

TaskSpec quantity_task(std::string name, std::string title, std::string system, std::string user,
                       LikelihoodFamily family, double lower, double t_max, int probe_decimals,
                       HypothesisKind kind = HypothesisKind::Scalar) {
  TaskSpec t;
  t.name = std::move(name);
  t.title = std::move(title);
  t.system_prompt = std::move(system);
  t.user_templates = {std::move(user)};
  t.response_schema = ResponseSchema::OneNumber;
  t.response_scale = 1.0;
  t.response_lo = lower;
  t.response_hi = t_max;
  t.likelihood.family = family;
  t.likelihood.lower = lower;
  t.seed_rule = MaxValueSeed{t_max};
  t.hypothesis_kind = kind;
  t.hypothesis_lo = lower;
  t.hypothesis_hi = t_max;
  t.probe_decimals = probe_decimals;
  return t;
}

TaskRegistry build_builtins() {
  TaskRegistry r;
  const std::string gene_context(kGeneContext);

  r.add(causal_task("causal-generative", "Generative causal strengths (genes/proteins)", CausalDirection::Generative,
                    kGeneSystem,
                    {single(gene_context + kGeneBackgroundQuestion), single(gene_context + kGeneGenerativeQuestion)},
                    ResponseSchema::OneNumber));
  r.add(causal_task("causal-preventive", "Preventive causal strengths (genes/proteins)", CausalDirection::Preventive,
                    kGeneSystem,
                    {single(gene_context + kGeneBackgroundQuestion), single(gene_context + kGenePreventiveQuestion)},
                    ResponseSchema::OneNumber));

  TaskSpec coin;
  coin.name = "coin-flips";
  coin.title = "Coin flips";
  coin.system_prompt =
      "Imagine that you are a participant in a psychology experiment. Your task is to evaluate the bias in a coin.";
  coin.user_templates = {single(
      "Here is a brief overview of the past coin flips: Out of {n_flips} coin flips, {n_heads} resulted in heads "
      "and {n_tails} in tails. With this information, please predict the number of heads in a larger set of 100 "
      "coin flips. ")};
  coin.response_schema = ResponseSchema::OneNumber;
  coin.response_scale = 0.01;
  coin.response_lo = 0.0;
  coin.response_hi = 100.0;
  coin.likelihood.family = LikelihoodFamily::Binomial;
  coin.likelihood.trials = 10;
  coin.seed_rule = HeadProbsSeed{{0.3, 0.5, 0.7}};
  coin.hypothesis_kind = HypothesisKind::Proportion;
  coin.hypothesis_lo = 0.0;
  coin.hypothesis_hi = 1.0;
  r.add(std::move(coin));

  r.add(quantity_task("lifespan-male", "Lifespan (male)", kFutureEventsSystem,
                      single("If you were to evaluate the lifespan of a random {probe}-year-old man, what age would "
                             "you predict he might reach? "),
                      LikelihoodFamily::UniformInteger, 1, 150, 0));
  r.add(quantity_task("movie-grosses", "Movie grosses", "You are an expert at forecasting movie revenue.",
                      single("Consider a movie that has already earned {probe} million dollars at the box office, "
                             "but you're unsure of how long it has been showing. Based on this information, what "
                             "would be your prediction of the movie's total earnings in million dollars by the end "
                             "of its run? "),
                      LikelihoodFamily::UniformReal, 0, 3000, 1));
  r.add(quantity_task("poem-lengths", "Length of poems", "You are an expert at predicting length of poems.",
                      single("Imagine your friend shares her favorite line of poetry with you, which is line {probe} "
                             "from the poem. How many lines do you think the entire poem contains? "),
                      LikelihoodFamily::UniformInteger, 1, 200, 0));
  r.add(quantity_task("pharaoh-reigns", "Reign of Pharaohs", "You are an expert at estimating how long Egyptian pharaohs ruled.",
                      single("If you found information in a book on ancient Egypt stating that a pharaoh had already "
                             "been in power for {probe} years, how long in years do you think his reign lasted? "),
                      LikelihoodFamily::UniformInteger, 0, 100, 0));
  r.add(quantity_task("movie-runtimes", "Movie run times", "You are an expert at predicting the total run times of movies.",
                      single("During a surprise visit to a friend's house, you discover they've been watching a movie "
                             "for {probe} minutes. Based on this, how long do you think the movie will be in total, "
                             "in minutes? "),
                      LikelihoodFamily::UniformReal, 0, 800, 1));
  r.add(quantity_task("cake-baking", "Cake baking times", kFutureEventsSystem,
                      std::string("Imagine you are in somebody’s kitchen and notice that a cake is in the oven. The "
                                  "timer shows that it has been baking for {probe} minutes. How long do you expect the "
                                  "total amount of time to be that the cake needs to bake? ") +
                          kSingleNumberInstruction,
                      LikelihoodFamily::UniformReal, 0, 120, 1));

  r.add(cover_story("causal-physical", "Generative causal strengths (pencils / super lead detectors)", kPencilSystem,
                    kPencilUser));
  r.add(cover_story("causal-medical", "Generative causal strengths (allergy medicines / hormones)", kMedicalSystem,
                    kMedicalUser));
  r.add(cover_story("causal-social", "Generative causal strengths (music / dog tail-wagging)", kSocialSystem,
                    kSocialUser));
  r.add(cover_story("causal-psychic", "Generative causal strengths (psychics / photon emission)", kPsychicSystem,
                    kPsychicUser));

  r.add(quantity_task("superhuman-ai", "Superhuman AI", kFutureEventsSystem,
                      std::string("If artificial intelligence reaches human-level intelligence by {probe}, when might "
                                  "it surpass human capabilities in all areas? ") +
                          kSingleYearInstruction,
                      LikelihoodFamily::UniformInteger, 2024, 2200, 0, HypothesisKind::Year));
  r.add(quantity_task("zero-carbon", "Zero carbon emission", kFutureEventsSystem,
                      std::string("If humans manage to achieve 100% renewable energy sources by {probe}, when might "
                                  "global carbon emissions reach zero? ") +
                          kSingleYearInstruction,
                      LikelihoodFamily::UniformInteger, 2024, 2200, 0, HypothesisKind::Year));
  r.add(quantity_task("mars-colony", "Mars colony", kFutureEventsSystem,
                      std::string("If humans were able to colonize the Moon by {probe}, when might they colonize Mars? ") +
                          kSingleYearInstruction,
                      LikelihoodFamily::UniformInteger, 2024, 2200, 0, HypothesisKind::Year));
  return r;
}

}  // namespace

const TaskRegistry& builtin_tasks() {
  static const TaskRegistry registry = build_builtins();
  return registry;
}

TaskRegistry make_registry(const std::filesystem::path& config) {
  TaskRegistry r = builtin_tasks();
  if (!config.empty()) {
    for (auto& spec : load_task_config(config)) r.add(std::move(spec));
  }
  return r;
}

}  // namespace ilprior
