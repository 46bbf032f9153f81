#include "ilprior/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <thread>
#include <unistd.h>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ilprior/agents/llm_agent.hpp"
#include "ilprior/agents/simulated.hpp"
#include "ilprior/bayes/bayes.hpp"
#include "ilprior/bayes/judgments.hpp"
#include "ilprior/chains/convergence.hpp"
#include "ilprior/chains/persist.hpp"
#include "ilprior/numerics/stats.hpp"
#include "ilprior/report/report.hpp"
#include "ilprior/tasks/registry.hpp"

namespace ilprior::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

struct LlmOptions {
  LlmAgentSpec spec;
  double timeout_s = 60.0;
  double initial_delay_s = 0.5;
  double max_delay_s = 30.0;
  bool log_requests = false;

  LlmAgentSpec resolve(const fs::path& run_dir) const {
    LlmAgentSpec s = spec;
    s.timeout = std::chrono::milliseconds(static_cast<long long>(timeout_s * 1000));
    s.retry.initial_delay = std::chrono::milliseconds(static_cast<long long>(initial_delay_s * 1000));
    s.retry.max_delay = std::chrono::milliseconds(static_cast<long long>(max_delay_s * 1000));
    if (log_requests) s.log_dir = run_dir;
    return s;
  }
};

void add_llm_options(CLI::App* cmd, LlmOptions& o) {
  cmd->add_option("--endpoint", o.spec.endpoint, "Chat-completions URL")->capture_default_str();
  cmd->add_option("--model", o.spec.model, "Model identifier")->capture_default_str();
  cmd->add_option("--temperature", o.spec.temperature, "Sampling temperature")->capture_default_str()->check(
      CLI::NonNegativeNumber);
  cmd->add_option("--timeout", o.timeout_s, "Request timeout in seconds")->capture_default_str()->check(
      CLI::PositiveNumber);
  cmd->add_option("--max-retries", o.spec.retry.max_retries, "HTTP retries per request")->capture_default_str()->check(
      CLI::NonNegativeNumber);
  cmd->add_option("--retry-delay", o.initial_delay_s, "First backoff delay in seconds")->capture_default_str();
  cmd->add_option("--retry-max-delay", o.max_delay_s, "Backoff ceiling in seconds")->capture_default_str();
  cmd->add_option("--parse-retries", o.spec.parse_retries, "Re-asks per question for unusable answers")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--max-concurrent", o.spec.max_concurrent, "Concurrent requests")->capture_default_str()->check(
      CLI::Range(1, 4096));
  cmd->add_option("--api-key-env", o.spec.credential_env, "Environment variable holding the API key")
      ->capture_default_str();
  cmd->add_flag("--log-requests", o.log_requests, "Append every request and reply to <out>/requests.jsonl");
}

std::string utc_compact() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y%m%dT%H%M%SZ", &tm);
  return buf;
}

void write_json(const fs::path& path, const json& doc) { write_text_file(path, doc.dump(2) + "\n"); }

TaskRegistry load_registry(const std::string& tasks_file) {
  return make_registry(tasks_file.empty() ? fs::path() : fs::path(tasks_file));
}

const TaskSpec& lookup_task(const TaskRegistry& registry, const std::string& name) {
  if (const TaskSpec* t = registry.find(name)) return *t;
  throw UsageError("unknown task '" + name + "' (see 'ilprior tasks list')");
}

/// uniform | beta:a,b | sparse-strong[:alpha] | file:path
PriorDensity parse_prior_option(const std::string& text, const TaskSpec& task) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (kind == "uniform") {
    if (task.is_causal()) return DensityGrid2D::uniform();
    return Density1D::uniform(task.hypothesis_lo, task.hypothesis_hi);
  }
  if (kind == "beta") {
    if (task.is_causal()) throw UsageError("beta priors apply to scalar tasks only");
    double a = 0, b = 0;
    char comma = 0;
    std::istringstream ss(arg);
    if (!(ss >> a >> comma >> b) || comma != ',' || a <= 0 || b <= 0) throw UsageError("--prior beta:a,b needs a, b > 0");
    return Density1D::beta(a, b, task.hypothesis_lo, task.hypothesis_hi);
  }
  if (kind == "sparse-strong") {
    if (!task.is_causal()) throw UsageError("sparse-strong priors apply to causal tasks only");
    double alpha = 5.0;
    if (!arg.empty()) {
      try {
        alpha = std::stod(arg);
      } catch (const std::exception&) {
        throw UsageError("bad alpha in --prior " + text);
      }
    }
    return prior_grid(SparseStrongPrior{alpha, task.likelihood.direction()});
  }
  if (kind == "file") {
    if (arg.empty()) throw UsageError("--prior file: needs a path");
    if (task.is_causal()) return read_grid_csv(arg);
    return read_density_csv(arg);
  }
  throw UsageError("unknown prior '" + text + "' (uniform, beta:a,b, sparse-strong[:alpha], file:path)");
}

json convergence_json(const ConvergenceReport& r) {
  json j;
  j["alpha"] = r.alpha;
  j["final_iteration"] = r.final_iteration;
  j["p_values"] = r.p_values;
  j["first_converged_iteration"] = r.first_converged_iteration ? json(*r.first_converged_iteration) : json(nullptr);
  j["chains_used"] = r.chains_used;
  j["chains_failed"] = r.chains_failed;
  j["warning"] = r.warning ? json(*r.warning) : json(nullptr);
  return j;
}

double quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

json sample_summary(const std::vector<double>& xs) {
  json j;
  j["n"] = xs.size();
  j["median"] = median(xs);
  j["mean"] = mean(xs);
  json q;
  for (double p : {0.05, 0.25, 0.75, 0.95}) {
    std::ostringstream key;
    key << p;
    q[key.str()] = quantile(xs, p);
  }
  j["quantiles"] = q;
  return j;
}

// ---------------------------------------------------------------- tasks

int cmd_tasks_list(const std::string& tasks_file, std::ostream& out) {
  const TaskRegistry registry = load_registry(tasks_file);
  std::vector<std::array<std::string, 5>> rows;
  rows.push_back({"NAME", "KIND", "LIKELIHOOD", "SEED", "BOUNDS"});
  for (const auto& t : registry.tasks()) {
    std::ostringstream bounds;
    bounds << '[' << t.hypothesis_lo << ", " << t.hypothesis_hi << ']';
    rows.push_back({t.name, to_string(t.hypothesis_kind), t.likelihood.describe(), describe_seed(t), bounds.str()});
  }
  std::array<std::size_t, 5> width{};
  for (const auto& r : rows)
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.size(); ++c) {
      out << r[c];
      if (c + 1 < r.size()) out << std::string(width[c] - r[c].size() + 2, ' ');
    }
    out << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------- run

struct RunOptions {
  std::string task;
  std::string agent = "sim";
  int chains = 100;
  int iters = 12;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::size_t parallel = 0;
  std::string tasks_file;
  std::string prior = "uniform";
  double alpha = 0.05;
  LlmOptions llm;
};

int cmd_run(const RunOptions& o, std::ostream& out, std::ostream& err) {
  const TaskRegistry registry = load_registry(o.tasks_file);
  const TaskSpec& task = lookup_task(registry, o.task);

  const std::uint64_t seed = o.seed ? *o.seed : std::random_device{}() * 0x100000000ULL + std::random_device{}();
  const fs::path dir = o.out_dir.empty() ? fs::path("runs") / (utc_compact() + "-seed" + std::to_string(seed))
                                         : fs::path(o.out_dir);

  std::unique_ptr<Agent> agent;
  json agent_doc;
  if (o.agent == "sim") {
    agent = std::make_unique<SimulatedAgent>(SimulatedAgent::for_task(task, parse_prior_option(o.prior, task)));
    agent_doc = {{"kind", "sim"}, {"prior", o.prior}};
  } else if (o.agent == "llm") {
    const LlmAgentSpec spec = o.llm.resolve(dir);
    auto client = ChatClient::from_environment(spec);  // fails before any request without a key
    agent = std::make_unique<LlmAgent>(client, spec.parse_retries);
    agent_doc = {{"kind", "llm"},
                 {"endpoint", spec.endpoint},
                 {"model", spec.model},
                 {"temperature", spec.temperature},
                 {"max_retries", spec.retry.max_retries},
                 {"parse_retries", spec.parse_retries},
                 {"max_concurrent", spec.max_concurrent},
                 {"credential_env", spec.credential_env}};
  } else {
    throw UsageError("--agent must be sim or llm");
  }

  fs::create_directories(dir);
  json manifest;
  manifest["tool"] = "ilprior";
  manifest["version"] = ILPRIOR_VERSION;
  manifest["command"] = "run";
  manifest["task"] = task.name;
  manifest["tasks_file"] = o.tasks_file.empty() ? json(nullptr) : json(fs::absolute(o.tasks_file).string());
  manifest["agent"] = agent_doc;
  manifest["chains"] = o.chains;
  manifest["iterations"] = o.iters;
  manifest["seed"] = seed;
  manifest["parallel"] = o.parallel;
  manifest["alpha"] = o.alpha;
  manifest["artifacts"] = {{"records", "records.jsonl"}, {"convergence", "convergence.json"}};
  manifest["started_at"] = utc_timestamp();
  manifest["finished_at"] = nullptr;
  manifest["status"] = "running";
  write_json(dir / "manifest.json", manifest);

  EnsembleConfig cfg;
  cfg.n_chains = o.chains;
  cfg.n_iterations = o.iters;
  cfg.base_seed = seed;
  cfg.parallel = o.parallel;
  if (isatty(STDERR_FILENO)) {
    cfg.on_chain_done = [&err](std::size_t done, std::size_t total) {
      err << "\rchains " << done << '/' << total << (done == total ? "\n" : "") << std::flush;
    };
  }

  ChainSet set;
  int status = kExitOk;
  try {
    set = run_ensemble(cfg, task, *agent);
  } catch (const EnsembleFailure& e) {
    set = e.partial();
    err << "error: " << e.what() << '\n';
    status = kExitRuntime;
  }
  save_chain_set(dir / "records.jsonl", set);

  std::optional<ConvergenceReport> report;
  if (status == kExitOk && o.iters >= 2) {
    report = detect_convergence(set, o.alpha);
    write_json(dir / "convergence.json", convergence_json(*report));
  } else {
    manifest["artifacts"].erase("convergence");
  }

  manifest["finished_at"] = utc_timestamp();
  manifest["status"] = status == kExitOk ? "ok" : "failed";
  manifest["failed_chains"] = set.failed_count();
  write_json(dir / "manifest.json", manifest);

  out << "task " << task.name << ": " << set.chains.size() << " chains x " << o.iters << " iterations, "
      << set.failed_count() << " failed\n";
  if (report) {
    out << "convergence: ";
    if (report->first_converged_iteration) {
      out << "iteration " << *report->first_converged_iteration;
    } else {
      out << "not detected";
    }
    out << " (alpha " << report->alpha << ")\n";
    if (report->warning) out << "warning: " << *report->warning << '\n';
  }
  for (const auto& c : set.chains)
    if (c.failed) err << "chain " << c.chain_id << " failed: " << c.failure << '\n';
  out << "run directory: " << dir.string() << '\n';
  return status;
}

// ---------------------------------------------------------------- prior

struct PriorOptions {
  std::string in_dir;
  std::optional<int> iteration;
  std::string out_dir;
  std::optional<double> bandwidth;
  std::string tasks_file;
};

int cmd_prior(const PriorOptions& o, std::ostream& out) {
  const fs::path records = fs::path(o.in_dir) / "records.jsonl";
  if (!fs::exists(records)) throw Error("no records at " + records.string());
  const ChainSet set = load_chain_set(records);
  std::string tasks_file = o.tasks_file;
  if (tasks_file.empty() && fs::exists(fs::path(o.in_dir) / "manifest.json")) {
    std::ifstream in(fs::path(o.in_dir) / "manifest.json");
    const json m = json::parse(in, nullptr, false);
    if (m.is_object() && m.contains("tasks_file") && m["tasks_file"].is_string()) tasks_file = m["tasks_file"];
  }
  const TaskRegistry registry = load_registry(tasks_file);
  const TaskSpec& task = lookup_task(registry, set.task);
  const int final = final_iteration(set);
  const int it = o.iteration.value_or(final);
  if (it < 1 || it > final) throw UsageError("--iteration must be in [1, " + std::to_string(final) + "]");

  const fs::path dir = o.out_dir.empty() ? fs::path(o.in_dir + "-prior") : fs::path(o.out_dir);
  fs::create_directories(dir);
  const PriorDensity prior = empirical_prior(set, task, it, o.bandwidth);
  const auto hs = hypotheses_at(set, it);

  json summary;
  summary["task"] = task.name;
  summary["iteration"] = it;
  summary["chains_used"] = hs.size();
  summary["chains_failed"] = set.failed_count();
  std::ostringstream csv;
  if (const auto* d = std::get_if<Density1D>(&prior)) {
    std::vector<double> xs;
    for (const auto& h : hs) xs.push_back(std::get<double>(h));
    summary["hypothesis"] = sample_summary(xs);
    summary["density_mean"] = d->mean();
    write_density_csv(csv, *d);
    write_text_file(dir / "prior.svg", svg_histogram(*d, xs, task.title + " (iteration " + std::to_string(it) + ")",
                                                     "hypothesis"));
    out << "median " << format_double(median(xs)) << ", mean " << format_double(mean(xs)) << " over " << xs.size()
        << " chains\n";
  } else {
    const auto& g = std::get<DensityGrid2D>(prior);
    std::vector<double> w0, w1;
    for (const auto& h : hs) {
      w0.push_back(std::get<CausalHypothesis>(h).w0);
      w1.push_back(std::get<CausalHypothesis>(h).w1);
    }
    summary["w0"] = sample_summary(w0);
    summary["w1"] = sample_summary(w1);
    const auto m = posterior_mean(g);
    summary["density_mean"] = json::array({m.w0, m.w1});
    write_grid_csv(csv, g);
    write_text_file(dir / "prior.svg", svg_heatmap(g, task.title + " (iteration " + std::to_string(it) + ")"));
    out << "w0 median " << format_double(median(w0)) << ", w1 median " << format_double(median(w1)) << " over "
        << w0.size() << " chains\n";
  }
  write_text_file(dir / "prior.csv", csv.str());
  write_json(dir / "summary.json", summary);
  out << "wrote " << (dir / "prior.csv").string() << ", prior.svg, summary.json\n";
  return kExitOk;
}

// ---------------------------------------------------------------- fit

struct FitOptions {
  std::string judgments;
  std::vector<std::string> priors;
  std::string direction = "both";
  double alpha = 5.0;
  std::size_t bins = 13;
  std::string out_dir;
};

DensityGrid2D empirical_grid(const std::string& path) {
  const fs::path p(path);
  if (fs::is_directory(p)) {
    const ChainSet set = load_chain_set(p / "records.jsonl");
    const TaskSpec& task = lookup_task(builtin_tasks(), set.task);
    if (!task.is_causal()) throw UsageError("empirical prior run is not a causal task");
    return std::get<DensityGrid2D>(empirical_prior(set, task, final_iteration(set)));
  }
  return read_grid_csv(p);
}

int cmd_fit(const FitOptions& o, std::ostream& out) {
  const auto all = read_judgments(o.judgments);
  std::vector<CausalDirection> dirs;
  if (o.direction == "both") {
    for (auto d : {CausalDirection::Generative, CausalDirection::Preventive})
      if (std::any_of(all.begin(), all.end(), [d](const JudgmentItem& i) { return i.direction == d; }))
        dirs.push_back(d);
  } else {
    try {
      dirs.push_back(parse_direction(o.direction));
    } catch (const InvalidArgument& e) {
      throw UsageError(e.what());
    }
  }
  const std::vector<std::string> priors = o.priors.empty() ? std::vector<std::string>{"uniform", "sparse-strong"}
                                                           : o.priors;
  if (!o.out_dir.empty()) fs::create_directories(o.out_dir);

  json results = json::array();
  out << "direction   prior           pearson_r   rmsd        n\n";
  for (const auto dir : dirs) {
    std::vector<JudgmentItem> items;
    for (const auto& i : all)
      if (i.direction == dir) items.push_back(i);
    if (items.size() < 2) throw Error(std::string("fewer than 2 ") + to_string(dir) + " judgments");
    for (const auto& p : priors) {
      DensityGrid2D grid = DensityGrid2D::uniform();
      std::string label = p;
      if (p == "uniform") {
      } else if (p == "sparse-strong") {
        grid = prior_grid(SparseStrongPrior{o.alpha, dir});
      } else if (p.rfind("empirical:", 0) == 0) {
        grid = empirical_grid(p.substr(10));
        label = "empirical";
      } else {
        throw UsageError("unknown --prior '" + p + "' (uniform, sparse-strong, empirical:<path>)");
      }
      auto scored = items;
      predict(grid, scored);
      const FitMetrics m = fit_metrics(scored);
      char row[160];
      std::snprintf(row, sizeof row, "%-12s%-16s%-12.4f%-12.4f%zu\n", to_string(dir), label.c_str(), m.pearson, m.rmsd,
                    m.n / 2);
      out << row;
      json r;
      r["direction"] = to_string(dir);
      r["prior"] = p;
      if (p == "sparse-strong") r["alpha"] = o.alpha;
      r["pearson_r"] = m.pearson;
      r["rmsd"] = m.rmsd;
      r["items"] = m.n / 2;
      if (!o.out_dir.empty() && o.bins > 0) {
        std::vector<double> x, y;
        for (const auto& s : scored) {
          x.push_back(s.model_prediction->w0);
          y.push_back(s.agent_judgment->w0);
          x.push_back(s.model_prediction->w1);
          y.push_back(s.agent_judgment->w1);
        }
        std::ostringstream csv;
        csv << "x_lo,x_hi,count,x_mean,y_mean,y_se\n";
        for (const auto& b : window_bin(x, y, o.bins)) {
          csv << format_double(b.x_lo) << ',' << format_double(b.x_hi) << ',' << b.count << ',';
          if (b.count) csv << format_double(b.x_mean) << ',' << format_double(b.y_mean) << ',' << format_double(b.y_se);
          else csv << ",,";
          csv << '\n';
        }
        const std::string name = "binned-" + std::string(to_string(dir)) + "-" + label + ".csv";
        write_text_file(fs::path(o.out_dir) / name, csv.str());
        r["binned"] = name;
      }
      results.push_back(r);
    }
  }
  if (!o.out_dir.empty()) write_json(fs::path(o.out_dir) / "fit.json", results);
  return kExitOk;
}

// ---------------------------------------------------------------- judge

struct JudgeOptions {
  std::string agent = "sim";
  std::string prior = "sparse-strong";
  std::string direction = "both";
  std::size_t limit = 0;
  std::uint64_t seed = 0;
  std::string out_file;
  std::size_t parallel = 0;
  LlmOptions llm;
};

std::vector<JudgmentItem> subsample(std::vector<JudgmentItem> items, std::size_t limit) {
  if (limit == 0 || limit >= items.size()) return items;
  std::vector<JudgmentItem> out;
  for (std::size_t i = 0; i < limit; ++i) out.push_back(items[i * items.size() / limit]);
  return out;
}

int cmd_judge(const JudgeOptions& o, std::ostream& out, std::ostream& err) {
  std::vector<CausalDirection> dirs;
  if (o.direction == "both") {
    dirs = {CausalDirection::Generative, CausalDirection::Preventive};
  } else {
    try {
      dirs.push_back(parse_direction(o.direction));
    } catch (const InvalidArgument& e) {
      throw UsageError(e.what());
    }
  }
  std::shared_ptr<ChatClient> client;
  LlmAgentSpec llm_spec;
  if (o.agent == "llm") {
    llm_spec = o.llm.resolve(o.llm.log_requests ? fs::path(o.out_file).parent_path() : fs::path());
    client = ChatClient::from_environment(llm_spec);
  } else if (o.agent != "sim") {
    throw UsageError("--agent must be sim or llm");
  }

  std::vector<JudgmentItem> items;
  std::size_t failures = 0;
  std::uint64_t item_id = 0;
  for (const auto dir : dirs) {
    const TaskSpec& task =
        builtin_tasks().at(dir == CausalDirection::Generative ? "causal-generative" : "causal-preventive");
    std::unique_ptr<Agent> agent;
    if (client) {
      agent = std::make_unique<LlmAgent>(client, llm_spec.parse_retries);
    } else {
      agent = std::make_unique<SimulatedAgent>(SimulatedAgent::for_task(task, parse_prior_option(o.prior, task)));
    }
    auto batch = subsample(generate_judgment_items(dir), o.limit);
    std::vector<std::optional<std::string>> errors(batch.size());
    const std::uint64_t first_id = item_id;
    item_id += batch.size();

    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (std::size_t i = next++; i < batch.size(); i = next++) {
        RandomStream rng(RandomStream::derive_seed(o.seed, first_id + i));
        try {
          const AgentResponse r = agent->respond(task, batch[i].observation, rng);
          batch[i].agent_judgment = std::get<CausalHypothesis>(r.hypothesis);
        } catch (const AgentFailure& e) {
          errors[i] = e.what();
        }
      }
    };
    std::size_t workers = o.parallel ? o.parallel : std::max(1u, std::thread::hardware_concurrency());
    workers = std::max<std::size_t>(1, std::min({workers, agent->max_concurrency(), batch.size()}));
    {
      std::vector<std::jthread> pool;
      for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
      work();
    }
    for (std::size_t i = 0; i < batch.size(); ++i) {
      if (!errors[i]) continue;
      ++failures;
      const auto& d = batch[i].observation;
      err << "item " << to_string(dir) << " (" << d.n_c_plus << ',' << d.n_c_minus << ',' << d.k_plus << ','
          << d.k_minus << ") failed: " << *errors[i] << '\n';
    }
    items.insert(items.end(), batch.begin(), batch.end());
  }
  const fs::path path(o.out_file);
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  write_judgments(path, items);
  out << "wrote " << items.size() - failures << " judgments to " << path.string();
  if (failures) out << " (" << failures << " items failed)";
  out << '\n';
  return failures == items.size() ? kExitRuntime : kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Elicit priors by iterated in-context learning", "ilprior"};
  app.set_version_flag("--version", ILPRIOR_VERSION);
  app.set_config("--config", "", "Read options from a TOML/INI file ([run], [fit], ... sections)");
  app.require_subcommand(1);

  std::string tasks_file;
  auto* tasks = app.add_subcommand("tasks", "Task registry");
  auto* tasks_list = tasks->add_subcommand("list", "List the available tasks");
  tasks_list->add_option("--tasks-file", tasks_file, "YAML file with extra tasks");
  tasks->require_subcommand(1);

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "Run an ensemble of iterated-learning chains");
  run_cmd->add_option("--task", run.task, "Task name")->required();
  run_cmd->add_option("--agent", run.agent, "sim or llm")->capture_default_str()->check(CLI::IsMember({"sim", "llm"}));
  run_cmd->add_option("--chains", run.chains, "Number of chains")->capture_default_str()->check(CLI::PositiveNumber);
  run_cmd->add_option("--iters", run.iters, "Iterations per chain")->capture_default_str()->check(CLI::PositiveNumber);
  run_cmd->add_option("--seed", run.seed, "Base seed (random when omitted; recorded in the manifest)");
  run_cmd->add_option("--out", run.out_dir, "Run directory (default runs/<timestamp>-seed<seed>)");
  run_cmd->add_option("--parallel", run.parallel, "Worker threads (default: processors)");
  run_cmd->add_option("--tasks-file", run.tasks_file, "YAML file with extra or overriding tasks");
  run_cmd->add_option("--prior", run.prior, "Simulated agent prior: uniform, beta:a,b, sparse-strong[:alpha], file:path")
      ->capture_default_str();
  run_cmd->add_option("--alpha", run.alpha, "Convergence test level")->capture_default_str();
  add_llm_options(run_cmd, run.llm);

  PriorOptions prior;
  auto* prior_cmd = app.add_subcommand("prior", "Estimate the empirical prior of a run");
  prior_cmd->add_option("--in", prior.in_dir, "Run directory")->required();
  prior_cmd->add_option("--iteration", prior.iteration, "Iteration to use (default: last)");
  prior_cmd->add_option("--out", prior.out_dir, "Output directory (default <in>-prior)");
  prior_cmd->add_option("--bandwidth", prior.bandwidth, "KDE bandwidth (default: Silverman)")->check(
      CLI::PositiveNumber);
  prior_cmd->add_option("--tasks-file", prior.tasks_file, "YAML file the run's task came from");

  FitOptions fit;
  auto* fit_cmd = app.add_subcommand("fit", "Score Bayesian causal models against judgments");
  fit_cmd->add_option("--judgments", fit.judgments, "Judgments CSV")->required();
  fit_cmd->add_option("--prior", fit.priors, "uniform, sparse-strong or empirical:<run dir or grid csv>; repeatable");
  fit_cmd->add_option("--direction", fit.direction, "generative, preventive or both")->capture_default_str();
  fit_cmd->add_option("--alpha", fit.alpha, "Sparse-strong alpha")->capture_default_str()->check(
      CLI::NonNegativeNumber);
  fit_cmd->add_option("--bins", fit.bins, "Windows for the binned comparison (0: none)")->capture_default_str();
  fit_cmd->add_option("--out", fit.out_dir, "Directory for fit.json and binned CSVs");

  JudgeOptions judge;
  auto* judge_cmd = app.add_subcommand("judge", "Collect causal judgments for the standard item set");
  judge_cmd->add_option("--agent", judge.agent, "sim or llm")->capture_default_str()->check(
      CLI::IsMember({"sim", "llm"}));
  judge_cmd->add_option("--prior", judge.prior, "Simulated agent prior")->capture_default_str();
  judge_cmd->add_option("--direction", judge.direction, "generative, preventive or both")->capture_default_str();
  judge_cmd->add_option("--limit", judge.limit, "Items per direction, evenly spaced (0: all 729)");
  judge_cmd->add_option("--seed", judge.seed, "Seed")->capture_default_str();
  judge_cmd->add_option("--out", judge.out_file, "Judgments CSV to write")->required();
  judge_cmd->add_option("--parallel", judge.parallel, "Worker threads");
  add_llm_options(judge_cmd, judge.llm);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << ILPRIOR_VERSION << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (tasks_list->parsed()) return cmd_tasks_list(tasks_file, out);
    if (run_cmd->parsed()) return cmd_run(run, out, err);
    if (prior_cmd->parsed()) return cmd_prior(prior, out);
    if (fit_cmd->parsed()) return cmd_fit(fit, out);
    if (judge_cmd->parsed()) return cmd_judge(judge, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace ilprior::cli
