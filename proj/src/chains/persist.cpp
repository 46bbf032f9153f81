#include "ilprior/chains/persist.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

namespace ilprior {

using json = nlohmann::ordered_json;

namespace {

constexpr const char* kFormat = "ilprior-records";
constexpr int kVersion = 1;

json observation_json(const Observation& d) {
  return std::visit(
      [](const auto& o) -> json {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, CausalObservation>) {
          return {{"kind", "causal"},
                  {"n_c_plus", o.n_c_plus},
                  {"n_c_minus", o.n_c_minus},
                  {"k_plus", o.k_plus},
                  {"k_minus", o.k_minus}};
        } else if constexpr (std::is_same_v<T, CoinObservation>) {
          return {{"kind", "coin"}, {"n_flips", o.n_flips}, {"k_heads", o.k_heads}};
        } else {
          return {{"kind", "probe"}, {"probe", o.probe}};
        }
      },
      d);
}

Observation observation_from(const json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "causal") {
    return CausalObservation{j.at("n_c_plus").get<int>(), j.at("n_c_minus").get<int>(), j.at("k_plus").get<int>(),
                             j.at("k_minus").get<int>()};
  }
  if (kind == "coin") return CoinObservation{j.at("n_flips").get<int>(), j.at("k_heads").get<int>()};
  if (kind == "probe") return ProbeObservation{j.at("probe").get<double>()};
  throw std::invalid_argument("unknown observation kind '" + kind + "'");
}

json hypothesis_json(const std::optional<Hypothesis>& h) {
  if (!h) return nullptr;
  if (const auto* c = std::get_if<CausalHypothesis>(&*h)) return json::array({c->w0, c->w1});
  return std::get<double>(*h);
}

std::optional<Hypothesis> hypothesis_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  if (j.is_array()) {
    if (j.size() != 2) throw std::invalid_argument("causal hypothesis must be [w0, w1]");
    return Hypothesis{CausalHypothesis{j[0].get<double>(), j[1].get<double>()}};
  }
  return Hypothesis{j.get<double>()};
}

}  // namespace

void save_chain_set(std::ostream& out, const ChainSet& chains) {
  out << json{{"type", "header"}, {"format", kFormat}, {"version", kVersion}, {"task", chains.task}}.dump() << '\n';
  for (const auto& c : chains.chains) {
    json cj{{"type", "chain"},
            {"chain_id", c.chain_id},
            {"stream_seed", c.stream_seed},
            {"seed_index", c.seed_index},
            {"failed", c.failed}};
    if (c.failed) cj["failure"] = c.failure;
    out << cj.dump() << '\n';
    for (const auto& r : c.records) {
      json rj{{"type", "record"},
              {"chain_id", r.chain_id},
              {"iteration", r.iteration},
              {"stream_seed", r.stream_seed},
              {"seed_index", r.seed_index},
              {"observation", observation_json(r.observation)},
              {"hypothesis", hypothesis_json(r.hypothesis)},
              {"raw_text", r.raw_text},
              {"attempts", r.attempts}};
      if (r.timestamp) rj["timestamp"] = *r.timestamp;
      out << rj.dump() << '\n';
    }
  }
}

void save_chain_set(const std::filesystem::path& path, const ChainSet& chains) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  save_chain_set(out, chains);
  if (!out) throw Error("write failed: " + path.string());
}

ChainSet load_chain_set(std::istream& in) {
  ChainSet set;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      const json j = json::parse(line);
      const auto type = j.at("type").get<std::string>();
      if (!have_header) {
        if (type != "header" || j.at("format").get<std::string>() != kFormat) {
          throw std::invalid_argument("expected an ilprior-records header");
        }
        if (j.at("version").get<int>() > kVersion) throw std::invalid_argument("unsupported format version");
        set.task = j.at("task").get<std::string>();
        have_header = true;
      } else if (type == "chain") {
        Chain c;
        c.chain_id = j.at("chain_id").get<int>();
        c.stream_seed = j.at("stream_seed").get<std::uint64_t>();
        c.seed_index = j.at("seed_index").get<std::size_t>();
        c.failed = j.at("failed").get<bool>();
        if (c.failed) c.failure = j.value("failure", std::string());
        set.chains.push_back(std::move(c));
      } else if (type == "record") {
        if (set.chains.empty()) throw std::invalid_argument("record before any chain line");
        Chain& c = set.chains.back();
        ChainRecord r;
        r.chain_id = j.at("chain_id").get<int>();
        r.iteration = j.at("iteration").get<int>();
        if (r.chain_id != c.chain_id) throw std::invalid_argument("record belongs to a different chain");
        if (r.iteration != static_cast<int>(c.records.size())) throw std::invalid_argument("iterations out of order");
        r.stream_seed = j.at("stream_seed").get<std::uint64_t>();
        r.seed_index = j.at("seed_index").get<std::size_t>();
        r.observation = observation_from(j.at("observation"));
        r.hypothesis = hypothesis_from(j.at("hypothesis"));
        r.raw_text = j.at("raw_text").get<std::vector<std::string>>();
        r.attempts = j.at("attempts").get<int>();
        if (j.contains("timestamp")) r.timestamp = j.at("timestamp").get<std::string>();
        c.records.push_back(std::move(r));
      } else {
        throw std::invalid_argument("unknown line type '" + type + "'");
      }
    } catch (const std::exception& e) {
      throw LoadError("records line " + std::to_string(lineno) + ": " + e.what(), lineno);
    }
  }
  if (!have_header) throw LoadError("records file is empty", lineno == 0 ? 1 : lineno);
  return set;
}

ChainSet load_chain_set(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return load_chain_set(in);
}

}  // namespace ilprior
