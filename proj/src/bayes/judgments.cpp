#include "ilprior/bayes/judgments.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "ilprior/errors.hpp"
#include "ilprior/report/report.hpp"

namespace ilprior {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    while (!field.empty() && (field.back() == ' ' || field.back() == '\r')) field.pop_back();
    while (!field.empty() && field.front() == ' ') field.erase(field.begin());
    out.push_back(field);
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

template <class T>
T number(const std::string& field, const char* name) {
  T value{};
  const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
    throw std::invalid_argument(std::string("bad ") + name + " '" + field + "'");
  }
  return value;
}

}  // namespace

std::vector<JudgmentItem> read_judgments(std::istream& in) {
  std::vector<JudgmentItem> items;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      header_seen = true;
      if (line.rfind("direction", 0) == 0) continue;
    }
    try {
      const auto f = split_csv(line);
      if (f.size() != 7) throw std::invalid_argument("expected 7 fields, got " + std::to_string(f.size()));
      JudgmentItem item;
      item.direction = parse_direction(f[0]);
      item.observation = CausalObservation{number<int>(f[1], "n_c_plus"), number<int>(f[2], "n_c_minus"),
                                           number<int>(f[3], "k_plus"), number<int>(f[4], "k_minus")};
      const auto& o = item.observation;
      if (o.n_c_plus < 0 || o.n_c_minus < 0 || o.k_plus < 0 || o.k_minus < 0 || o.k_plus > o.n_c_plus ||
          o.k_minus > o.n_c_minus) {
        throw std::invalid_argument("counts out of range");
      }
      const double w0 = number<double>(f[5], "judged_w0");
      const double w1 = number<double>(f[6], "judged_w1");
      if (!(w0 >= 0.0 && w0 <= 1.0 && w1 >= 0.0 && w1 <= 1.0)) throw std::invalid_argument("judgment outside [0, 1]");
      item.agent_judgment = CausalHypothesis{w0, w1};
      items.push_back(item);
    } catch (const std::exception& e) {
      throw LoadError("judgments line " + std::to_string(lineno) + ": " + e.what(), lineno);
    }
  }
  return items;
}

std::vector<JudgmentItem> read_judgments(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return read_judgments(in);
}

void write_judgments(std::ostream& out, const std::vector<JudgmentItem>& items) {
  out << kJudgmentsHeader << '\n';
  for (const auto& item : items) {
    if (!item.agent_judgment) continue;
    const auto& o = item.observation;
    out << to_string(item.direction) << ',' << o.n_c_plus << ',' << o.n_c_minus << ',' << o.k_plus << ','
        << o.k_minus << ',' << format_double(item.agent_judgment->w0) << ','
        << format_double(item.agent_judgment->w1) << '\n';
  }
}

void write_judgments(const std::filesystem::path& path, const std::vector<JudgmentItem>& items) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  write_judgments(out, items);
}

}  // namespace ilprior
