#include "ilprior/agents/parse.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>

#include "ilprior/errors.hpp"

namespace ilprior {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }
bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

struct Token {
  double value = 0.0;
  std::size_t begin = 0;
  std::size_t end = 0;  // one past the last character consumed
};

// Reads a number starting at pos (which must be a sign, digit or '.').
std::optional<Token> read_number(std::string_view s, std::size_t pos, bool allow_grouping) {
  Token tok;
  tok.begin = pos;
  std::string buf;
  std::size_t i = pos;
  if (s[i] == '-' || s[i] == '+') {
    if (s[i] == '-') buf.push_back('-');
    ++i;
  }
  const std::size_t int_start = i;
  while (i < s.size() && is_digit(s[i])) buf.push_back(s[i++]);
  std::size_t int_digits = i - int_start;

  if (allow_grouping && int_digits >= 1 && int_digits <= 3) {
    // 1,234,567: groups of exactly three digits after each comma.
    std::size_t j = i;
    std::string grouped;
    while (j + 3 < s.size() && s[j] == ',' && is_digit(s[j + 1]) && is_digit(s[j + 2]) && is_digit(s[j + 3]) &&
           (j + 4 >= s.size() || !is_digit(s[j + 4]))) {
      grouped.append(s.substr(j + 1, 3));
      j += 4;
    }
    if (!grouped.empty()) {
      buf += grouped;
      int_digits += grouped.size();
      i = j;
    }
  }

  std::size_t frac_digits = 0;
  if (i < s.size() && s[i] == '.' && i + 1 < s.size() && is_digit(s[i + 1])) {
    buf.push_back('.');
    ++i;
    while (i < s.size() && is_digit(s[i])) {
      buf.push_back(s[i++]);
      ++frac_digits;
    }
  }
  if (int_digits == 0 && frac_digits == 0) return std::nullopt;
  if (int_digits == 0) buf.insert(buf.size() - frac_digits - 1, "0");

  // Exponent, only when followed by digits and not part of a word ("3e5" yes, "5em" no).
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    std::size_t j = i + 1;
    if (j < s.size() && (s[j] == '+' || s[j] == '-')) ++j;
    const std::size_t exp_start = j;
    while (j < s.size() && is_digit(s[j])) ++j;
    const bool word = j < s.size() && std::isalpha(static_cast<unsigned char>(s[j]));
    if (j > exp_start && j - exp_start <= 3 && !word) {
      buf.append(s.substr(i, j - i));
      i = j;
    }
  }

  const char* first = buf.data();
  const char* last = buf.data() + buf.size();
  const auto res = std::from_chars(first, last, tok.value);
  if (res.ec != std::errc() || !std::isfinite(tok.value)) return std::nullopt;
  tok.end = i;
  return tok;
}

bool starts_number(std::string_view s, std::size_t i) {
  const char c = s[i];
  if (is_digit(c)) return i == 0 || !(is_digit(s[i - 1]));
  if (c == '.') return i + 1 < s.size() && is_digit(s[i + 1]) && (i == 0 || !is_digit(s[i - 1]));
  if (c == '-' || c == '+') {
    if (i > 0 && is_alnum(s[i - 1])) return false;  // a range such as 2040-2050
    return i + 1 < s.size() && (is_digit(s[i + 1]) || (s[i + 1] == '.' && i + 2 < s.size() && is_digit(s[i + 2])));
  }
  return false;
}

std::vector<Token> scan_tokens(std::string_view s, bool allow_grouping) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (starts_number(s, i)) {
      if (auto tok = read_number(s, i, allow_grouping)) {
        out.push_back(*tok);
        i = tok->end;
        continue;
      }
    }
    ++i;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::optional<std::vector<double>> strict_parse(std::string_view text, ResponseSchema schema) {
  std::string_view s = trim(text);
  if (s.empty()) return std::nullopt;
  if (schema == ResponseSchema::OneNumber) {
    if (!starts_number(s, 0)) return std::nullopt;
    const auto tok = read_number(s, 0, true);
    if (!tok || tok->end != s.size()) return std::nullopt;
    return std::vector<double>{tok->value};
  }
  if (s.front() == '(' && s.back() == ')') s = trim(s.substr(1, s.size() - 2));
  if (s.empty() || !starts_number(s, 0)) return std::nullopt;
  const auto a = read_number(s, 0, false);
  if (!a) return std::nullopt;
  std::size_t i = a->end;
  while (i < s.size() && is_space(s[i])) ++i;
  if (i >= s.size() || s[i] != ',') return std::nullopt;
  ++i;
  while (i < s.size() && is_space(s[i])) ++i;
  if (i >= s.size() || !starts_number(s, i)) return std::nullopt;
  const auto b = read_number(s, i, false);
  if (!b || b->end != s.size()) return std::nullopt;
  return std::vector<double>{a->value, b->value};
}

std::string excerpt(std::string_view text) {
  std::string out(text.substr(0, 80));
  for (char& c : out)
    if (static_cast<unsigned char>(c) < 0x20) c = ' ';
  if (text.size() > 80) out += "...";
  return out;
}

}  // namespace

std::vector<double> scan_numbers(std::string_view text, bool allow_grouping) {
  std::vector<double> out;
  for (const auto& tok : scan_tokens(text, allow_grouping)) out.push_back(tok.value);
  return out;
}

std::vector<double> parse_numeric_response(std::string_view text, ResponseSchema schema, double lo, double hi) {
  const std::size_t want = schema == ResponseSchema::OneNumber ? 1 : 2;
  std::vector<double> values;
  if (auto strict = strict_parse(text, schema)) {
    values = std::move(*strict);
  } else {
    values = scan_numbers(text, schema == ResponseSchema::OneNumber);
    if (values.size() < want) {
      throw ParseError("expected " + std::to_string(want) + " number(s) in response: \"" + excerpt(text) + "\"");
    }
    values.resize(want);
  }
  for (double v : values) {
    if (v < lo || v > hi) {
      std::ostringstream os;
      os << "value " << v << " outside [" << lo << ", " << hi << "]";
      throw BoundsError(os.str());
    }
  }
  return values;
}

Hypothesis hypothesis_from_answers(const TaskSpec& spec, const std::vector<double>& values) {
  if (spec.is_causal()) {
    if (values.size() != 2) throw InvalidArgument("causal task needs two answers");
    return CausalHypothesis{values[0] * spec.response_scale, values[1] * spec.response_scale};
  }
  if (values.size() != 1) throw InvalidArgument("scalar task needs one answer");
  return values[0] * spec.response_scale;
}

}  // namespace ilprior
