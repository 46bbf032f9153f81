#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "ilprior/bayes/bayes.hpp"

namespace ilprior {

inline constexpr const char* kJudgmentsHeader = "direction,n_c_plus,n_c_minus,k_plus,k_minus,judged_w0,judged_w1";

/// Rows of agent judgments; reading sets agent_judgment. Throws LoadError
/// naming the 1-based line of a malformed row.
std::vector<JudgmentItem> read_judgments(std::istream& in);
std::vector<JudgmentItem> read_judgments(const std::filesystem::path& path);

/// Writes items that carry an agent judgment.
void write_judgments(std::ostream& out, const std::vector<JudgmentItem>& items);
void write_judgments(const std::filesystem::path& path, const std::vector<JudgmentItem>& items);

}  // namespace ilprior
