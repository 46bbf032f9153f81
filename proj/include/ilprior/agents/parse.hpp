#pragma once

#include <string_view>
#include <vector>

#include "ilprior/likelihoods/likelihoods.hpp"
#include "ilprior/tasks/task.hpp"

namespace ilprior {

/// Extracts the numeric answer(s) from a model reply.
///
/// A strict pass accepts the trimmed text only if it is exactly the expected
/// shape ("85", "1,250.5", "(50, 75)", "50, 75"). Otherwise a lenient pass
/// takes the first one or two numbers in reading order. Thousands separators
/// are recognized only for one-number answers. Every value must lie in
/// [lo, hi].
///
/// Throws ParseError when no (or too few) numbers are found and BoundsError
/// when a value is out of range. Never fails in any other way.
std::vector<double> parse_numeric_response(std::string_view text, ResponseSchema schema, double lo, double hi);

/// All numbers in reading order, as the lenient pass sees them.
std::vector<double> scan_numbers(std::string_view text, bool allow_grouping);

/// Converts raw answers (one per question for one-number tasks, or the pair
/// of a two-number answer) to a hypothesis, applying response_scale. For
/// causal tasks the first value is the C- count (w0) and the second the C+
/// count (w1).
Hypothesis hypothesis_from_answers(const TaskSpec& spec, const std::vector<double>& values);

}  // namespace ilprior
