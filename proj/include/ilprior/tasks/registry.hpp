#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ilprior/tasks/task.hpp"

namespace ilprior {

/// Closing instructions a rendered prompt may end with.
inline constexpr const char* kSingleValueInstruction =
    "Please limit your answer to a single value without outputing anything else.";
inline constexpr const char* kTwoValueInstruction =
    "Please limit your answer into the 2 numeric values for the 2 questions, for example, (50, 50), "
    "without outputing anything else.";
inline constexpr const char* kSingleNumberInstruction =
    "Please provide your prediction as a single number. Do not include any additional text or "
    "explanation in your response.";
inline constexpr const char* kSingleYearInstruction =
    "Please provide your prediction as a single year. Do not include any additional text or "
    "explanation in your response.";

/// Ordered, name-unique collection of task specs.
class TaskRegistry {
 public:
  TaskRegistry() = default;

  /// Adds or replaces (by name) after validating.
  void add(TaskSpec spec);

  const TaskSpec* find(const std::string& name) const noexcept;
  /// Throws InvalidArgument naming the unknown task.
  const TaskSpec& at(const std::string& name) const;

  const std::vector<TaskSpec>& tasks() const noexcept { return tasks_; }
  std::size_t size() const noexcept { return tasks_.size(); }

 private:
  std::vector<TaskSpec> tasks_;
};

/// The sixteen built-in tasks: two gene/protein causal tasks, the coin task,
/// six everyday quantities, four alternative causal cover stories and three
/// speculative events.
const TaskRegistry& builtin_tasks();

/// Parses task definitions from YAML text. Throws LoadError with a 1-based
/// line number on malformed input.
std::vector<TaskSpec> parse_task_config(const std::string& yaml_text);
std::vector<TaskSpec> load_task_config(const std::filesystem::path& path);

/// Builtins plus (overriding by name) the tasks in `config`, when given.
TaskRegistry make_registry(const std::filesystem::path& config = {});

}  // namespace ilprior
