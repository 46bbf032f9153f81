#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ilprior {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad argument to a numeric routine (empty sample, lo > hi, p outside [0,1], ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Every cell of a posterior has zero mass.
class DegeneratePosterior : public Error {
 public:
  using Error::Error;
};

/// A hypothesis lies outside the support its likelihood needs.
class DegenerateHypothesis : public Error {
 public:
  using Error::Error;
};

class TemplateError : public Error {
 public:
  using Error::Error;
};

/// No usable number in a model response.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Parsed number lies outside the task's accepted range.
class BoundsError : public Error {
 public:
  using Error::Error;
};

/// HTTP-level failure talking to a chat endpoint.
class TransportError : public Error {
 public:
  TransportError(const std::string& what, int status, int attempts)
      : Error(what), status_(status), attempts_(attempts) {}

  int status() const noexcept { return status_; }
  int attempts() const noexcept { return attempts_; }

 private:
  int status_;
  int attempts_;
};

/// An agent could not produce a hypothesis within its retry budget.
class AgentFailure : public Error {
 public:
  AgentFailure(const std::string& what, std::string last_raw_text, int attempts)
      : Error(what), last_raw_text_(std::move(last_raw_text)), attempts_(attempts) {}

  const std::string& last_raw_text() const noexcept { return last_raw_text_; }
  int attempts() const noexcept { return attempts_; }

 private:
  std::string last_raw_text_;
  int attempts_;
};

/// Malformed input file; line is 1-based.
class LoadError : public Error {
 public:
  LoadError(const std::string& what, std::size_t line)
      : Error(what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace ilprior
