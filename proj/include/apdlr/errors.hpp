#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace apdlr {

/// Bad or inconsistent configuration (CLI exit code 1).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File read/write failures; the message names the path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite values or a failed factorization inside a solver (CLI exit code 2).
class NumericalError : public std::runtime_error {
 public:
  NumericalError(std::string op, std::string detail, std::optional<std::size_t> step = {});

  const std::string& op() const { return op_; }
  const std::string& detail() const { return detail_; }
  std::optional<std::size_t> step() const { return step_; }

  /// Same error, tagged with the time-step index it occurred in.
  NumericalError at_step(std::size_t step) const;

 private:
  std::string op_;
  std::string detail_;
  std::optional<std::size_t> step_;
};

}  // namespace apdlr
