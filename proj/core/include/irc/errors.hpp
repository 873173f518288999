#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace irc {

/// Input outside an operation's mathematical domain (negative SINR, zero
/// distance, overlapping variable groups, malformed tensors).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A parameter cell for which no admissible configuration exists (zero relay
/// share, zero bottleneck rate). Sweeps catch this and skip the cell, so it
/// is kept separate from DomainError.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller-supplied parameters violate a named admissibility bound.
class ConstraintViolation : public std::invalid_argument {
 public:
  ConstraintViolation(std::string bound, const std::string& what)
      : std::invalid_argument(what), bound_(std::move(bound)) {}

  const std::string& bound() const noexcept { return bound_; }

 private:
  std::string bound_;
};

/// Malformed configuration or input file; field() names the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace irc
