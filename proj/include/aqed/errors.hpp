#pragma once

#include <stdexcept>
#include <string>

namespace aqed {

// Input outside an operation's mathematical domain (r = 0, non-positive scale, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed configuration; carries the offending field path and, when known, the line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, std::string message, int line = -1);

  const std::string& field() const { return field_; }
  int line() const { return line_; }

 private:
  std::string field_;
  int line_;
};

// Integration or linear-solve failure.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A required input (atomic correlator, reference scale, ...) was not supplied.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace aqed
