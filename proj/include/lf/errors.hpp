#pragma once

#include <stdexcept>
#include <string>

namespace lf {

/// A caller broke an operation's precondition (malformed color, non-local
/// formula passed to upshift, ...).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The requested node is outside the operation's domain (e.g. tree_above on an
/// unleveled node).
class DomainError : public ContractError {
 public:
  using ContractError::ContractError;
};

/// Two structures being combined carry the same constant tag.
class TagCollisionError : public ContractError {
 public:
  using ContractError::ContractError;
};

/// A configured size or time guard was exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Formula evaluation failed (unbound variable, constant not interpreted).
class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text or JSON document.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line = 0, int column = 0)
      : std::runtime_error(line > 0 ? std::to_string(line) + ":" + std::to_string(column) + ": " + what : what),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace lf
