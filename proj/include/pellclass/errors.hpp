#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pellclass {

// Input outside the mathematical domain of an operation (e.g. a square discriminant).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A configured resource guard (memory, cost) would be exceeded; the operation refuses.
class GuardError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Caller broke an operation's precondition on an otherwise valid value.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A verification found a counterexample to a property that must hold.
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pellclass
