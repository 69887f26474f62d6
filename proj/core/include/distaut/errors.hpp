#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace distaut {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad argument or precondition (negative budget, alphabet mismatch, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::string location, const std::string& message);
  const std::string& location() const { return location_; }

 private:
  std::string location_;
};

// A structural check failed; carries every violation found.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

// An exploration or enumeration cap was hit.
class TooLarge : public Error {
 public:
  using Error::Error;
};

// A transition function produced something out of range.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

}  // namespace distaut
