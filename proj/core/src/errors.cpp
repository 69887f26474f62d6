#include "distaut/errors.hpp"

namespace distaut {

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += "; ";
    out += item;
  }
  return out;
}

}  // namespace

ParseError::ParseError(std::string location, const std::string& message)
    : Error(location.empty() ? message : location + ": " + message),
      location_(std::move(location)) {}

ValidationError::ValidationError(std::vector<std::string> violations)
    : Error("validation failed: " + join(violations)),
      violations_(std::move(violations)) {}

}  // namespace distaut
