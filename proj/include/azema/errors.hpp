#pragma once

#include <stdexcept>
#include <string>

namespace azema {

/// Malformed or inconsistent user input. `code` names the violated rule
/// (e.g. "prob_sum", "non_refining", "not_adapted") and `location` points
/// at the offending element.
class InputError : public std::runtime_error {
 public:
  InputError(std::string code, std::string location, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)), location_(std::move(location)) {}

  const std::string& code() const noexcept { return code_; }
  const std::string& location() const noexcept { return location_; }

 private:
  std::string code_;
  std::string location_;
};

/// An identity that must hold on every finite instance was observed to fail.
/// Raised only on engine bugs.
class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A theorem's standing hypothesis does not hold for the given instance.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace azema
