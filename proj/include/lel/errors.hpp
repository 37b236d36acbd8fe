#pragma once

#include <stdexcept>
#include <string>

namespace lel {

/// Certification was declined for a documented reason (wrong exponent
/// range, unsupported dimension). Carries the machine-readable tag that
/// the CLI prints and maps to exit code 2.
class refusal_error : public std::runtime_error {
 public:
  refusal_error(std::string tag, const std::string& what)
      : std::runtime_error(what), tag_(std::move(tag)) {}
  const std::string& tag() const { return tag_; }

 private:
  std::string tag_;
};

/// Bug sentinel: an identity or inequality that must hold for every input
/// that reaches it turned out false. Never a user error.
class internal_error : public std::logic_error {
 public:
  explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

/// ODE integration lost finiteness; carries the radius where it happened.
class integration_error : public std::runtime_error {
 public:
  integration_error(const std::string& what, double radius)
      : std::runtime_error(what), radius_(radius) {}
  double radius() const { return radius_; }

 private:
  double radius_;
};

}  // namespace lel
