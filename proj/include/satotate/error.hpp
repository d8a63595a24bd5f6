#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace satotate {

enum class ErrorKind {
  invalid_argument,
  budget_exceeded,
  domain,
  family_invalid,
  bound_violation,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid_argument";
    case ErrorKind::budget_exceeded: return "budget_exceeded";
    case ErrorKind::domain: return "domain";
    case ErrorKind::family_invalid: return "family_invalid";
    case ErrorKind::bound_violation: return "bound_violation";
  }
  return "unknown";
}

// Every error the library raises on bad input. Internal consistency failures
// (a negative peeled multiplicity, say) are std::logic_error instead.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised while validating a family; carries the offending member and, for
// Casselman-Shalika coherence failures, the residual that tripped the check.
class FamilyError : public Error {
 public:
  FamilyError(const std::string& what, std::optional<std::size_t> member = std::nullopt,
              std::optional<double> residual = std::nullopt)
      : Error(ErrorKind::family_invalid, what), member_(member), residual_(residual) {}

  std::optional<std::size_t> member() const noexcept { return member_; }
  std::optional<double> residual() const noexcept { return residual_; }

 private:
  std::optional<std::size_t> member_;
  std::optional<double> residual_;
};

namespace detail {

inline void require(bool cond, const std::string& msg,
                    ErrorKind kind = ErrorKind::invalid_argument) {
  if (!cond) throw Error(kind, msg);
}

}  // namespace detail

}  // namespace satotate
