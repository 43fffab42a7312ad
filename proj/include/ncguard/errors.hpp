#pragma once

#include <stdexcept>
#include <string>

namespace ncguard {

/// Caller passed arguments that violate an operation's preconditions
/// (mismatched fields, wrong vector lengths, out-of-range parameters).
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

/// Mathematically undefined request, e.g. the inverse of zero.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace ncguard
