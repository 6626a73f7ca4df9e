#pragma once

#include <stdexcept>
#include <string>

namespace votelab {

/// A query exceeded the session's size budget. Model violation, never clamped.
class QueryTooLargeError : public std::invalid_argument {
public:
  explicit QueryTooLargeError(const std::string& what)
      : std::invalid_argument(what) {}
};

/// A scoring vector lies outside the span reachable with the given query
/// size, so no exact query-driven evaluation exists.
class NotComputableError : public std::domain_error {
public:
  explicit NotComputableError(const std::string& what)
      : std::domain_error(what) {}
};

/// An operation would enumerate past a configured size cap. Refused outright
/// rather than truncated.
class CapExceededError : public std::runtime_error {
public:
  explicit CapExceededError(const std::string& what)
      : std::runtime_error(what) {}
};

} // namespace votelab
