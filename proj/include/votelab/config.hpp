#pragma once

#include <cstdlib>
#include <string>

#include "votelab/errors.hpp"

namespace votelab {

/// Ceiling on the number of candidates for operations that enumerate all m!
/// rankings or all m! relabelings. Default 8 (40320 rankings) keeps every
/// full enumeration desk-scale. Overridable via VOTELAB_MAX_CANDIDATES.
inline int candidate_cap() {
  static const int cap = [] {
    if (const char* env = std::getenv("VOTELAB_MAX_CANDIDATES")) {
      int v = std::atoi(env);
      if (v >= 1) return v;
    }
    return 8;
  }();
  return cap;
}

/// Throws CapExceededError when m candidates would exceed the enumeration cap.
inline void require_within_cap(int m, const char* operation) {
  if (m > candidate_cap()) {
    throw CapExceededError(std::string(operation) + ": " + std::to_string(m) +
                           " candidates exceeds enumeration cap " +
                           std::to_string(candidate_cap()));
  }
}

} // namespace votelab
