#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "votelab/combinatorics.hpp"
#include "votelab/errors.hpp"
#include "votelab/rational.hpp"

namespace votelab {

/// A claimed cover: t-subsets of {0..m-1} meant to contain every t*-subset.
struct CoverInstance {
  int m = 0;
  int t = 0;
  int t_star = 0;
  std::vector<std::vector<int>> sets;
};

namespace detail {

inline void check_cover_params(int m, int t, int t_star, const char* where) {
  if (!(1 <= t_star && t_star <= t && t <= m)) {
    throw std::invalid_argument(std::string(where) + ": need 1 <= t* <= t <= m");
  }
  if (m > 62) throw std::invalid_argument(std::string(where) + ": m too large");
}

inline std::uint64_t subset_mask(const std::vector<int>& subset, int m, int expected_size,
                                 const char* where) {
  if (static_cast<int>(subset.size()) != expected_size) {
    throw std::invalid_argument(std::string(where) + ": set has wrong size");
  }
  std::uint64_t mask = 0;
  for (int c : subset) {
    if (c < 0 || c >= m) throw std::invalid_argument(std::string(where) + ": element out of range");
    if ((mask >> c) & 1ull) throw std::invalid_argument(std::string(where) + ": duplicate element");
    mask |= 1ull << c;
  }
  return mask;
}

} // namespace detail

/// Counting bound on the minimum cover size: each t-set contains C(t,t*)
/// of the C(m,t*) targets. The exact rational is kept next to its ceiling
/// since cover sizes are integers.
struct CoverBound {
  Rational ratio;
  BigInt ceiling;
};

inline CoverBound cover_lower_bound(int m, int t, int t_star) {
  detail::check_cover_params(m, t, t_star, "cover_lower_bound");
  Rational ratio(binomial(m, t_star), binomial(t, t_star));
  BigInt ceiling = ratio.num() / ratio.den();
  if (ceiling * ratio.den() != ratio.num()) ++ceiling;
  return {ratio, ceiling};
}

/// Validity check; when the instance fails, reports the lexicographically
/// first t*-subset no listed set contains.
struct CoverCheck {
  bool covered = false;
  std::optional<std::vector<int>> first_uncovered;
};

inline CoverCheck is_cover(const CoverInstance& instance) {
  detail::check_cover_params(instance.m, instance.t, instance.t_star, "is_cover");
  std::vector<std::uint64_t> masks;
  masks.reserve(instance.sets.size());
  for (const auto& s : instance.sets) {
    masks.push_back(detail::subset_mask(s, instance.m, instance.t, "is_cover"));
  }
  for (const auto& target : subsets_of_size(instance.m, instance.t_star)) {
    const std::uint64_t target_mask =
        detail::subset_mask(target, instance.m, instance.t_star, "is_cover");
    bool hit = false;
    for (std::uint64_t mask : masks) {
      if ((target_mask & ~mask) == 0) { hit = true; break; }
    }
    if (!hit) return {false, target};
  }
  return {true, std::nullopt};
}

/// Repeatedly adds the t-set covering the most still-uncovered t*-subsets,
/// breaking ties toward the lexicographically earlier set. Always terminates
/// in a valid cover; size is an upper bound for the exact minimum.
inline CoverInstance greedy_cover(int m, int t, int t_star) {
  detail::check_cover_params(m, t, t_star, "greedy_cover");
  const auto candidates = subsets_of_size(m, t);
  std::vector<std::uint64_t> candidate_masks;
  candidate_masks.reserve(candidates.size());
  for (const auto& s : candidates) {
    candidate_masks.push_back(detail::subset_mask(s, m, t, "greedy_cover"));
  }
  std::vector<std::uint64_t> uncovered;
  for (const auto& target : subsets_of_size(m, t_star)) {
    uncovered.push_back(detail::subset_mask(target, m, t_star, "greedy_cover"));
  }

  CoverInstance out{m, t, t_star, {}};
  while (!uncovered.empty()) {
    std::size_t best = 0;
    std::size_t best_gain = 0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      std::size_t gain = 0;
      for (std::uint64_t target : uncovered) {
        if ((target & ~candidate_masks[i]) == 0) ++gain;
      }
      if (gain > best_gain) { best_gain = gain; best = i; }
    }
    out.sets.push_back(candidates[best]);
    std::erase_if(uncovered, [&](std::uint64_t target) {
      return (target & ~candidate_masks[best]) == 0;
    });
  }
  return out;
}

/// Smallest valid cover by exhaustive search over combinations of the C(m,t)
/// base sets, ordered by size then lexicographically; the first hit is the
/// witness. Refuses when the base-set count exceeds the cap.
inline CoverInstance exact_cover(int m, int t, int t_star, int base_set_cap = 20) {
  detail::check_cover_params(m, t, t_star, "exact_cover");
  const auto base = subsets_of_size(m, t);
  const int n = static_cast<int>(base.size());
  if (n > base_set_cap) {
    throw CapExceededError("exact_cover: " + std::to_string(n) +
                           " base sets exceeds exhaustive-search cap " +
                           std::to_string(base_set_cap));
  }
  std::vector<std::uint64_t> base_masks;
  base_masks.reserve(base.size());
  for (const auto& s : base) base_masks.push_back(detail::subset_mask(s, m, t, "exact_cover"));
  std::vector<std::uint64_t> targets;
  for (const auto& target : subsets_of_size(m, t_star)) {
    targets.push_back(detail::subset_mask(target, m, t_star, "exact_cover"));
  }

  const BigInt floor = cover_lower_bound(m, t, t_star).ceiling;
  for (int k = static_cast<int>(floor); k <= n; ++k) {
    for (const auto& pick : subsets_of_size(n, k)) {
      bool all_hit = true;
      for (std::uint64_t target : targets) {
        bool hit = false;
        for (int i : pick) {
          if ((target & ~base_masks[i]) == 0) { hit = true; break; }
        }
        if (!hit) { all_hit = false; break; }
      }
      if (all_hit) {
        CoverInstance out{m, t, t_star, {}};
        for (int i : pick) out.sets.push_back(base[i]);
        return out;
      }
    }
  }
  throw std::logic_error("exact_cover: the full base family must cover");
}

inline int exact_cover_size(int m, int t, int t_star, int base_set_cap = 20) {
  return static_cast<int>(exact_cover(m, t, t_star, base_set_cap).sets.size());
}

} // namespace votelab
