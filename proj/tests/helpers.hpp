#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "votelab/votelab.hpp"

namespace helpers {

using votelab::CandidateSet;
using votelab::Permutation;
using votelab::Profile;
using votelab::Ranking;
using votelab::Rational;
using votelab::ScoringVector;

inline Ranking rk(std::vector<int> order) { return Ranking(std::move(order)); }

inline Profile make_profile(int m, const std::vector<std::pair<std::vector<int>, Rational>>& entries) {
  std::map<Ranking, Rational> mass;
  for (const auto& [order, p] : entries) mass[Ranking(order)] += p;
  return Profile(CandidateSet::with_default_labels(m), std::move(mass));
}

/// Hand-rolled Fisher-Yates so sequences depend only on the engine, not on
/// library distribution internals.
inline Ranking random_ranking(std::mt19937_64& rng, int m) {
  std::vector<int> order(m);
  for (int i = 0; i < m; ++i) order[i] = i;
  for (int j = m - 1; j > 0; --j) {
    std::swap(order[j], order[rng() % static_cast<std::uint64_t>(j + 1)]);
  }
  return Ranking(std::move(order));
}

inline Permutation random_permutation(int m, std::mt19937_64& rng) {
  return Permutation(random_ranking(rng, m).order);
}

/// Random sparse profile: up to max_support distinct rankings with positive
/// integer weights, normalized exactly.
inline Profile random_profile(std::mt19937_64& rng, int m, int max_support = 6) {
  const int target = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_support));
  std::map<Ranking, long long> weights;
  for (int i = 0; i < target; ++i) weights[random_ranking(rng, m)] += 1 + rng() % 9;
  long long total = 0;
  for (const auto& [r, w] : weights) total += w;
  std::map<Ranking, Rational> mass;
  for (const auto& [r, w] : weights) mass.emplace(r, Rational(w, total));
  return Profile(CandidateSet::with_default_labels(m), std::move(mass));
}

/// Random scoring vector with small rational entries, never all equal.
inline ScoringVector random_scoring_vector(std::mt19937_64& rng, int m) {
  while (true) {
    std::vector<Rational> w;
    w.reserve(m);
    for (int j = 0; j < m; ++j) {
      w.emplace_back(static_cast<long long>(rng() % 13) - 6, 1 + static_cast<long long>(rng() % 3));
    }
    for (int j = 1; j < m; ++j) {
      if (w[j] != w[0]) return ScoringVector(std::move(w));
    }
    if (m == 1) return ScoringVector(std::move(w));
  }
}

} // namespace helpers
