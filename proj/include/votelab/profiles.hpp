#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "votelab/combinatorics.hpp"
#include "votelab/config.hpp"
#include "votelab/ranking.hpp"
#include "votelab/rational.hpp"

namespace votelab {

/// Exact distribution over the strict rankings of a candidate set. Only the
/// support is stored; masses are positive rationals summing to exactly 1.
class Profile {
public:
  Profile(CandidateSet candidates, std::map<Ranking, Rational> mass)
      : candidates_(std::move(candidates)), mass_(std::move(mass)) {
    Rational total;
    for (auto it = mass_.begin(); it != mass_.end();) {
      if (!is_valid_ranking(it->first, candidates_.size())) {
        throw std::invalid_argument("Profile: ranking does not match candidate set");
      }
      if (it->second.sign() < 0) throw std::invalid_argument("Profile: negative mass");
      total += it->second;
      if (it->second.is_zero()) it = mass_.erase(it);
      else ++it;
    }
    if (total != Rational(1)) throw std::invalid_argument("Profile: mass must sum to 1");
  }

  const CandidateSet& candidates() const { return candidates_; }
  int num_candidates() const { return candidates_.size(); }

  /// Support in canonical ranking order.
  const std::map<Ranking, Rational>& support() const { return mass_; }
  int support_size() const { return static_cast<int>(mass_.size()); }

  Rational mass(const Ranking& r) const {
    auto it = mass_.find(r);
    return it == mass_.end() ? Rational(0) : it->second;
  }

  friend bool operator==(const Profile&, const Profile&) = default;

private:
  CandidateSet candidates_;
  std::map<Ranking, Rational> mass_;
};

inline Profile point_mass(CandidateSet candidates, Ranking r) {
  std::map<Ranking, Rational> mass;
  mass.emplace(std::move(r), Rational(1));
  return Profile(std::move(candidates), std::move(mass));
}

/// All rankings of the candidate set in canonical (lexicographic) order.
/// Refuses above the enumeration cap.
inline std::vector<Ranking> all_rankings(const CandidateSet& candidates) {
  require_within_cap(candidates.size(), "all_rankings");
  std::vector<int> ids(candidates.size());
  for (int i = 0; i < candidates.size(); ++i) ids[i] = i;
  std::vector<Ranking> out;
  for (auto& order : all_orderings(ids)) out.emplace_back(std::move(order));
  return out;
}

/// Marginal distribution of the restriction to the subset: each support
/// ranking collapses onto its restriction, masses merging.
inline Profile restrict_profile(const Profile& p, const std::vector<CandidateId>& subset) {
  for (CandidateId c : subset) {
    if (c < 0 || c >= p.num_candidates()) {
      throw std::invalid_argument("restrict_profile: candidate out of range");
    }
  }
  std::map<Ranking, Rational> mass;
  for (const auto& [ranking, weight] : p.support()) {
    mass[restrict_ranking(ranking, subset)] += weight;
  }
  return Profile(p.candidates().subset(subset), std::move(mass));
}

/// Pushforward under the relabeling pi; mass of each ranking moves to its
/// image.
inline Profile permute_profile(const Permutation& pi, const Profile& p) {
  if (pi.size() != p.num_candidates()) {
    throw std::invalid_argument("permute_profile: size mismatch");
  }
  std::map<Ranking, Rational> mass;
  for (const auto& [ranking, weight] : p.support()) {
    mass.emplace(permute_ranking(pi, ranking), weight);
  }
  return Profile(p.candidates(), std::move(mass));
}

/// Pushforward under the swap of a and b.
inline Profile transpose_profile(const Profile& p, CandidateId a, CandidateId b) {
  return permute_profile(Permutation::transposition(p.num_candidates(), a, b), p);
}

/// Convex combination of profiles over one candidate set. Weights must be
/// nonnegative and sum to exactly 1.
inline Profile mix(const std::vector<std::pair<Profile, Rational>>& parts) {
  if (parts.empty()) throw std::invalid_argument("mix: no parts");
  Rational total;
  for (const auto& [part, weight] : parts) {
    if (weight.sign() < 0) throw std::invalid_argument("mix: negative weight");
    if (!(part.candidates() == parts.front().first.candidates())) {
      throw std::invalid_argument("mix: candidate sets differ");
    }
    total += weight;
  }
  if (total != Rational(1)) throw std::invalid_argument("mix: weights must sum to 1");
  std::map<Ranking, Rational> mass;
  for (const auto& [part, weight] : parts) {
    for (const auto& [ranking, m] : part.support()) mass[ranking] += weight * m;
  }
  return Profile(parts.front().first.candidates(), std::move(mass));
}

/// Positional occurrence vector: entry j is the probability that candidate c
/// sits in position j. Entries are nonnegative and sum to 1.
inline std::vector<Rational> pos_vector(const Profile& p, CandidateId c) {
  if (c < 0 || c >= p.num_candidates()) {
    throw std::invalid_argument("pos_vector: candidate out of range");
  }
  std::vector<Rational> out(p.num_candidates());
  for (const auto& [ranking, weight] : p.support()) {
    out[ranking.position_of(c)] += weight;
  }
  return out;
}

/// Uniform distribution over the given rankings (duplicates rejected).
inline Profile uniform_over(CandidateSet candidates, const std::vector<Ranking>& rankings) {
  if (rankings.empty()) throw std::invalid_argument("uniform_over: empty set");
  Rational each(1, static_cast<long long>(rankings.size()));
  std::map<Ranking, Rational> mass;
  for (const Ranking& r : rankings) {
    if (!mass.emplace(r, each).second) {
      throw std::invalid_argument("uniform_over: duplicate ranking");
    }
  }
  return Profile(std::move(candidates), std::move(mass));
}

/// Uniform distribution over all rankings. Refuses above the enumeration cap.
inline Profile uniform_profile(const CandidateSet& candidates) {
  return uniform_over(candidates, all_rankings(candidates));
}

} // namespace votelab
