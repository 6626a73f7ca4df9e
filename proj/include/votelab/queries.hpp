#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "votelab/combinatorics.hpp"
#include "votelab/profiles.hpp"

namespace votelab {

/// A query names the subset of candidates whose restricted distribution is
/// requested. Stored sorted ascending (the canonical subset form).
struct Query {
  std::vector<CandidateId> subset;

  explicit Query(std::vector<CandidateId> ids) : subset(std::move(ids)) {
    if (subset.empty()) throw std::invalid_argument("Query: empty subset");
    std::sort(subset.begin(), subset.end());
    if (std::adjacent_find(subset.begin(), subset.end()) != subset.end()) {
      throw std::invalid_argument("Query: duplicate candidate");
    }
  }

  int size() const { return static_cast<int>(subset.size()); }
  friend auto operator<=>(const Query&, const Query&) = default;
};

/// Exact oracle with a hard per-query size budget. The hidden profile is
/// reachable only through query(); every accepted query is logged in order
/// and its response cached for reuse.
class QuerySession {
public:
  QuerySession(Profile hidden, int max_query_size)
      : hidden_(std::move(hidden)), max_query_size_(max_query_size) {
    if (max_query_size_ < 1 || max_query_size_ > hidden_.num_candidates()) {
      throw std::invalid_argument("QuerySession: query size budget out of range");
    }
  }

  const CandidateSet& candidates() const { return hidden_.candidates(); }
  int num_candidates() const { return hidden_.num_candidates(); }
  int max_query_size() const { return max_query_size_; }

  /// Restriction of the hidden profile to the queried subset. Oversized
  /// queries throw QueryTooLargeError and are not logged.
  const Profile& query(const Query& q) {
    check_size(q);
    auto it = responses_.find(q);
    if (it == responses_.end()) {
      it = responses_.emplace(q, restrict_profile(hidden_, q.subset)).first;
    }
    log_.push_back(q);
    return it->second;
  }

  /// Response recorded by an earlier query(), if any. Lets callers reuse
  /// answers without growing the log.
  const Profile* cached_response(const Query& q) const {
    auto it = responses_.find(q);
    return it == responses_.end() ? nullptr : &it->second;
  }

  int query_count() const { return static_cast<int>(log_.size()); }
  const std::vector<Query>& log() const { return log_; }

private:
  void check_size(const Query& q) const {
    if (q.size() > max_query_size_) {
      throw QueryTooLargeError("query of size " + std::to_string(q.size()) +
                               " exceeds budget " + std::to_string(max_query_size_));
    }
    if (q.subset.back() >= hidden_.num_candidates()) {
      throw std::invalid_argument("query: candidate out of range");
    }
  }

  Profile hidden_;
  int max_query_size_;
  std::vector<Query> log_;
  std::map<Query, Profile> responses_;
};

/// Finite-sample variant of the oracle: each call draws n rankings from the
/// restricted distribution and reports the empirical profile next to its
/// exact total-variation error. Streams are split deterministically: the k-th
/// accepted call (1-based) draws from mt19937_64 seeded with
/// splitmix64(seed + k), so identical seed and call sequence reproduce
/// identical samples.
class SampledSession {
public:
  struct SampleResult {
    Profile empirical;
    Rational tv_distance;
  };

  SampledSession(Profile hidden, int max_query_size, std::uint64_t seed)
      : exact_(std::move(hidden), max_query_size), seed_(seed) {}

  const CandidateSet& candidates() const { return exact_.candidates(); }
  int max_query_size() const { return exact_.max_query_size(); }

  SampleResult sample_query(const Query& q, int num_samples) {
    if (num_samples < 1) throw std::invalid_argument("sample_query: need at least one sample");
    const Profile& target = exact_.query(q);
    std::mt19937_64 engine(splitmix64(seed_ + static_cast<std::uint64_t>(exact_.query_count())));
    // Each draw maps a uniform 64-bit lattice point u/2^64 through the CDF;
    // the lattice quantization (< 2^-64 per outcome) is the only inexactness.
    const BigInt lattice = BigInt(1) << 64;
    std::map<Ranking, long long> counts;
    for (int i = 0; i < num_samples; ++i) {
      Rational u(BigInt(engine()), lattice);
      Rational cum;
      const Ranking* drawn = nullptr;
      for (const auto& [ranking, mass] : target.support()) {
        cum += mass;
        if (u < cum) { drawn = &ranking; break; }
      }
      if (drawn == nullptr) drawn = &target.support().rbegin()->first;
      ++counts[*drawn];
    }
    std::map<Ranking, Rational> empirical_mass;
    for (const auto& [ranking, count] : counts) {
      empirical_mass.emplace(ranking, Rational(count, num_samples));
    }
    Profile empirical(target.candidates(), std::move(empirical_mass));
    return SampleResult{empirical, total_variation(empirical, target)};
  }

  int query_count() const { return exact_.query_count(); }
  const std::vector<Query>& log() const { return exact_.log(); }

  /// Exact total-variation distance between two profiles over one candidate
  /// set: half the l1 distance across the union of supports.
  static Rational total_variation(const Profile& p1, const Profile& p2) {
    if (!(p1.candidates() == p2.candidates())) {
      throw std::invalid_argument("total_variation: candidate sets differ");
    }
    Rational sum;
    auto it1 = p1.support().begin();
    auto it2 = p2.support().begin();
    while (it1 != p1.support().end() || it2 != p2.support().end()) {
      if (it2 == p2.support().end() || (it1 != p1.support().end() && it1->first < it2->first)) {
        sum += it1->second;
        ++it1;
      } else if (it1 == p1.support().end() || it2->first < it1->first) {
        sum += it2->second;
        ++it2;
      } else {
        sum += abs(it1->second - it2->second);
        ++it1;
        ++it2;
      }
    }
    return sum / 2;
  }

private:
  QuerySession exact_;
  std::uint64_t seed_;
};

/// First observable difference between two profiles at query size t: the
/// lexicographically first subset of size exactly t whose restrictions
/// differ, together with the canonically first ranking whose masses differ.
struct IndistinguishabilityWitness {
  Query query;
  Ranking ranking; // over the subset's candidate set
  Rational mass_first;
  Rational mass_second;
};

struct IndistinguishabilityReport {
  bool indistinguishable = false;
  std::optional<IndistinguishabilityWitness> witness; // present iff distinguishable
};

/// Checks equality of all size-t restrictions. Restrictions of smaller
/// subsets factor through size-t ones, so matching at exactly t covers every
/// query a size-t session could ask.
inline IndistinguishabilityReport indistinguishable(const Profile& p1, const Profile& p2, int t) {
  if (!(p1.candidates() == p2.candidates())) {
    throw std::invalid_argument("indistinguishable: candidate sets differ");
  }
  if (t < 1 || t > p1.num_candidates()) {
    throw std::invalid_argument("indistinguishable: t out of range");
  }
  for (const auto& subset : subsets_of_size(p1.num_candidates(), t)) {
    Profile r1 = restrict_profile(p1, subset);
    Profile r2 = restrict_profile(p2, subset);
    if (r1 == r2) continue;
    auto it1 = r1.support().begin();
    auto it2 = r2.support().begin();
    while (true) {
      if (it2 == r2.support().end() || (it1 != r1.support().end() && it1->first < it2->first)) {
        return {false, IndistinguishabilityWitness{Query(subset), it1->first, it1->second, Rational(0)}};
      }
      if (it1 == r1.support().end() || it2->first < it1->first) {
        return {false, IndistinguishabilityWitness{Query(subset), it2->first, Rational(0), it2->second}};
      }
      if (it1->second != it2->second) {
        return {false, IndistinguishabilityWitness{Query(subset), it1->first, it1->second, it2->second}};
      }
      ++it1;
      ++it2;
    }
  }
  return {true, std::nullopt};
}

} // namespace votelab
