#pragma once

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "votelab/combinatorics.hpp"
#include "votelab/errors.hpp"
#include "votelab/profiles.hpp"
#include "votelab/queries.hpp"
#include "votelab/rational.hpp"

namespace votelab {

/// Position weights alpha_1..alpha_m (index 0 = top position). A candidate's
/// score is the expected weight of its position; any affine rescaling with
/// positive slope yields the same winners.
class ScoringVector {
public:
  explicit ScoringVector(std::vector<Rational> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) throw std::invalid_argument("ScoringVector: empty");
  }

  int size() const { return static_cast<int>(weights_.size()); }
  const Rational& operator[](int position) const { return weights_.at(position); }
  const std::vector<Rational>& weights() const { return weights_; }

  friend bool operator==(const ScoringVector&, const ScoringVector&) = default;

private:
  std::vector<Rational> weights_;
};

inline Rational score(const Profile& p, const ScoringVector& alpha, CandidateId c) {
  if (alpha.size() != p.num_candidates()) {
    throw std::invalid_argument("score: weight count mismatch");
  }
  Rational total;
  const auto positions = pos_vector(p, c);
  for (int j = 0; j < alpha.size(); ++j) total += alpha[j] * positions[j];
  return total;
}

/// All candidates attaining the maximal score, ascending.
inline std::set<CandidateId> winners(const Profile& p, const ScoringVector& alpha) {
  std::set<CandidateId> best;
  Rational best_score;
  for (CandidateId c = 0; c < p.num_candidates(); ++c) {
    Rational s = score(p, alpha, c);
    if (best.empty() || s > best_score) {
      best = {c};
      best_score = s;
    } else if (s == best_score) {
      best.insert(c);
    }
  }
  return best;
}

/// k-th generator of the size-t query span: entry j counts the ways to place
/// k-1 candidates above position j and t-k below within a size-t window,
/// so entry j is C(j-1, k-1) * C(m-j, t-k) (1-based j). Zero before j = k,
/// strictly positive at j = k.
inline ScoringVector basis_vector(int m, int t, int k) {
  if (t < 1 || t > m) throw std::invalid_argument("basis_vector: t out of range");
  if (k < 1 || k > t) throw std::invalid_argument("basis_vector: k out of range");
  std::vector<Rational> weights;
  weights.reserve(m);
  for (int j = 1; j <= m; ++j) {
    weights.emplace_back(binomial(j - 1, k - 1) * binomial(m - j, t - k));
  }
  return ScoringVector(std::move(weights));
}

/// Generators of the span reachable with size-t queries, in order k = 1..t.
struct BasisFamily {
  int m = 0;
  int t = 0;
  std::vector<ScoringVector> vectors;

  static BasisFamily build(int m, int t) {
    BasisFamily f{m, t, {}};
    f.vectors.reserve(t);
    for (int k = 1; k <= t; ++k) f.vectors.push_back(basis_vector(m, t, k));
    return f;
  }
};

/// Outcome of an exact span test: either the coefficients writing alpha in
/// the basis, or the nonzero residual left after elimination.
struct SpanDecision {
  bool member = false;
  std::vector<Rational> coefficients; // lambda_1..lambda_t when member
  std::vector<Rational> residual;     // alpha - sum lambda_k alpha^k when not
};

/// Decides alpha in span(alpha^1..alpha^t) by forward substitution: the basis
/// is triangular (alpha^k vanishes before position k and is positive there),
/// so the first t positions force every coefficient; membership holds iff the
/// remaining positions match too. Exact rational arithmetic throughout.
inline SpanDecision span_membership(const ScoringVector& alpha, int t) {
  const int m = alpha.size();
  if (t < 1 || t > m) throw std::invalid_argument("span_membership: t out of range");
  const BasisFamily basis = BasisFamily::build(m, t);
  std::vector<Rational> residual = alpha.weights();
  std::vector<Rational> coefficients(t);
  for (int k = 1; k <= t; ++k) {
    const ScoringVector& gen = basis.vectors[k - 1];
    Rational lambda = residual[k - 1] / gen[k - 1];
    coefficients[k - 1] = lambda;
    if (lambda.is_zero()) continue;
    for (int j = k - 1; j < m; ++j) residual[j] -= lambda * gen[j];
  }
  bool member = true;
  for (const Rational& r : residual) {
    if (!r.is_zero()) { member = false; break; }
  }
  if (member) return {true, std::move(coefficients), {}};
  return {false, {}, std::move(residual)};
}

/// Least query size whose span contains alpha; at most m since the size-m
/// basis spans everything.
inline int minimal_query_size(const ScoringVector& alpha) {
  for (int t = 1; t <= alpha.size(); ++t) {
    if (span_membership(alpha, t).member) return t;
  }
  throw std::logic_error("minimal_query_size: size-m basis failed to span");
}

namespace detail {

inline const Profile& fetch_response(QuerySession& session, const Query& q) {
  if (const Profile* cached = session.cached_response(q)) return *cached;
  return session.query(q);
}

} // namespace detail

/// Exact score reconstruction through the oracle. With t the session budget,
/// queries every size-t subset once (cached responses are reused, so a full
/// sweep costs C(m,t) queries total even across candidates): summing the
/// probability that c lands in restricted position k over all subsets yields
/// the score under alpha^k, and the span coefficients combine those into the
/// score under alpha. Throws NotComputableError when alpha is outside the
/// size-t span.
inline Rational score_via_queries(QuerySession& session, const ScoringVector& alpha, CandidateId c) {
  const int m = session.num_candidates();
  const int t = session.max_query_size();
  if (alpha.size() != m) throw std::invalid_argument("score_via_queries: weight count mismatch");
  if (c < 0 || c >= m) throw std::invalid_argument("score_via_queries: candidate out of range");
  SpanDecision decision = span_membership(alpha, t);
  if (!decision.member) {
    throw NotComputableError("scoring vector unreachable with queries of size " + std::to_string(t));
  }
  std::vector<Rational> basis_scores(t);
  for (const auto& subset : subsets_of_size(m, t)) {
    const Profile& response = detail::fetch_response(session, Query(subset));
    auto pos = std::lower_bound(subset.begin(), subset.end(), c);
    if (pos == subset.end() || *pos != c) continue;
    const int c_local = static_cast<int>(pos - subset.begin());
    for (const auto& [ranking, mass] : response.support()) {
      basis_scores[ranking.position_of(c_local)] += mass;
    }
  }
  Rational total;
  for (int k = 0; k < t; ++k) total += decision.coefficients[k] * basis_scores[k];
  return total;
}

/// Argmax set reconstructed through the oracle; shares one C(m,t) query
/// sweep across all candidates.
inline std::set<CandidateId> winners_via_queries(QuerySession& session, const ScoringVector& alpha) {
  std::set<CandidateId> best;
  Rational best_score;
  for (CandidateId c = 0; c < session.num_candidates(); ++c) {
    Rational s = score_via_queries(session, alpha, c);
    if (best.empty() || s > best_score) {
      best = {c};
      best_score = s;
    } else if (s == best_score) {
      best.insert(c);
    }
  }
  return best;
}

/// Normalized representative of a scoring vector on the probability simplex:
/// subtract the minimum entry and rescale to sum 1. Constant vectors (every
/// candidate always ties) have no representative and are flagged instead.
struct SimplexPoint {
  bool constant = false;
  std::vector<Rational> coordinates; // empty iff constant
};

inline SimplexPoint simplex_coordinates(const ScoringVector& alpha) {
  Rational min = alpha[0];
  for (int j = 1; j < alpha.size(); ++j) min = std::min(min, alpha[j]);
  std::vector<Rational> shifted;
  shifted.reserve(alpha.size());
  Rational sum;
  for (int j = 0; j < alpha.size(); ++j) {
    shifted.push_back(alpha[j] - min);
    sum += shifted.back();
  }
  if (sum.is_zero()) return {true, {}};
  for (Rational& v : shifted) v /= sum;
  return {false, std::move(shifted)};
}

} // namespace votelab
