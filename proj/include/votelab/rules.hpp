#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "votelab/profiles.hpp"
#include "votelab/queries.hpp"
#include "votelab/scoring.hpp"

namespace votelab {

/// Probability that c is ranked first.
inline Rational plurality_score(const Profile& p, CandidateId c) {
  if (c < 0 || c >= p.num_candidates()) {
    throw std::invalid_argument("plurality_score: candidate out of range");
  }
  Rational total;
  for (const auto& [ranking, mass] : p.support()) {
    if (ranking.at(0) == c) total += mass;
  }
  return total;
}

/// Standard scoring vectors by name: plurality (1,0,..,0), veto (0,..,0,-1),
/// borda (m-1,..,1,0), antiborda (the negation of borda).
inline ScoringVector preset(const std::string& name, int m) {
  if (m < 1) throw std::invalid_argument("preset: m must be positive");
  std::vector<Rational> w(m);
  if (name == "plurality") {
    w[0] = 1;
  } else if (name == "veto") {
    w[m - 1] = -1;
  } else if (name == "borda") {
    for (int j = 0; j < m; ++j) w[j] = m - 1 - j;
  } else if (name == "antiborda") {
    for (int j = 0; j < m; ++j) w[j] = -(m - 1 - j);
  } else {
    throw std::invalid_argument("preset: unknown rule \"" + name + "\"");
  }
  return ScoringVector(std::move(w));
}

/// One elimination: who left, and every remaining candidate's plurality score
/// at that point (the eliminated candidate attains the minimum).
struct EliminationStep {
  CandidateId eliminated;
  std::map<CandidateId, Rational> plurality;
};

struct EliminationTrace {
  std::vector<EliminationStep> steps;
  CandidateId winner;
};

struct StvResult {
  std::set<CandidateId> winners;
  std::map<CandidateId, EliminationTrace> traces; // one witness order per winner
};

namespace detail {

inline std::vector<CandidateId> mask_members(std::uint32_t mask) {
  std::vector<CandidateId> ids;
  for (int c = 0; mask >> c; ++c) {
    if ((mask >> c) & 1u) ids.push_back(c);
  }
  return ids;
}

/// Plurality scores of the profile restricted to the mask's candidates,
/// keyed by original candidate id.
inline std::map<CandidateId, Rational> restricted_plurality(const Profile& p, std::uint32_t mask) {
  const std::vector<CandidateId> ids = mask_members(mask);
  const Profile restricted = restrict_profile(p, ids);
  std::map<CandidateId, Rational> scores;
  for (int local = 0; local < static_cast<int>(ids.size()); ++local) {
    scores.emplace(ids[local], plurality_score(restricted, local));
  }
  return scores;
}

inline std::vector<CandidateId> plurality_minimizers(const std::map<CandidateId, Rational>& scores) {
  Rational min;
  bool first = true;
  for (const auto& [c, s] : scores) {
    if (first || s < min) { min = s; first = false; }
  }
  std::vector<CandidateId> argmin;
  for (const auto& [c, s] : scores) {
    if (s == min) argmin.push_back(c);
  }
  return argmin;
}

inline const std::set<CandidateId>& stv_survivors(const Profile& p, std::uint32_t mask,
                                                  std::map<std::uint32_t, std::set<CandidateId>>& memo) {
  auto it = memo.find(mask);
  if (it != memo.end()) return it->second;
  std::set<CandidateId> result;
  if (std::popcount(mask) == 1) {
    result.insert(std::countr_zero(mask));
  } else {
    for (CandidateId loser : plurality_minimizers(restricted_plurality(p, mask))) {
      const auto& sub = stv_survivors(p, mask & ~(1u << loser), memo);
      result.insert(sub.begin(), sub.end());
    }
  }
  return memo.emplace(mask, std::move(result)).first->second;
}

} // namespace detail

/// Winners under sequential plurality elimination, branching over every tie
/// for the minimal plurality score: a candidate wins iff some tie-breaking
/// order leaves it last. Exhaustive over elimination orders, memoized on the
/// surviving candidate subset. Each winner carries one witness order.
inline StvResult stv_winners(const Profile& p) {
  const int m = p.num_candidates();
  require_within_cap(m, "stv_winners");
  if (m > 31) throw std::invalid_argument("stv_winners: too many candidates");
  const std::uint32_t full = (m == 31) ? 0x7FFFFFFFu : ((1u << m) - 1);
  std::map<std::uint32_t, std::set<CandidateId>> memo;
  StvResult result;
  result.winners = detail::stv_survivors(p, full, memo);
  for (CandidateId w : result.winners) {
    EliminationTrace trace;
    std::uint32_t mask = full;
    while (std::popcount(mask) > 1) {
      auto scores = detail::restricted_plurality(p, mask);
      for (CandidateId loser : detail::plurality_minimizers(scores)) {
        if (loser == w) continue;
        if (detail::stv_survivors(p, mask & ~(1u << loser), memo).count(w)) {
          trace.steps.push_back({loser, scores});
          mask &= ~(1u << loser);
          break;
        }
      }
    }
    trace.winner = w;
    result.traces.emplace(w, std::move(trace));
  }
  return result;
}

/// One pairwise comparison resolved through the oracle. Ties (margin exactly
/// 1/2) advance the lower-indexed candidate and are marked non-strict.
struct PairwiseMatch {
  CandidateId first;
  CandidateId second;
  Rational margin; // probability that first beats second
  CandidateId advanced;
  bool strict;
};

struct PairwiseCheck {
  CandidateId opponent;
  Rational margin; // probability that the champion beats the opponent
  bool strict;
  bool reused; // true when settled by a phase-1 match, costing no query
};

struct CondorcetRun {
  std::vector<std::vector<PairwiseMatch>> rounds;
  std::vector<CandidateId> first_round_byes;
  CandidateId champion = -1;
  std::vector<PairwiseCheck> verification; // champion vs every other candidate
  std::optional<CandidateId> winner;       // empty when no strict pairwise winner
  int queries_used = 0;
};

/// Finds the candidate beating every other pairwise, using only size-2
/// queries: a knockout bracket (byes confined to round one keep every path
/// at least floor(log2 m) matches long) crowns a champion, then the champion
/// is checked against everyone it never faced. Query count is at most
/// 2m - floor(log2 m) - 2; the returned winner, when present, strictly beats
/// all m-1 others, and a strict pairwise winner is always found.
inline CondorcetRun condorcet_via_queries(QuerySession& session) {
  if (session.max_query_size() < 2) {
    throw std::invalid_argument("condorcet_via_queries: needs size-2 queries");
  }
  const int m = session.num_candidates();
  CondorcetRun run;

  auto margin_of = [&](CandidateId x, CandidateId y) {
    const Profile& response = detail::fetch_response(session, Query({x, y}));
    // Restricted candidates are reindexed by ascending id.
    const int x_local = x < y ? 0 : 1;
    Rational margin;
    for (const auto& [ranking, mass] : response.support()) {
      if (ranking.at(0) == x_local) margin += mass;
    }
    return margin;
  };
  const Rational half(1, 2);

  std::map<std::pair<CandidateId, CandidateId>, Rational> played;
  auto play = [&](CandidateId x, CandidateId y) {
    Rational margin = margin_of(x, y);
    ++run.queries_used;
    played[{x, y}] = margin;
    played[{y, x}] = Rational(1) - margin;
    bool strict = margin != half;
    CandidateId advanced = margin > half ? x : (margin < half ? y : std::min(x, y));
    return PairwiseMatch{x, y, margin, advanced, strict};
  };

  // Phase 1: bracket sized to the next power of two, byes only in round one.
  std::vector<CandidateId> alive(m);
  for (int c = 0; c < m; ++c) alive[c] = c;
  int bracket = 1;
  while (bracket < m) bracket *= 2;
  const int first_round_matches = m - bracket / 2;
  {
    std::vector<PairwiseMatch> round;
    std::vector<CandidateId> next;
    for (int i = 0; i < first_round_matches; ++i) {
      round.push_back(play(alive[2 * i], alive[2 * i + 1]));
      next.push_back(round.back().advanced);
    }
    for (int i = 2 * first_round_matches; i < m; ++i) {
      run.first_round_byes.push_back(alive[i]);
      next.push_back(alive[i]);
    }
    if (!round.empty()) run.rounds.push_back(std::move(round));
    alive = std::move(next);
  }
  while (alive.size() > 1) {
    std::vector<PairwiseMatch> round;
    std::vector<CandidateId> next;
    for (std::size_t i = 0; i + 1 < alive.size(); i += 2) {
      round.push_back(play(alive[i], alive[i + 1]));
      next.push_back(round.back().advanced);
    }
    run.rounds.push_back(std::move(round));
    alive = std::move(next);
  }
  run.champion = alive.front();

  // Phase 2: the champion must strictly beat all m-1 others; matches already
  // played are reread from the log, the rest are queried now.
  bool all_strict = true;
  for (CandidateId c = 0; c < m; ++c) {
    if (c == run.champion) continue;
    auto it = played.find({run.champion, c});
    Rational margin;
    bool reused = it != played.end();
    if (reused) {
      margin = it->second;
    } else {
      margin = margin_of(run.champion, c);
      ++run.queries_used;
    }
    bool strict = margin > half;
    all_strict = all_strict && strict;
    run.verification.push_back({c, margin, strict, reused});
  }
  if (all_strict) run.winner = run.champion;
  return run;
}

} // namespace votelab
