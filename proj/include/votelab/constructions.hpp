#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "votelab/combinatorics.hpp"
#include "votelab/profiles.hpp"
#include "votelab/queries.hpp"
#include "votelab/rules.hpp"
#include "votelab/scoring.hpp"

namespace votelab {

/// A pair of profiles that no query of size m-1 can tell apart even though
/// a's plurality score is 1/2^(m-2) on one side and 0 on the other. a and b
/// sit adjacent in every support ranking; swapping them yields the partner.
struct ParityPair {
  Profile profile;
  Profile swapped;
  CandidateId a;
  CandidateId b;
};

/// Exact enumeration of the branch outcomes: an unordered subset S of the
/// other candidates is drawn uniformly, ordered uniformly above the pair and
/// its complement uniformly below, with a before b exactly when |S| is even.
inline ParityPair parity_pair(const CandidateSet& candidates, CandidateId a, CandidateId b) {
  const int m = candidates.size();
  if (m < 2) throw std::invalid_argument("parity_pair: need at least two candidates");
  if (a == b) throw std::invalid_argument("parity_pair: a and b must differ");
  if (a < 0 || a >= m || b < 0 || b >= m) {
    throw std::invalid_argument("parity_pair: candidate out of range");
  }
  require_within_cap(m, "parity_pair");

  std::vector<CandidateId> rest;
  for (CandidateId c = 0; c < m; ++c) {
    if (c != a && c != b) rest.push_back(c);
  }
  const int k = static_cast<int>(rest.size());
  const Rational subset_weight(BigInt(1), BigInt(1) << k);

  std::map<Ranking, Rational> mass;
  for (unsigned long mask = 0; mask < (1ul << k); ++mask) {
    std::vector<CandidateId> above, below;
    for (int j = 0; j < k; ++j) {
      ((mask >> j) & 1ul ? above : below).push_back(rest[j]);
    }
    const bool even = above.size() % 2 == 0;
    const Rational weight =
        subset_weight / Rational(factorial(static_cast<int>(above.size())) *
                                 factorial(static_cast<int>(below.size())));
    for (const auto& top : all_orderings(above)) {
      for (const auto& bottom : all_orderings(below)) {
        std::vector<CandidateId> order = top;
        order.push_back(even ? a : b);
        order.push_back(even ? b : a);
        order.insert(order.end(), bottom.begin(), bottom.end());
        mass[Ranking(std::move(order))] += weight;
      }
    }
  }
  Profile profile(candidates, std::move(mass));
  Profile swapped = transpose_profile(profile, a, b);
  return ParityPair{std::move(profile), std::move(swapped), a, b};
}

/// One profile per candidate, all t-indistinguishable from uniform, where
/// that candidate is the unique argmax. Relabeling symmetrizes a base profile
/// whose a/b scores differ: each relabeling contributes the swapped base to
/// the family member its b lands on, and the plain base everywhere else.
struct WinnerFamily {
  ScoringVector alpha;
  int t = 0;
  CandidateId a = -1; // the higher-scoring of the input pair after orientation
  CandidateId b = -1;
  std::map<CandidateId, Profile> profiles;
  Profile uniform_reference;
};

inline WinnerFamily winner_family(const Profile& sigma, CandidateId a, CandidateId b,
                                  const ScoringVector& alpha, int t) {
  const int m = sigma.num_candidates();
  if (alpha.size() != m) throw std::invalid_argument("winner_family: weight count mismatch");
  if (a == b || a < 0 || b < 0 || a >= m || b >= m) {
    throw std::invalid_argument("winner_family: invalid candidate pair");
  }
  const Rational score_a = score(sigma, alpha, a);
  const Rational score_b = score(sigma, alpha, b);
  if (score_a == score_b) {
    throw std::invalid_argument("winner_family: a and b have equal scores");
  }
  if (score_a < score_b) std::swap(a, b); // orientation: a is the higher scorer
  Profile swapped = transpose_profile(sigma, a, b);
  if (!indistinguishable(sigma, swapped, t).indistinguishable) {
    throw std::invalid_argument("winner_family: pair is distinguishable at size " + std::to_string(t));
  }
  require_within_cap(m, "winner_family");

  std::vector<int> ids(m);
  for (int i = 0; i < m; ++i) ids[i] = i;
  const auto images = all_orderings(ids);
  const Rational each(1, static_cast<long long>(images.size()));

  // For family member c: sum of pi(swapped) over pi with pi(b) = c plus
  // pi(sigma) over the rest. The plain parts are shared, so accumulate the
  // total of all pi(sigma) once and patch per member.
  std::map<Ranking, Rational> plain_total;
  std::vector<std::map<Ranking, Rational>> plain_by_target(m), swapped_by_target(m);
  for (const auto& image : images) {
    const Permutation pi{image};
    const CandidateId target = pi(b);
    for (const auto& [ranking, weight] : sigma.support()) {
      Ranking moved = permute_ranking(pi, ranking);
      plain_total[moved] += each * weight;
      plain_by_target[target][std::move(moved)] += each * weight;
    }
    for (const auto& [ranking, weight] : swapped.support()) {
      swapped_by_target[target][permute_ranking(pi, ranking)] += each * weight;
    }
  }

  WinnerFamily family{alpha, t, a, b, {}, Profile(sigma.candidates(), plain_total)};
  for (CandidateId c = 0; c < m; ++c) {
    std::map<Ranking, Rational> mass = plain_total;
    for (const auto& [ranking, weight] : plain_by_target[c]) {
      mass[ranking] -= weight;
      if (mass[ranking].is_zero()) mass.erase(ranking);
    }
    for (const auto& [ranking, weight] : swapped_by_target[c]) mass[ranking] += weight;
    family.profiles.emplace(c, Profile(sigma.candidates(), std::move(mass)));
  }
  return family;
}

/// Plants the inner profile after the first index-1 candidates of the fixed
/// outer order: every support ranking is outer[0..index-2], then an inner
/// support ranking, then the rest of outer, keeping inner's masses.
inline Profile embedded_profile(const CandidateSet& ambient, std::vector<CandidateId> c1,
                                const std::vector<CandidateId>& c2_order, int index,
                                const Profile& inner) {
  const int m = ambient.size();
  std::sort(c1.begin(), c1.end());
  std::vector<bool> in_c1(m, false);
  for (CandidateId c : c1) {
    if (c < 0 || c >= m || in_c1[c]) throw std::invalid_argument("embedded_profile: bad subset");
    in_c1[c] = true;
  }
  if (static_cast<int>(c1.size() + c2_order.size()) != m) {
    throw std::invalid_argument("embedded_profile: subset and rest must partition the candidates");
  }
  std::vector<bool> seen(m, false);
  for (CandidateId c : c2_order) {
    if (c < 0 || c >= m || in_c1[c] || seen[c]) {
      throw std::invalid_argument("embedded_profile: rest must order the complement");
    }
    seen[c] = true;
  }
  const int slots = m - static_cast<int>(c1.size()) + 1;
  if (index < 1 || index > slots) throw std::invalid_argument("embedded_profile: index out of range");
  if (!(inner.candidates() == ambient.subset(c1))) {
    throw std::invalid_argument("embedded_profile: inner profile is not over the subset");
  }

  std::map<Ranking, Rational> mass;
  for (const auto& [ranking, weight] : inner.support()) {
    std::vector<CandidateId> order(c2_order.begin(), c2_order.begin() + (index - 1));
    for (CandidateId local : ranking.order) order.push_back(c1[local]);
    order.insert(order.end(), c2_order.begin() + (index - 1), c2_order.end());
    mass.emplace(Ranking(std::move(order)), weight);
  }
  return Profile(ambient, std::move(mass));
}

/// Witness that a scoring vector outside the size-t span produces a score gap
/// on one of the planted profiles: difference_vectors[i-1] is
/// pos(sigma^i, a) - pos(sigma^i, b), zero before position i with the
/// parity-pair plurality gap exactly at position i, and the vector at `index`
/// has nonzero dot product with alpha.
struct SeparationCertificate {
  int index = 0; // 1-based plant position with nonzero score gap
  std::vector<std::vector<Rational>> difference_vectors;
  Rational score_gap; // score(sigma^index, a) - score(sigma^index, b)
  CandidateId a = -1;
  CandidateId b = -1;
};

inline SeparationCertificate separating_index(const CandidateSet& candidates,
                                              const ScoringVector& alpha, int t,
                                              std::vector<CandidateId> c1,
                                              CandidateId a, CandidateId b) {
  const int m = candidates.size();
  if (alpha.size() != m) throw std::invalid_argument("separating_index: weight count mismatch");
  if (t < 1 || t >= m) throw std::invalid_argument("separating_index: t out of range");
  if (static_cast<int>(c1.size()) != t + 1) {
    throw std::invalid_argument("separating_index: subset must have size t+1");
  }
  if (span_membership(alpha, t).member) {
    throw std::invalid_argument("separating_index: vector is reachable at size t, nothing separates");
  }
  std::sort(c1.begin(), c1.end());
  if (!std::binary_search(c1.begin(), c1.end(), a) ||
      !std::binary_search(c1.begin(), c1.end(), b) || a == b) {
    throw std::invalid_argument("separating_index: a and b must be distinct subset members");
  }

  std::vector<CandidateId> c2;
  for (CandidateId c = 0; c < m; ++c) {
    if (!std::binary_search(c1.begin(), c1.end(), c)) c2.push_back(c);
  }
  const CandidateSet inner_set = candidates.subset(c1);
  const auto local = [&](CandidateId c) {
    return static_cast<CandidateId>(std::lower_bound(c1.begin(), c1.end(), c) - c1.begin());
  };
  const Profile inner = parity_pair(inner_set, local(a), local(b)).profile;

  SeparationCertificate cert;
  cert.a = a;
  cert.b = b;
  for (int i = 1; i <= m - t; ++i) {
    const Profile planted = embedded_profile(candidates, c1, c2, i, inner);
    const auto pos_a = pos_vector(planted, a);
    const auto pos_b = pos_vector(planted, b);
    std::vector<Rational> diff(m);
    Rational gap;
    for (int j = 0; j < m; ++j) {
      diff[j] = pos_a[j] - pos_b[j];
      gap += alpha[j] * diff[j];
    }
    cert.difference_vectors.push_back(std::move(diff));
    if (cert.index == 0 && !gap.is_zero()) {
      cert.index = i;
      cert.score_gap = gap;
    }
  }
  if (cert.index == 0) {
    throw std::logic_error("separating_index: no score gap found for a non-member vector");
  }
  return cert;
}

/// The family of profiles on which sequential plurality elimination provably
/// needs full-size queries: each member looks uniform to any size-(m-1)
/// query, yet its unique elimination winner is the designated candidate.
struct StvFamilyParams {
  std::vector<CandidateId> cycle; // next(cycle[i]) = cycle[i+1], wrapping
  std::vector<Ranking> loop_rankings; // first and last adjacent in the cycle
  Rational epsilon;
};

struct StvFamily {
  ScoringVector alpha; // negated plurality, drives the inner winner family
  StvFamilyParams params;
  std::map<CandidateId, Profile> profiles;
  Profile loop_uniform; // uniform over loop_rankings, the shared bulk
};

/// Builds the family over the canonical cycle. The bulk is uniform over
/// rankings whose last candidate follows their first in the cycle; an epsilon
/// admixture of the winner-family member for next(c) seeds the elimination
/// order next(c), next^2(c), ..., leaving c. Any epsilon strictly between 0
/// and the tie-breaking threshold (1-eps)/(m(m-1)) works; default 1/m^2.
inline StvFamily stv_family(const CandidateSet& candidates,
                            std::optional<Rational> epsilon = std::nullopt) {
  const int m = candidates.size();
  if (m < 3) throw std::invalid_argument("stv_family: need at least three candidates");
  require_within_cap(m, "stv_family");
  const Rational eps = epsilon.value_or(Rational(1, static_cast<long long>(m) * m));
  if (eps.sign() <= 0 || eps * Rational(static_cast<long long>(m) * (m - 1)) >= Rational(1) - eps) {
    throw std::invalid_argument("stv_family: epsilon must lie in (0, (1-eps)/(m(m-1)))");
  }

  std::vector<Rational> negated_plurality(m);
  negated_plurality[0] = -1;
  const ScoringVector alpha{std::move(negated_plurality)};

  const ParityPair pair = parity_pair(candidates, 0, 1);
  const WinnerFamily inner = winner_family(pair.profile, 0, 1, alpha, m - 1);

  StvFamilyParams params;
  params.epsilon = eps;
  params.cycle.resize(m);
  for (int c = 0; c < m; ++c) params.cycle[c] = c;
  for (const Ranking& r : all_rankings(candidates)) {
    if (r.order.back() == (r.order.front() + 1) % m) params.loop_rankings.push_back(r);
  }
  Profile loop_uniform = uniform_over(candidates, params.loop_rankings);

  StvFamily family{alpha, std::move(params), {}, std::move(loop_uniform)};
  for (CandidateId c = 0; c < m; ++c) {
    const CandidateId next = (c + 1) % m;
    family.profiles.emplace(
        c, mix({{inner.profiles.at(next), eps}, {family.loop_uniform, Rational(1) - eps}}));
  }
  return family;
}

/// A profile that answers every query not covering all of c1 with the exact
/// uniform distribution, while its unique winner under alpha is `winner`.
/// Certifies that queries smaller than the minimal reachable size learn
/// nothing.
struct QueryComplexityInstance {
  Profile profile;
  CandidateId winner;
  std::vector<CandidateId> c1;
  int plant_index; // separating position the base profile was planted at
  CandidateId a;   // the pair whose swap hides behind c1-fixing relabelings
  CandidateId b;
};

inline QueryComplexityInstance query_complexity_instance(const CandidateSet& candidates,
                                                         const ScoringVector& alpha, int t_star,
                                                         std::vector<CandidateId> c1) {
  const int m = candidates.size();
  if (alpha.size() != m) throw std::invalid_argument("query_complexity_instance: weight count mismatch");
  if (t_star != minimal_query_size(alpha)) {
    throw std::invalid_argument("query_complexity_instance: t_star is not the minimal query size");
  }
  if (t_star < 2) {
    throw std::invalid_argument("query_complexity_instance: constant-like vectors are reachable at size 1");
  }
  std::sort(c1.begin(), c1.end());
  if (static_cast<int>(c1.size()) != t_star) {
    throw std::invalid_argument("query_complexity_instance: subset must have size t_star");
  }
  require_within_cap(m, "query_complexity_instance");

  CandidateId a = c1[0];
  CandidateId b = c1[1];
  // alpha lies outside the size-(t_star - 1) span by minimality, so some
  // plant position separates a from b.
  const SeparationCertificate cert = separating_index(candidates, alpha, t_star - 1, c1, a, b);
  if (cert.score_gap.sign() < 0) std::swap(a, b); // orientation: a scores higher

  std::vector<CandidateId> c2;
  for (CandidateId c = 0; c < m; ++c) {
    if (!std::binary_search(c1.begin(), c1.end(), c)) c2.push_back(c);
  }
  const CandidateSet inner_set = candidates.subset(c1);
  const auto local = [&](CandidateId c) {
    return static_cast<CandidateId>(std::lower_bound(c1.begin(), c1.end(), c) - c1.begin());
  };
  const Profile inner = parity_pair(inner_set, local(a), local(b)).profile;
  const Profile base = embedded_profile(candidates, c1, c2, cert.index, inner);
  const Profile base_swapped = transpose_profile(base, a, b);

  std::vector<int> ids(m);
  for (int i = 0; i < m; ++i) ids[i] = i;
  const auto images = all_orderings(ids);
  const Rational each(1, static_cast<long long>(images.size()));

  std::map<Ranking, Rational> mass;
  for (const auto& image : images) {
    const Permutation pi{image};
    bool fixes_c1 = true;
    for (CandidateId c : c1) {
      if (pi(c) != c) { fixes_c1 = false; break; }
    }
    const Profile& branch = fixes_c1 ? base_swapped : base;
    for (const auto& [ranking, weight] : branch.support()) {
      mass[permute_ranking(pi, ranking)] += each * weight;
    }
  }
  return QueryComplexityInstance{Profile(candidates, std::move(mass)), b,
    std::move(c1), cert.index, a, b};
}

/// Tight ceiling on any size-t-query algorithm's chance of naming a winner
/// when it may also abstain with probability delta.
inline Rational bound_success_probability(const Rational& delta, int m, int t_star) {
  if (delta.sign() < 0 || delta > Rational(1)) {
    throw std::invalid_argument("bound_success_probability: delta must lie in [0,1]");
  }
  if (t_star < 2) throw std::invalid_argument("bound_success_probability: t_star must be at least 2");
  if (m < 2) throw std::invalid_argument("bound_success_probability: m must be at least 2");
  const Rational guess = delta + Rational(1, m);
  const Rational hedge = delta + (Rational(1) - delta) / Rational(t_star);
  return std::min(guess, hedge);
}

/// Three-candidate profile realizing prescribed pairwise margins
/// p1 = Pr[a beats b], p2 = Pr[b beats c], p3 = Pr[c beats a]. Each margin
/// must lie in [1/3, 2/3] for the six ranking masses to stay nonnegative.
inline Profile margins_to_profile(const Rational& p1, const Rational& p2, const Rational& p3) {
  const Rational lo(1, 3), hi(2, 3);
  for (const Rational* p : {&p1, &p2, &p3}) {
    if (*p < lo || *p > hi) {
      throw std::invalid_argument("margins_to_profile: margin outside [1/3, 2/3]");
    }
  }
  const CandidateSet abc = CandidateSet::with_default_labels(3);
  std::map<Ranking, Rational> mass;
  mass[Ranking({0, 1, 2})] = p2 - lo; // a b c
  mass[Ranking({0, 2, 1})] = hi - p2; // a c b
  mass[Ranking({1, 2, 0})] = p3 - lo; // b c a
  mass[Ranking({1, 0, 2})] = hi - p3; // b a c
  mass[Ranking({2, 0, 1})] = p1 - lo; // c a b
  mass[Ranking({2, 1, 0})] = hi - p1; // c b a
  return Profile(abc, std::move(mass));
}

/// Shifted Fibonacci numbers F_1 = 1, F_2 = 2, F_k = F_{k-1} + F_{k-2};
/// returns F_1..F_count. Capped where the sequence leaves 64-bit range.
inline std::vector<long long> shifted_fibonacci(int count) {
  if (count < 1 || count > 85) throw std::invalid_argument("shifted_fibonacci: count out of range");
  std::vector<long long> f(count);
  for (int k = 0; k < count; ++k) {
    f[k] = k == 0 ? 1 : (k == 1 ? 2 : f[k - 1] + f[k - 2]);
  }
  return f;
}

/// One cell of the hard three-candidate family: margins separated by
/// Fibonacci gaps so that single margins, and even pairs of margins, stay
/// consistent with several distinct winners.
struct FibonacciInstance {
  int n = 0;
  int i = 0;
  long long s = 0;
  int r = 0;
  std::vector<long long> scaled; // (phat_1, phat_2, phat_3)
  Rational p1, p2, p3;
  Profile profile;
  CandidateId declared_winner; // 0=a, 1=b, 2=c per the row's design
};

namespace detail {

/// Row r of the winner table: scaled margin offsets above s and the winner.
/// Offsets multiply as (o1, o2, o3) with o in {0, F_i, F_{i+1}, F_{i+2}}.
inline void fibonacci_row(int r, const std::vector<long long>& fib, int i,
                          long long offsets[3], CandidateId& winner) {
  const long long fi = fib[i - 1], fi1 = fib[i], fi2 = fib[i + 1];
  switch (r) {
    case 1: offsets[0] = fi2; offsets[1] = 0; offsets[2] = fi; winner = 0; break;
    case 2: offsets[0] = fi2; offsets[1] = 0; offsets[2] = fi1; winner = 2; break;
    case 3: offsets[0] = fi; offsets[1] = fi2; offsets[2] = 0; winner = 1; break;
    case 4: offsets[0] = fi1; offsets[1] = fi2; offsets[2] = 0; winner = 0; break;
    case 5: offsets[0] = 0; offsets[1] = fi; offsets[2] = fi2; winner = 2; break;
    case 6: offsets[0] = 0; offsets[1] = fi1; offsets[2] = fi2; winner = 1; break;
    default: throw std::invalid_argument("fibonacci row: r out of range");
  }
}

} // namespace detail

inline FibonacciInstance fibonacci_instance(int n, int i, long long s, int r) {
  if (n < 1 || n > 60) throw std::invalid_argument("fibonacci_instance: n out of range");
  const auto fib = shifted_fibonacci(n + 2);
  const long long f_n2 = fib[n + 1];
  if (i < 1 || i > n) throw std::invalid_argument("fibonacci_instance: i out of range");
  if (s < 0 || s > static_cast<long long>(n) * f_n2) {
    throw std::invalid_argument("fibonacci_instance: s out of range");
  }
  if (r < 1 || r > 6) throw std::invalid_argument("fibonacci_instance: r out of range");

  long long offsets[3];
  CandidateId winner = -1;
  detail::fibonacci_row(r, fib, i, offsets, winner);

  const long long scale = static_cast<long long>(n + 1) * f_n2;
  std::vector<long long> scaled;
  Rational margins[3];
  for (int j = 0; j < 3; ++j) {
    scaled.push_back(s + offsets[j]);
    margins[j] = Rational(1, 3) + Rational(scaled[j], 3 * scale);
  }
  Profile profile = margins_to_profile(margins[0], margins[1], margins[2]);
  return FibonacciInstance{n,          i,          s,          r,
                           std::move(scaled),      margins[0], margins[1],
                           margins[2], std::move(profile),     winner};
}

struct FibonacciTriple {
  int i = 0;
  long long s = 0;
  int r = 0;
  CandidateId winner = -1;
};

/// Every parameter triple whose row reproduces all observed scaled margins,
/// by exhaustive sweep of the full (i, s, r) grid; optionally only triples
/// with the given i. Order: ascending (i, s, r).
inline std::vector<FibonacciTriple> fibonacci_consistent_set(
    int n, std::optional<long long> phat1, std::optional<long long> phat2,
    std::optional<long long> phat3, std::optional<int> fixed_i = std::nullopt) {
  if (n < 1 || n > 60) throw std::invalid_argument("fibonacci_consistent_set: n out of range");
  if (!phat1 && !phat2 && !phat3) {
    throw std::invalid_argument("fibonacci_consistent_set: need at least one observed margin");
  }
  const auto fib = shifted_fibonacci(n + 2);
  const long long s_max = static_cast<long long>(n) * fib[n + 1];
  const std::optional<long long> observed[3] = {phat1, phat2, phat3};

  std::vector<FibonacciTriple> out;
  for (int i = 1; i <= n; ++i) {
    if (fixed_i && *fixed_i != i) continue;
    for (long long s = 0; s <= s_max; ++s) {
      for (int r = 1; r <= 6; ++r) {
        long long offsets[3];
        CandidateId winner = -1;
        detail::fibonacci_row(r, fib, i, offsets, winner);
        bool match = true;
        for (int j = 0; j < 3; ++j) {
          if (observed[j] && *observed[j] != s + offsets[j]) { match = false; break; }
        }
        if (match) out.push_back({i, s, r, winner});
      }
    }
  }
  return out;
}

} // namespace votelab
