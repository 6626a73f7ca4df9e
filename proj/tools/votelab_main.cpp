// Command-line front end: one subcommand per rule, verifier, and generator,
// plus CSV emission for figure data. Reports are line-oriented "key: value"
// text with rationals printed exactly as "p/q"; identical invocations produce
// byte-identical output (wall time appears only under --timing). Exit status
// is 0 iff every verification in the run passed.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include <votelab/votelab.hpp>

namespace votelab::cli {
namespace {

// ---------------------------------------------------------------------------
// Formatting

std::string join_candidates(const CandidateSet& cs, const std::set<CandidateId>& ids) {
  std::string out;
  for (CandidateId c : ids) {
    if (!out.empty()) out += ' ';
    out += cs.label(c);
  }
  return out.empty() ? "(none)" : out;
}

std::string join_subset(const CandidateSet& cs, const std::vector<CandidateId>& ids) {
  std::string out;
  for (CandidateId c : ids) {
    if (!out.empty()) out += ',';
    out += cs.label(c);
  }
  return out;
}

std::string join_rationals(const std::vector<Rational>& values, char sep) {
  std::string out;
  for (const Rational& v : values) {
    if (!out.empty()) out += sep;
    out += v.to_string();
  }
  return out;
}

std::string join_ints(const std::vector<int>& values, char sep) {
  std::string out;
  for (int v : values) {
    if (!out.empty()) out += sep;
    out += std::to_string(v);
  }
  return out;
}

std::string scores_line(const Profile& p, const std::map<CandidateId, Rational>& scores) {
  std::string out;
  for (const auto& [c, v] : scores) {
    if (!out.empty()) out += ' ';
    out += p.candidates().label(c) + "=" + v.to_string();
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

// ---------------------------------------------------------------------------
// Verification plumbing

struct Checker {
  bool all_ok = true;

  void check(bool ok, const std::string& label) {
    std::cout << (ok ? "PASS  " : "FAIL  ") << label << '\n';
    all_ok = all_ok && ok;
  }
};

int finish(const Checker& ck) {
  std::cout << "outcome: " << (ck.all_ok ? "pass" : "fail") << '\n';
  return ck.all_ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// Oracles shared by the verifiers: direct computations that never touch the
// query machinery, so agreement checks are meaningful.

Rational direct_pairwise(const Profile& p, CandidateId a, CandidateId b) {
  Rational total;
  for (const auto& [ranking, mass] : p.support()) {
    for (CandidateId c : ranking.order) {
      if (c == a) {
        total += mass;
        break;
      }
      if (c == b) break;
    }
  }
  return total;
}

std::optional<CandidateId> direct_condorcet(const Profile& p) {
  const int m = p.num_candidates();
  const Rational half(1, 2);
  for (CandidateId c = 0; c < m; ++c) {
    bool beats_all = true;
    for (CandidateId d = 0; d < m && beats_all; ++d) {
      if (d != c && !(direct_pairwise(p, c, d) > half)) beats_all = false;
    }
    if (beats_all) return c;
  }
  return std::nullopt;
}

int condorcet_query_budget(int m) {
  int log2 = 0;
  while ((1 << (log2 + 1)) <= m) ++log2;
  return 2 * m - log2 - 2;
}

Ranking random_ranking(std::mt19937_64& rng, int m) {
  std::vector<CandidateId> order(m);
  for (int i = 0; i < m; ++i) order[i] = i;
  for (int i = m - 1; i > 0; --i) {
    std::swap(order[i], order[static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1))]);
  }
  return Ranking(std::move(order));
}

Profile random_profile(std::mt19937_64& rng, int m) {
  std::map<Ranking, long long> weights;
  const int draws = 1 + static_cast<int>(rng() % 6);
  long long total = 0;
  for (int i = 0; i < draws; ++i) {
    const long long w = 1 + static_cast<long long>(rng() % 9);
    weights[random_ranking(rng, m)] += w;
    total += w;
  }
  std::map<Ranking, Rational> mass;
  for (const auto& [ranking, w] : weights) mass.emplace(ranking, Rational(w, total));
  return Profile(CandidateSet::with_default_labels(m), std::move(mass));
}

ScoringVector random_span_member(std::mt19937_64& rng, int m, int t) {
  const BasisFamily basis = BasisFamily::build(m, t);
  std::vector<Rational> weights(m);
  for (int k = 0; k < t; ++k) {
    const long long num = static_cast<long long>(rng() % 7) - 3;
    if (num == 0) continue;
    const Rational lambda(num, 1 + static_cast<long long>(rng() % 3));
    for (int j = 0; j < m; ++j) weights[j] += lambda * basis.vectors[k][j];
  }
  return ScoringVector(std::move(weights));
}

// ---------------------------------------------------------------------------
// Verifiers. Each prints PASS/FAIL lines through the checker; labels carry
// the parameters so a batch run stays readable.

void verify_hidden_pair(Checker& ck, int m) {
  const std::string tag = "hidden-pair m=" + std::to_string(m);
  const CandidateSet cs = CandidateSet::with_default_labels(m);
  const ParityPair pair = parity_pair(cs, 0, 1);
  const Rational expected(BigInt(1), BigInt(1) << (m - 2));
  ck.check(plurality_score(pair.profile, 0) == expected &&
               plurality_score(pair.profile, 1).is_zero(),
           tag + ": plurality scores are " + expected.to_string() + " and 0/1");
  ck.check(pair.swapped == transpose_profile(pair.profile, 0, 1),
           tag + ": second profile is the a<->b transposition of the first");
  ck.check(indistinguishable(pair.profile, pair.swapped, m - 1).indistinguishable,
           tag + ": every size-" + std::to_string(m - 1) + " view coincides");
  const auto full = indistinguishable(pair.profile, pair.swapped, m);
  ck.check(!full.indistinguishable && full.witness.has_value() &&
               full.witness->query.size() == m,
           tag + ": the full-size query separates the pair");
}

void verify_winner_family(Checker& ck, int m) {
  const std::string tag = "winner-family m=" + std::to_string(m);
  const CandidateSet cs = CandidateSet::with_default_labels(m);
  const ScoringVector alpha = preset("plurality", m);
  const WinnerFamily family = winner_family(parity_pair(cs, 0, 1).profile, 0, 1, alpha, m - 1);

  bool winners_ok = static_cast<int>(family.profiles.size()) == m;
  for (const auto& [c, profile] : family.profiles) {
    winners_ok = winners_ok && winners(profile, alpha) == std::set<CandidateId>{c};
  }
  ck.check(winners_ok, tag + ": each of the " + std::to_string(m) +
                           " members elects exactly its designated candidate");

  bool views_ok = true;
  for (const auto& subset : subsets_of_size(m, m - 1)) {
    const Profile reference_view = restrict_profile(family.uniform_reference, subset);
    for (const auto& [c, profile] : family.profiles) {
      views_ok = views_ok && restrict_profile(profile, subset) == reference_view;
    }
  }
  ck.check(views_ok, tag + ": every proper view of every member matches the shared reference");

  bool indist_ok = true;
  for (const auto& [c, profile] : family.profiles) {
    for (const auto& [d, other] : family.profiles) {
      if (c < d) {
        indist_ok = indist_ok && indistinguishable(profile, other, m - 1).indistinguishable;
      }
    }
  }
  ck.check(indist_ok, tag + ": members are pairwise indistinguishable below full size");
}

void verify_oracle_scoring(Checker& ck, int m, int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  bool scores_ok = true, winners_ok = true, counts_ok = true;
  for (int trial = 0; trial < trials; ++trial) {
    const Profile p = random_profile(rng, m);
    const int t = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(m));
    const ScoringVector alpha = random_span_member(rng, m, t);
    const CandidateId c = static_cast<CandidateId>(rng() % static_cast<std::uint64_t>(m));

    QuerySession session(p, t);
    scores_ok = scores_ok && score_via_queries(session, alpha, c) == score(p, alpha, c);
    winners_ok = winners_ok && winners_via_queries(session, alpha) == winners(p, alpha);
    counts_ok = counts_ok && BigInt(session.query_count()) <= binomial(m, t);
  }
  const std::string tag =
      "oracle-scoring m=" + std::to_string(m) + " trials=" + std::to_string(trials);
  ck.check(scores_ok, tag + ": query-driven scores equal direct scores");
  ck.check(winners_ok, tag + ": query-driven winner sets equal direct winner sets");
  ck.check(counts_ok, tag + ": no run exceeds one query per size-t subset");
}

void verify_span_boundary(Checker& ck, int max_m) {
  bool plurality_ok = true, veto_ok = true, borda_ok = true;
  bool nesting_ok = true, triangular_ok = true;
  for (int m = 2; m <= max_m; ++m) {
    const ScoringVector plu = preset("plurality", m);
    const ScoringVector veto = preset("veto", m);
    const ScoringVector borda = preset("borda", m);
    for (int t = 1; t < m; ++t) {
      const SpanDecision plu_decision = span_membership(plu, t);
      plurality_ok = plurality_ok && !plu_decision.member && !plu_decision.residual.empty();
      veto_ok = veto_ok && !span_membership(veto, t).member;
      if (t >= 2) borda_ok = borda_ok && span_membership(borda, t).member;
    }
    plurality_ok = plurality_ok && span_membership(plu, m).member;
    veto_ok = veto_ok && span_membership(veto, m).member;
    for (int t = 1; t < m; ++t) {
      for (int k = 1; k <= t; ++k) {
        nesting_ok = nesting_ok && span_membership(basis_vector(m, t, k), t + 1).member;
      }
    }
    for (int t = 1; t <= m; ++t) {
      for (int k = 1; k <= t; ++k) {
        const ScoringVector gen = basis_vector(m, t, k);
        for (int j = 0; j < k - 1; ++j) triangular_ok = triangular_ok && gen[j].is_zero();
        triangular_ok = triangular_ok && gen[k - 1].sign() > 0;
      }
    }
  }
  const std::string tag = "span-boundary m<=" + std::to_string(max_m);
  ck.check(plurality_ok, tag + ": plurality needs full-size queries (nonzero residual below m)");
  ck.check(veto_ok, tag + ": veto needs full-size queries");
  ck.check(borda_ok, tag + ": borda is reachable from size-2 queries up");
  ck.check(nesting_ok, tag + ": size-t spans nest inside size-(t+1) spans");
  ck.check(triangular_ok, tag + ": basis vectors are triangular with positive diagonal");
}

void verify_separation(Checker& ck, int m) {
  const CandidateSet cs = CandidateSet::with_default_labels(m);
  const int t = m - 1;
  std::vector<CandidateId> c1(m);
  for (int i = 0; i < m; ++i) c1[i] = i;
  const Rational diagonal(BigInt(1), BigInt(1) << (t - 1));

  for (const std::string rule : {"plurality", "veto"}) {
    const std::string tag = "separation " + rule + " m=" + std::to_string(m);
    const ScoringVector alpha = preset(rule, m);
    const SeparationCertificate cert = separating_index(cs, alpha, t, c1, 0, 1);
    bool shape_ok = cert.index >= 1 && cert.index <= m - t;
    for (std::size_t i = 0; i < cert.difference_vectors.size(); ++i) {
      const auto& diff = cert.difference_vectors[i];
      for (std::size_t j = 0; j + 1 < i + 1; ++j) shape_ok = shape_ok && diff[j].is_zero();
      shape_ok = shape_ok && diff[i] == diagonal;
    }
    ck.check(shape_ok, tag + ": difference vectors are triangular with diagonal " +
                           diagonal.to_string());

    Rational rebuilt;
    const auto& diff = cert.difference_vectors[cert.index - 1];
    for (int j = 0; j < m; ++j) rebuilt += alpha[j] * diff[j];
    ck.check(rebuilt == cert.score_gap && !cert.score_gap.is_zero(),
             tag + ": certificate index " + std::to_string(cert.index) +
                 " carries score gap " + cert.score_gap.to_string());
  }
}

void verify_elimination_family(Checker& ck, int m) {
  const std::string tag = "elimination-family m=" + std::to_string(m);
  const CandidateSet cs = CandidateSet::with_default_labels(m);
  const StvFamily family = stv_family(cs);

  bool winners_ok = static_cast<int>(family.profiles.size()) == m;
  for (const auto& [c, profile] : family.profiles) {
    winners_ok = winners_ok && stv_winners(profile).winners == std::set<CandidateId>{c};
  }
  ck.check(winners_ok, tag + ": each member drives elimination to its designated survivor");

  bool indist_ok = true;
  for (const auto& [c, profile] : family.profiles) {
    for (const auto& [d, other] : family.profiles) {
      if (c < d) {
        indist_ok = indist_ok && indistinguishable(profile, other, m - 1).indistinguishable;
      }
    }
  }
  ck.check(indist_ok, tag + ": members are pairwise indistinguishable below full size");
}

void verify_hard_instance(Checker& ck) {
  const std::string tag = "hard-instance borda m=4";
  const int m = 4;
  const CandidateSet cs = CandidateSet::with_default_labels(m);
  const ScoringVector borda = preset("borda", m);
  const QueryComplexityInstance inst = query_complexity_instance(cs, borda, 2, {0, 1});

  ck.check(winners(inst.profile, borda) == std::set<CandidateId>{inst.winner} &&
               inst.winner == inst.b && inst.winner != inst.a,
           tag + ": the planted transposition demotes one candidate to a unique loser");

  const Profile uniform = uniform_profile(cs);
  bool views_ok = true;
  for (int size = 1; size < m; ++size) {
    for (const auto& subset : subsets_of_size(m, size)) {
      const bool contains_pair =
          std::binary_search(subset.begin(), subset.end(), inst.c1[0]) &&
          std::binary_search(subset.begin(), subset.end(), inst.c1[1]);
      if (contains_pair) continue;
      views_ok = views_ok &&
                 restrict_profile(inst.profile, subset) == restrict_profile(uniform, subset);
    }
  }
  ck.check(views_ok, tag + ": every query missing part of the planted pair sees uniform");

  bool bound_ok = true;
  for (int bm = 2; bm <= 5; ++bm) {
    for (int t_star = 2; t_star <= bm; ++t_star) {
      Rational previous(-1);
      for (int j = 0; j <= 20; ++j) {
        const Rational delta(j, 20);
        const Rational bound = bound_success_probability(delta, bm, t_star);
        bound_ok = bound_ok && bound >= previous && bound >= delta;
        previous = bound;
      }
      bound_ok = bound_ok && bound_success_probability(Rational(1), bm, t_star) == Rational(1);
      const Rational at_zero = bound_success_probability(Rational(0), bm, t_star);
      bound_ok = bound_ok && at_zero == std::min(Rational(1, bm), Rational(1, t_star));
    }
  }
  ck.check(bound_ok, tag + ": the success bound is monotone, anchored at min(1/m, 1/t*) and 1");
}

void verify_near_ties(Checker& ck, int n) {
  if (n < 2) throw std::invalid_argument("verify near-ties: need n >= 2");
  const std::string tag = "near-ties n=" + std::to_string(n);
  const ScoringVector alpha({Rational(1), Rational(0), Rational(-1)});
  const auto fib = shifted_fibonacci(n + 2);
  const long long s_max = static_cast<long long>(n) * fib[n + 1];

  bool sweep_ok = true;
  long long instances = 0;
  for (int i = 1; i <= n; ++i) {
    for (long long s = 0; s <= s_max; ++s) {
      for (int r = 1; r <= 6; ++r) {
        const FibonacciInstance inst = fibonacci_instance(n, i, s, r);
        sweep_ok = sweep_ok &&
                   winners(inst.profile, alpha) == std::set<CandidateId>{inst.declared_winner};
        sweep_ok = sweep_ok && direct_pairwise(inst.profile, 0, 1) == inst.p1 &&
                   direct_pairwise(inst.profile, 1, 2) == inst.p2 &&
                   direct_pairwise(inst.profile, 2, 0) == inst.p3;
        ++instances;
      }
    }
  }
  ck.check(sweep_ok, tag + ": all " + std::to_string(instances) +
                         " grid instances elect their declared winner with exact margins");

  const auto winner_multiset = [](const std::vector<FibonacciTriple>& triples) {
    std::multiset<CandidateId> out;
    for (const auto& t : triples) out.insert(t.winner);
    return out;
  };

  // One observed margin with the gap index pinned leaves every row alive.
  const auto single = fibonacci_consistent_set(n, 5, std::nullopt, std::nullopt, 1);
  ck.check(single.size() == 6 &&
               winner_multiset(single) == std::multiset<CandidateId>{0, 0, 1, 1, 2, 2},
           tag + ": one margin with pinned gap index admits 6 parameter triples, "
                 "every candidate twice");

  // Two margins whose gap is a Fibonacci leading pair still admit two winners.
  const auto pair = fibonacci_consistent_set(n, 5, 2, std::nullopt);
  ck.check(pair.size() == 2 && winner_multiset(pair) == std::multiset<CandidateId>{0, 2},
           tag + ": a gap matching a leading Fibonacci pair leaves two consistent winners");

  // A different two-margin observation is consistent with all three winners.
  const auto wide = fibonacci_consistent_set(n, 4, 6, std::nullopt);
  ck.check(wide.size() == 4 && winner_multiset(wide) == std::multiset<CandidateId>{0, 1, 1, 2},
           tag + ": two observed margins can stay consistent with all three winners");
}

void verify_tournament(Checker& ck, int max_m, int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  bool agree_ok = true, budget_ok = true, size_ok = true;
  for (int m = 2; m <= max_m; ++m) {
    for (int trial = 0; trial < trials; ++trial) {
      const Profile p = random_profile(rng, m);
      QuerySession session(p, 2);
      const CondorcetRun run = condorcet_via_queries(session);
      agree_ok = agree_ok && run.winner == direct_condorcet(p);
      budget_ok = budget_ok && run.queries_used <= condorcet_query_budget(m);
      for (const Query& q : session.log()) size_ok = size_ok && q.size() <= 2;
    }
  }
  const std::string tag = "tournament m<=" + std::to_string(max_m) + " trials=" +
                          std::to_string(trials);
  ck.check(agree_ok, tag + ": bracket-plus-verification agrees with the direct pairwise scan");
  ck.check(budget_ok, tag + ": every run stays within 2m - floor(log2 m) - 2 queries");
  ck.check(size_ok, tag + ": only size-2 queries are ever issued");
}

void verify_covering(Checker& ck, int max_m) {
  const std::string tag = "covering m<=" + std::to_string(max_m);
  bool bound_ok = true, greedy_ok = true, exact_ok = true, degenerate_ok = true;
  for (int m = 2; m <= max_m; ++m) {
    for (int t = 1; t <= m; ++t) {
      for (int t_star = 1; t_star <= t; ++t_star) {
        const CoverBound bound = cover_lower_bound(m, t, t_star);
        bound_ok = bound_ok &&
                   bound.ratio == Rational(binomial(m, t_star), binomial(t, t_star));

        const CoverInstance greedy = greedy_cover(m, t, t_star);
        greedy_ok = greedy_ok && is_cover(greedy).covered &&
                    BigInt(greedy.sets.size()) >= bound.ceiling;

        if (binomial(m, t) <= 20) {
          const CoverInstance exact = exact_cover(m, t, t_star);
          exact_ok = exact_ok && is_cover(exact).covered &&
                     BigInt(exact.sets.size()) >= bound.ceiling &&
                     exact.sets.size() <= greedy.sets.size();
          if (t_star == t) {
            degenerate_ok = degenerate_ok && BigInt(exact.sets.size()) == binomial(m, t);
          }
        }
      }
    }
  }
  ck.check(bound_ok, tag + ": the counting bound equals C(m,t*)/C(t,t*)");
  ck.check(greedy_ok, tag + ": greedy covers are valid and never beat the bound");
  ck.check(exact_ok, tag + ": exact covers sit between the bound and greedy");
  ck.check(degenerate_ok, tag + ": t* = t forces all C(m,t) sets");
}

void verify_invariants(Checker& ck, int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::string tag = "invariants trials=" + std::to_string(trials);

  bool ok = true;
  for (int trial = 0; trial < trials; ++trial) {
    const int m = 3 + static_cast<int>(rng() % 4);
    const Profile p = random_profile(rng, m);
    const int k1 = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(m));
    std::vector<CandidateId> pool(m);
    for (int i = 0; i < m; ++i) pool[i] = i;
    for (int i = m - 1; i > 0; --i) {
      std::swap(pool[i], pool[static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1))]);
    }
    std::vector<CandidateId> s1(pool.begin(), pool.begin() + k1);
    std::sort(s1.begin(), s1.end());
    const int k2 = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(k1));
    std::vector<CandidateId> s2(s1.begin(), s1.begin() + k2);
    std::vector<CandidateId> s2_local(k2);
    for (int i = 0; i < k2; ++i) s2_local[i] = i;
    ok = ok && restrict_profile(restrict_profile(p, s1), s2_local) == restrict_profile(p, s2);
  }
  ck.check(ok, tag + ": restricting in stages equals restricting once");

  ok = true;
  for (int trial = 0; trial < trials; ++trial) {
    const int m = 2 + static_cast<int>(rng() % 5);
    const Profile p = random_profile(rng, m);
    const CandidateId a = static_cast<CandidateId>(rng() % static_cast<std::uint64_t>(m));
    const CandidateId b =
        static_cast<CandidateId>((a + 1 + rng() % static_cast<std::uint64_t>(m - 1)) % m);
    ok = ok && transpose_profile(transpose_profile(p, a, b), a, b) == p;
  }
  ck.check(ok, tag + ": transposing twice is the identity");

  ok = true;
  for (int trial = 0; trial < trials; ++trial) {
    const int m = 2 + static_cast<int>(rng() % 5);
    const Profile p = random_profile(rng, m);
    const ScoringVector alpha = random_span_member(rng, m, m);
    const Rational slope(1 + static_cast<long long>(rng() % 5),
                         1 + static_cast<long long>(rng() % 3));
    const Rational shift(static_cast<long long>(rng() % 9) - 4);
    std::vector<Rational> rescaled;
    for (int j = 0; j < m; ++j) rescaled.push_back(slope * alpha[j] + shift);
    ok = ok && winners(p, alpha) == winners(p, ScoringVector(std::move(rescaled)));
  }
  ck.check(ok, tag + ": positive affine rescaling preserves winner sets");

  ok = true;
  for (int trial = 0; trial < trials; ++trial) {
    const int m = 3 + static_cast<int>(rng() % 3);
    Profile p = mix({{random_profile(rng, m), Rational(1, 3)},
                     {random_profile(rng, m), Rational(2, 3)}});
    std::vector<CandidateId> image(m);
    for (int i = 0; i < m; ++i) image[i] = i;
    for (int i = m - 1; i > 0; --i) {
      std::swap(image[i], image[static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1))]);
    }
    p = permute_profile(Permutation(std::move(image)), p);
    const int k = 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(m - 1));
    std::vector<CandidateId> subset(k);
    for (int i = 0; i < k; ++i) subset[i] = i;
    p = restrict_profile(p, subset);
    Rational total;
    for (const auto& [ranking, mass] : p.support()) {
      total += mass;
      ok = ok && mass.sign() > 0;
    }
    ok = ok && total == Rational(1);
  }
  ck.check(ok, tag + ": mass stays positive and sums to one through mix/permute/restrict");

  ok = true;
  for (int trial = 0; trial < trials; ++trial) {
    const int m = 3 + static_cast<int>(rng() % 4);
    const CandidateSet cs = CandidateSet::with_default_labels(m);
    const CandidateId a = static_cast<CandidateId>(rng() % static_cast<std::uint64_t>(m));
    const CandidateId b =
        static_cast<CandidateId>((a + 1 + rng() % static_cast<std::uint64_t>(m - 1)) % m);
    const ParityPair pair = parity_pair(cs, a, b);
    for (int t = 1; t < m; ++t) {
      ok = ok && indistinguishable(pair.profile, pair.swapped, t).indistinguishable;
    }
  }
  ck.check(ok, tag + ": indistinguishability at t-1 follows from indistinguishability at t");
}

// ---------------------------------------------------------------------------
// CSV emitters

std::vector<std::vector<int>> compositions(int total, int parts) {
  std::vector<std::vector<int>> out;
  std::vector<int> current(parts);
  const std::function<void(int, int)> descend = [&](int index, int left) {
    if (index == parts - 1) {
      current[index] = left;
      out.push_back(current);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      current[index] = v;
      descend(index + 1, left - v);
    }
  };
  descend(0, total);
  return out;
}

std::string emit_simplex_csv(int m, std::optional<int> only_t, int grid) {
  if (grid < 1) throw std::invalid_argument("simplex: grid must be positive");
  if (binomial(grid + m - 1, m - 1) > 20000) {
    throw std::invalid_argument("simplex: grid too fine for m=" + std::to_string(m));
  }
  std::ostringstream csv;
  csv << "kind,t,k,vector,normalized,tstar\n";
  for (int t = 1; t <= m; ++t) {
    if (only_t && *only_t != t) continue;
    for (int k = 1; k <= t; ++k) {
      const ScoringVector gen = basis_vector(m, t, k);
      const SimplexPoint point = simplex_coordinates(gen);
      csv << "basis," << t << ',' << k << ',' << join_rationals(gen.weights(), ';') << ','
          << (point.constant ? "constant" : join_rationals(point.coordinates, ';')) << ','
          << minimal_query_size(gen) << '\n';
    }
  }
  for (const auto& lattice : compositions(grid, m)) {
    std::vector<Rational> weights;
    weights.reserve(m);
    for (int v : lattice) weights.emplace_back(v, grid);
    const ScoringVector alpha(std::move(weights));
    const SimplexPoint point = simplex_coordinates(alpha);
    csv << "grid,,," << join_rationals(alpha.weights(), ';') << ','
        << (point.constant ? "constant" : join_rationals(point.coordinates, ';')) << ','
        << minimal_query_size(alpha) << '\n';
  }
  return csv.str();
}

/// Rows of the best achievable success probability against the counting
/// baseline of guessing uniformly at random.
std::string emit_bound_curve(int m, int t_star, int grid) {
  if (m < 2 || t_star < 2 || t_star > m) {
    throw std::invalid_argument("bound-curve: need 2 <= t* <= m");
  }
  if (grid < 1) throw std::invalid_argument("bound-curve: grid must be positive");
  const Rational naive(1, m);
  std::ostringstream csv;
  csv << "delta,bound,naive\n";
  for (int j = 0; j <= grid; ++j) {
    const Rational delta(j, grid);
    csv << delta.to_string() << ',' << bound_success_probability(delta, m, t_star).to_string()
        << ',' << naive.to_string() << '\n';
  }
  return csv.str();
}

void emit_csv(const std::string& command, const std::string& csv,
              const std::optional<std::string>& out_path) {
  if (!out_path) {
    std::cout << csv;
    return;
  }
  write_text(*out_path, csv);
  long long rows = -1; // header does not count
  for (char c : csv) rows += c == '\n';
  std::cout << "command: " << command << '\n'
            << "rows: " << rows << '\n'
            << "written: " << *out_path << '\n';
}

// ---------------------------------------------------------------------------
// Subcommand bodies

int run_score(const std::string& profile_path, const std::string& rule,
              const std::string& alpha_text) {
  const Profile p = load_profile(profile_path);
  const ScoringVector alpha =
      rule.empty() ? parse_scoring_vector(alpha_text) : preset(rule, p.num_candidates());
  if (alpha.size() != p.num_candidates()) {
    throw std::invalid_argument("score: weight count does not match the profile");
  }
  std::cout << "command: score\n"
            << "profile: " << profile_path << '\n'
            << "alpha: " << scoring_vector_to_string(alpha) << '\n';
  for (CandidateId c = 0; c < p.num_candidates(); ++c) {
    std::cout << "score " << p.candidates().label(c) << ": "
              << score(p, alpha, c).to_string() << '\n';
  }
  const auto winner_set = winners(p, alpha);
  std::cout << "winners: " << join_candidates(p.candidates(), winner_set) << '\n';
  // Set-valued rules; the single line below is presentation-only tie-breaking
  // by candidate order.
  std::cout << "first-winner: " << p.candidates().label(*winner_set.begin()) << '\n'
            << "tstar: " << minimal_query_size(alpha) << '\n';
  return 0;
}

int run_stv(const std::string& profile_path) {
  const Profile p = load_profile(profile_path);
  const StvResult result = stv_winners(p);
  std::cout << "command: stv\n"
            << "profile: " << profile_path << '\n'
            << "winners: " << join_candidates(p.candidates(), result.winners) << '\n'
            << "first-winner: " << p.candidates().label(*result.winners.begin()) << '\n';
  for (const auto& [winner, trace] : result.traces) {
    std::cout << "trace for " << p.candidates().label(winner) << ":\n";
    for (const auto& step : trace.steps) {
      std::cout << "  eliminate " << p.candidates().label(step.eliminated) << "  ("
                << scores_line(p, step.plurality) << ")\n";
    }
    std::cout << "  winner " << p.candidates().label(trace.winner) << '\n';
  }
  return 0;
}

int run_condorcet(const std::string& profile_path) {
  const Profile p = load_profile(profile_path);
  QuerySession session(p, 2);
  const CondorcetRun run = condorcet_via_queries(session);
  const CandidateSet& cs = p.candidates();

  std::cout << "command: condorcet\n"
            << "profile: " << profile_path << '\n';
  if (!run.first_round_byes.empty()) {
    std::string byes;
    for (CandidateId c : run.first_round_byes) {
      if (!byes.empty()) byes += ' ';
      byes += cs.label(c);
    }
    std::cout << "first-round byes: " << byes << '\n';
  }
  for (std::size_t round = 0; round < run.rounds.size(); ++round) {
    for (const auto& match : run.rounds[round]) {
      std::cout << "round " << round + 1 << ": " << cs.label(match.first) << " vs "
                << cs.label(match.second) << " -> " << cs.label(match.advanced)
                << "  (margin " << match.margin.to_string()
                << (match.strict ? ", strict" : ", tie broken by order") << ")\n";
    }
  }
  std::cout << "champion: " << cs.label(run.champion) << '\n';
  for (const auto& check : run.verification) {
    std::cout << "check vs " << cs.label(check.opponent) << ": margin "
              << check.margin.to_string() << (check.strict ? ", strict" : ", not strict")
              << (check.reused ? ", reused" : "") << '\n';
  }
  std::cout << "winner: " << (run.winner ? cs.label(*run.winner) : "(none)") << '\n'
            << "queries-used: " << run.queries_used << '\n'
            << "budget: " << condorcet_query_budget(p.num_candidates()) << '\n';
  return 0;
}

int run_span(const std::string& alpha_text, int t) {
  const ScoringVector alpha = parse_scoring_vector(alpha_text);
  const SpanDecision decision = span_membership(alpha, t);
  std::cout << "command: span\n"
            << "alpha: " << scoring_vector_to_string(alpha) << '\n'
            << "t: " << t << '\n'
            << "member: " << (decision.member ? "yes" : "no") << '\n';
  if (decision.member) {
    std::cout << "coefficients: " << join_rationals(decision.coefficients, ',') << '\n';
  } else {
    std::cout << "residual: " << join_rationals(decision.residual, ',') << '\n';
  }
  return 0;
}

int run_tstar(const std::string& alpha_text) {
  const ScoringVector alpha = parse_scoring_vector(alpha_text);
  std::cout << "command: tstar\n"
            << "alpha: " << scoring_vector_to_string(alpha) << '\n'
            << "tstar: " << minimal_query_size(alpha) << '\n';
  return 0;
}

int run_indist(const std::string& first_path, const std::string& second_path, int t) {
  const Profile first = load_profile(first_path);
  const Profile second = load_profile(second_path);
  const IndistinguishabilityReport report = indistinguishable(first, second, t);
  std::cout << "command: indist\n"
            << "first: " << first_path << '\n'
            << "second: " << second_path << '\n'
            << "t: " << t << '\n'
            << "indistinguishable: " << (report.indistinguishable ? "yes" : "no") << '\n';
  if (report.witness) {
    const Profile view = restrict_profile(first, report.witness->query.subset);
    std::cout << "witness-query: " << join_subset(first.candidates(), report.witness->query.subset)
              << '\n'
              << "witness-ranking: " << ranking_to_string(view.candidates(), report.witness->ranking)
              << '\n'
              << "mass-first: " << report.witness->mass_first.to_string() << '\n'
              << "mass-second: " << report.witness->mass_second.to_string() << '\n';
  }
  return 0;
}

int run_query(const std::string& profile_path, int t, const std::vector<std::string>& subsets,
              const std::optional<std::string>& out_path) {
  const Profile p = load_profile(profile_path);
  QuerySession session(p, t);
  for (const std::string& text : subsets) {
    session.query(Query(parse_subset(p.candidates(), text)));
  }
  const std::string doc = transcript_to_json(session).dump(2) + "\n";
  if (out_path) {
    write_text(*out_path, doc);
    std::cout << "command: query\n"
              << "queries: " << session.query_count() << '\n'
              << "written: " << *out_path << '\n';
  } else {
    std::cout << doc;
  }
  return 0;
}

int run_sample(const std::string& profile_path, int t, const std::string& subset_text,
               int num_samples, std::uint64_t seed, const std::optional<std::string>& out_path) {
  const Profile p = load_profile(profile_path);
  SampledSession session(p, t, seed);
  const Query q(parse_subset(p.candidates(), subset_text));
  const SampledSession::SampleResult result = session.sample_query(q, num_samples);
  Json doc;
  doc["subset"] = Json::array();
  for (CandidateId c : q.subset) doc["subset"].push_back(p.candidates().label(c));
  doc["samples"] = num_samples;
  doc["seed"] = seed;
  doc["empirical"] = profile_to_json(result.empirical);
  doc["tv_distance"] = result.tv_distance.to_string();
  const std::string text = doc.dump(2) + "\n";
  if (out_path) {
    write_text(*out_path, text);
    std::cout << "command: sample\n"
              << "tv-distance: " << result.tv_distance.to_string() << '\n'
              << "written: " << *out_path << '\n';
  } else {
    std::cout << text;
  }
  return 0;
}

// Generators: emit profile files plus a self-check report; nonzero exit when
// the emitted construction fails its own property.

int run_gen_parity_pair(int m, const std::string& out_prefix) {
  const CandidateSet cs = CandidateSet::with_default_labels(m);
  const ParityPair pair = parity_pair(cs, 0, 1);
  const std::string first_path = out_prefix + ".json";
  const std::string swapped_path = out_prefix + ".swapped.json";
  save_profile(pair.profile, first_path);
  save_profile(pair.swapped, swapped_path);
  std::cout << "command: gen parity-pair\n"
            << "m: " << m << '\n'
            << "written: " << first_path << ' ' << swapped_path << '\n'
            << "plurality a: " << plurality_score(pair.profile, 0).to_string() << '\n'
            << "plurality b: " << plurality_score(pair.profile, 1).to_string() << '\n';
  Checker ck;
  verify_hidden_pair(ck, m);
  return finish(ck);
}

int run_gen_winner_family(int m, const std::string& rule, const std::string& alpha_text,
                          const std::string& out_prefix) {
  const CandidateSet cs = CandidateSet::with_default_labels(m);
  const ScoringVector alpha =
      rule.empty() && alpha_text.empty() ? preset("plurality", m)
      : rule.empty()                     ? parse_scoring_vector(alpha_text)
                                         : preset(rule, m);
  const WinnerFamily family = winner_family(parity_pair(cs, 0, 1).profile, 0, 1, alpha, m - 1);
  std::cout << "command: gen winner-family\n"
            << "m: " << m << '\n'
            << "alpha: " << scoring_vector_to_string(alpha) << '\n'
            << "t: " << family.t << '\n';

  Checker ck;
  for (const auto& [c, profile] : family.profiles) {
    const std::string path = out_prefix + "." + cs.label(c) + ".json";
    save_profile(profile, path);
    const auto winner_set = winners(profile, alpha);
    std::cout << "member " << cs.label(c) << ": " << path << "  winners "
              << join_candidates(cs, winner_set) << '\n';
    ck.check(winner_set == std::set<CandidateId>{c},
             "winner-family member " + cs.label(c) + " elects exactly " + cs.label(c));
  }
  const std::string reference_path = out_prefix + ".reference.json";
  save_profile(family.uniform_reference, reference_path);
  std::cout << "reference: " << reference_path << '\n';

  bool indist_ok = true;
  for (const auto& [c, profile] : family.profiles) {
    for (const auto& [d, other] : family.profiles) {
      if (c < d) {
        indist_ok = indist_ok && indistinguishable(profile, other, m - 1).indistinguishable;
      }
    }
  }
  ck.check(indist_ok, "winner-family members are pairwise indistinguishable below full size");
  return finish(ck);
}

int run_gen_stv_family(int m, const std::string& epsilon_text, const std::string& out_prefix) {
  const CandidateSet cs = CandidateSet::with_default_labels(m);
  const std::optional<Rational> epsilon =
      epsilon_text.empty() ? std::nullopt
                           : std::optional<Rational>(Rational::parse(epsilon_text));
  const StvFamily family = stv_family(cs, epsilon);
  std::cout << "command: gen stv-family\n"
            << "m: " << m << '\n'
            << "epsilon: " << family.params.epsilon.to_string() << '\n';

  Checker ck;
  for (const auto& [c, profile] : family.profiles) {
    const std::string path = out_prefix + "." + cs.label(c) + ".json";
    save_profile(profile, path);
    const StvResult result = stv_winners(profile);
    std::cout << "member " << cs.label(c) << ": " << path << "  winners "
              << join_candidates(cs, result.winners) << '\n';
    ck.check(result.winners == std::set<CandidateId>{c},
             "stv-family member " + cs.label(c) + " survives elimination alone");
  }
  const std::string loop_path = out_prefix + ".loop.json";
  save_profile(family.loop_uniform, loop_path);
  std::cout << "loop-uniform: " << loop_path << '\n';

  bool indist_ok = true;
  for (const auto& [c, profile] : family.profiles) {
    for (const auto& [d, other] : family.profiles) {
      if (c < d) {
        indist_ok = indist_ok && indistinguishable(profile, other, m - 1).indistinguishable;
      }
    }
  }
  ck.check(indist_ok, "stv-family members are pairwise indistinguishable below full size");
  return finish(ck);
}

int run_gen_query_instance(int m, const std::string& c1_text, const std::string& rule,
                           const std::string& alpha_text, const std::string& out_path) {
  const CandidateSet cs = CandidateSet::with_default_labels(m);
  const ScoringVector alpha =
      rule.empty() && alpha_text.empty() ? preset("borda", m)
      : rule.empty()                     ? parse_scoring_vector(alpha_text)
                                         : preset(rule, m);
  std::vector<CandidateId> c1 = parse_subset(cs, c1_text);
  std::sort(c1.begin(), c1.end());
  const QueryComplexityInstance inst =
      query_complexity_instance(cs, alpha, minimal_query_size(alpha), c1);
  save_profile(inst.profile, out_path);

  std::cout << "command: gen query-instance\n"
            << "m: " << m << '\n'
            << "alpha: " << scoring_vector_to_string(alpha) << '\n'
            << "c1: " << join_subset(cs, inst.c1) << '\n'
            << "planted-index: " << inst.plant_index << '\n'
            << "demoted: " << cs.label(inst.a) << '\n'
            << "winner: " << cs.label(inst.winner) << '\n'
            << "written: " << out_path << '\n';

  Checker ck;
  ck.check(winners(inst.profile, alpha) == std::set<CandidateId>{inst.winner},
           "query-instance elects a unique winner");
  const Profile uniform = uniform_profile(cs);
  bool views_ok = true;
  for (int size = 1; size < m; ++size) {
    for (const auto& subset : subsets_of_size(m, size)) {
      bool contains_all = true;
      for (CandidateId c : inst.c1) {
        contains_all = contains_all && std::binary_search(subset.begin(), subset.end(), c);
      }
      if (contains_all) continue;
      views_ok = views_ok &&
                 restrict_profile(inst.profile, subset) == restrict_profile(uniform, subset);
    }
  }
  ck.check(views_ok, "every query missing part of c1 sees the uniform profile");
  return finish(ck);
}

int run_gen_margins(const std::string& p1_text, const std::string& p2_text,
                    const std::string& p3_text, const std::string& out_path) {
  const Rational p1 = Rational::parse(p1_text);
  const Rational p2 = Rational::parse(p2_text);
  const Rational p3 = Rational::parse(p3_text);
  const Profile p = margins_to_profile(p1, p2, p3);
  save_profile(p, out_path);
  std::cout << "command: gen margins\n"
            << "p1: " << p1.to_string() << '\n'
            << "p2: " << p2.to_string() << '\n'
            << "p3: " << p3.to_string() << '\n'
            << "written: " << out_path << '\n';
  Checker ck;
  ck.check(direct_pairwise(p, 0, 1) == p1 && direct_pairwise(p, 1, 2) == p2 &&
               direct_pairwise(p, 2, 0) == p3,
           "margins profile reproduces the three requested pairwise probabilities");
  return finish(ck);
}

int run_gen_fibonacci(int n, int i, long long s, int r, const std::string& out_path) {
  const FibonacciInstance inst = fibonacci_instance(n, i, s, r);
  save_profile(inst.profile, out_path);
  std::cout << "command: gen fibonacci\n"
            << "n: " << n << "\ni: " << i << "\ns: " << s << "\nr: " << r << '\n'
            << "scaled: " << inst.scaled[0] << ' ' << inst.scaled[1] << ' ' << inst.scaled[2]
            << '\n'
            << "p1: " << inst.p1.to_string() << '\n'
            << "p2: " << inst.p2.to_string() << '\n'
            << "p3: " << inst.p3.to_string() << '\n'
            << "declared-winner: " << inst.profile.candidates().label(inst.declared_winner)
            << '\n'
            << "written: " << out_path << '\n';
  Checker ck;
  const ScoringVector alpha({Rational(1), Rational(0), Rational(-1)});
  ck.check(winners(inst.profile, alpha) == std::set<CandidateId>{inst.declared_winner},
           "declared winner matches the symmetric-rule winner");
  ck.check(direct_pairwise(inst.profile, 0, 1) == inst.p1 &&
               direct_pairwise(inst.profile, 1, 2) == inst.p2 &&
               direct_pairwise(inst.profile, 2, 0) == inst.p3,
           "profile reproduces the designed pairwise margins");
  return finish(ck);
}

int run_fib_ambiguity(int n, std::optional<long long> phat1, std::optional<long long> phat2,
                      std::optional<long long> phat3, std::optional<int> fixed_i) {
  const auto triples = fibonacci_consistent_set(n, phat1, phat2, phat3, fixed_i);
  std::cout << "command: fib-ambiguity\n"
            << "n: " << n << '\n';
  std::string observed;
  if (phat1) observed += " phat1=" + std::to_string(*phat1);
  if (phat2) observed += " phat2=" + std::to_string(*phat2);
  if (phat3) observed += " phat3=" + std::to_string(*phat3);
  if (fixed_i) observed += " i=" + std::to_string(*fixed_i);
  std::cout << "observed:" << observed << '\n'
            << "consistent: " << triples.size() << '\n';
  const CandidateSet cs = CandidateSet::with_default_labels(3);
  std::set<CandidateId> distinct;
  for (const auto& t : triples) {
    std::cout << "i=" << t.i << " s=" << t.s << " r=" << t.r << " winner="
              << cs.label(t.winner) << '\n';
    distinct.insert(t.winner);
  }
  std::cout << "distinct-winners: " << join_candidates(cs, distinct) << '\n';
  return 0;
}

int run_cover(int m, int t, int t_star, int cap, const std::optional<std::string>& out_path) {
  const CoverBound bound = cover_lower_bound(m, t, t_star);
  const CoverInstance greedy = greedy_cover(m, t, t_star);
  std::optional<CoverInstance> exact;
  std::string refusal;
  try {
    exact = exact_cover(m, t, t_star, cap);
  } catch (const CapExceededError& e) {
    refusal = e.what();
  }

  std::ostringstream csv;
  csv << "m,t,tstar,lower_bound,greedy_size,exact_size\n"
      << m << ',' << t << ',' << t_star << ',' << bound.ceiling << ','
      << greedy.sets.size() << ',';
  if (exact) csv << exact->sets.size();
  csv << '\n';
  if (out_path) write_text(*out_path, csv.str());

  std::cout << "command: cover\n"
            << "m: " << m << "\nt: " << t << "\ntstar: " << t_star << '\n'
            << "lower-bound ratio: " << bound.ratio.to_string() << '\n'
            << "lower-bound: " << bound.ceiling << '\n'
            << "greedy size: " << greedy.sets.size() << '\n';
  for (const auto& set : greedy.sets) std::cout << "greedy set: " << join_ints(set, ',') << '\n';
  if (exact) {
    std::cout << "exact size: " << exact->sets.size() << '\n';
    for (const auto& set : exact->sets) std::cout << "exact set: " << join_ints(set, ',') << '\n';
  } else {
    std::cout << "exact: refused (" << refusal << ")\n";
  }
  if (out_path) std::cout << "written: " << *out_path << '\n';

  Checker ck;
  ck.check(is_cover(greedy).covered, "greedy family covers every t*-subset");
  ck.check(BigInt(greedy.sets.size()) >= bound.ceiling, "greedy size respects the counting bound");
  if (exact) {
    ck.check(is_cover(*exact).covered, "exact family covers every t*-subset");
    ck.check(BigInt(exact->sets.size()) >= bound.ceiling &&
                 exact->sets.size() <= greedy.sets.size(),
             "exact size sits between the bound and greedy");
  }
  return finish(ck);
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"votelab: exact preference profiles, size-limited query oracles, and\n"
               "query-computable positional scoring rules. Candidate-count caps are\n"
               "enforced everywhere; override with VOTELAB_MAX_CANDIDATES."};
  app.require_subcommand(1);
  app.fallthrough(); // global flags remain valid after the subcommand name
  bool timing = false;
  app.add_flag("--timing", timing, "append wall-clock milliseconds to the report");

  int exit_code = 0;

  // --- score ---------------------------------------------------------------
  std::string score_profile, score_rule, score_alpha;
  auto* score_cmd = app.add_subcommand("score", "scores and winners under a positional rule");
  score_cmd->add_option("--profile", score_profile, "profile JSON file")->required();
  auto* score_rule_opt =
      score_cmd->add_option("--rule", score_rule, "plurality, veto, borda, or antiborda");
  score_cmd->add_option("--alpha", score_alpha, "scoring vector, e.g. 1,0,0 or 1/2,0,-1/2")
      ->excludes(score_rule_opt);
  score_cmd->callback([&] {
    if (score_rule.empty() && score_alpha.empty()) {
      throw CLI::ValidationError("score", "need --rule or --alpha");
    }
    exit_code = run_score(score_profile, score_rule, score_alpha);
  });

  // --- stv -----------------------------------------------------------------
  std::string stv_profile;
  auto* stv_cmd = app.add_subcommand("stv", "single transferable vote winners with traces");
  stv_cmd->add_option("--profile", stv_profile, "profile JSON file")->required();
  stv_cmd->callback([&] { exit_code = run_stv(stv_profile); });

  // --- condorcet -------------------------------------------------------------
  std::string condorcet_profile;
  auto* condorcet_cmd =
      app.add_subcommand("condorcet", "pairwise winner via a size-2 query tournament");
  condorcet_cmd->add_option("--profile", condorcet_profile, "profile JSON file")->required();
  condorcet_cmd->callback([&] { exit_code = run_condorcet(condorcet_profile); });

  // --- span / tstar ----------------------------------------------------------
  std::string span_alpha;
  int span_t = 0;
  auto* span_cmd = app.add_subcommand("span", "membership of alpha in the size-t query span");
  span_cmd->add_option("--alpha", span_alpha, "scoring vector")->required();
  span_cmd->add_option("--t", span_t, "query size")->required();
  span_cmd->callback([&] { exit_code = run_span(span_alpha, span_t); });

  std::string tstar_alpha;
  auto* tstar_cmd = app.add_subcommand("tstar", "minimal query size whose span contains alpha");
  tstar_cmd->add_option("--alpha", tstar_alpha, "scoring vector")->required();
  tstar_cmd->callback([&] { exit_code = run_tstar(tstar_alpha); });

  // --- simplex ---------------------------------------------------------------
  int simplex_m = 0, simplex_grid = 6;
  int simplex_t = 0;
  std::string simplex_out;
  auto* simplex_cmd =
      app.add_subcommand("simplex", "CSV of normalized scoring vectors with their t* values");
  simplex_cmd->add_option("--m", simplex_m, "number of candidates")->required();
  auto* simplex_t_opt = simplex_cmd->add_option("--t", simplex_t, "restrict basis rows to one t");
  simplex_cmd->add_option("--grid", simplex_grid, "lattice density on the simplex (default 6)");
  simplex_cmd->add_option("--out", simplex_out, "write CSV here instead of stdout");
  simplex_cmd->callback([&] {
    const std::optional<int> only_t =
        simplex_t_opt->count() ? std::optional<int>(simplex_t) : std::nullopt;
    const std::optional<std::string> out =
        simplex_out.empty() ? std::nullopt : std::optional<std::string>(simplex_out);
    emit_csv("simplex", emit_simplex_csv(simplex_m, only_t, simplex_grid), out);
  });

  // --- indist ----------------------------------------------------------------
  std::string indist_first, indist_second;
  int indist_t = 0;
  auto* indist_cmd =
      app.add_subcommand("indist", "whether two profiles agree on every size-t query");
  indist_cmd->add_option("--first", indist_first, "profile JSON file")->required();
  indist_cmd->add_option("--second", indist_second, "profile JSON file")->required();
  indist_cmd->add_option("--t", indist_t, "query size")->required();
  indist_cmd->callback([&] { exit_code = run_indist(indist_first, indist_second, indist_t); });

  // --- query / sample ----------------------------------------------------------
  std::string query_profile, query_out;
  int query_t = 0;
  std::vector<std::string> query_subsets;
  auto* query_cmd = app.add_subcommand("query", "run size-limited queries, emit the transcript");
  query_cmd->add_option("--profile", query_profile, "profile JSON file")->required();
  query_cmd->add_option("--t", query_t, "query size budget")->required();
  query_cmd->add_option("--subset", query_subsets, "comma-joined candidate labels (repeatable)")
      ->required();
  query_cmd->add_option("--out", query_out, "write transcript JSON here instead of stdout");
  query_cmd->callback([&] {
    const std::optional<std::string> out =
        query_out.empty() ? std::nullopt : std::optional<std::string>(query_out);
    exit_code = run_query(query_profile, query_t, query_subsets, out);
  });

  std::string sample_profile, sample_subset, sample_out;
  int sample_t = 0, sample_n = 0;
  std::uint64_t sample_seed = 0;
  auto* sample_cmd =
      app.add_subcommand("sample", "finite-sample query with exact total-variation error");
  sample_cmd->add_option("--profile", sample_profile, "profile JSON file")->required();
  sample_cmd->add_option("--t", sample_t, "query size budget")->required();
  sample_cmd->add_option("--subset", sample_subset, "comma-joined candidate labels")->required();
  sample_cmd->add_option("--n", sample_n, "number of sampled rankings")->required();
  sample_cmd->add_option("--seed", sample_seed, "stream seed (default 0)");
  sample_cmd->add_option("--out", sample_out, "write result JSON here instead of stdout");
  sample_cmd->callback([&] {
    const std::optional<std::string> out =
        sample_out.empty() ? std::nullopt : std::optional<std::string>(sample_out);
    exit_code = run_sample(sample_profile, sample_t, sample_subset, sample_n, sample_seed, out);
  });

  // --- gen -------------------------------------------------------------------
  auto* gen_cmd = app.add_subcommand("gen", "emit an adversarial construction plus its report");
  gen_cmd->require_subcommand(1);

  int gpp_m = 4;
  std::string gpp_out;
  auto* gpp = gen_cmd->add_subcommand(
      "parity-pair", "two profiles separated by plurality yet equal on every proper query");
  gpp->add_option("--m", gpp_m, "number of candidates (default 4)");
  gpp->add_option("--out", gpp_out, "output path prefix")->required();
  gpp->callback([&] { exit_code = run_gen_parity_pair(gpp_m, gpp_out); });

  int gwf_m = 3;
  std::string gwf_rule, gwf_alpha, gwf_out;
  auto* gwf = gen_cmd->add_subcommand(
      "winner-family", "m indistinguishable profiles, one per designated winner");
  gwf->add_option("--m", gwf_m, "number of candidates (default 3)");
  auto* gwf_rule_opt = gwf->add_option("--rule", gwf_rule, "preset rule (default plurality)");
  gwf->add_option("--alpha", gwf_alpha, "scoring vector")->excludes(gwf_rule_opt);
  gwf->add_option("--out", gwf_out, "output path prefix")->required();
  gwf->callback([&] { exit_code = run_gen_winner_family(gwf_m, gwf_rule, gwf_alpha, gwf_out); });

  int gsf_m = 3;
  std::string gsf_epsilon, gsf_out;
  auto* gsf = gen_cmd->add_subcommand(
      "stv-family", "indistinguishable profiles steering elimination to each survivor");
  gsf->add_option("--m", gsf_m, "number of candidates (default 3)");
  gsf->add_option("--epsilon", gsf_epsilon, "admixture weight p/q (default 1/m^2)");
  gsf->add_option("--out", gsf_out, "output path prefix")->required();
  gsf->callback([&] { exit_code = run_gen_stv_family(gsf_m, gsf_epsilon, gsf_out); });

  int gqi_m = 4;
  std::string gqi_c1 = "a,b", gqi_rule, gqi_alpha, gqi_out;
  auto* gqi = gen_cmd->add_subcommand(
      "query-instance", "profile whose winner hides from every query missing part of c1");
  gqi->add_option("--m", gqi_m, "number of candidates (default 4)");
  gqi->add_option("--c1", gqi_c1, "comma-joined labels of the critical set (default a,b)");
  auto* gqi_rule_opt = gqi->add_option("--rule", gqi_rule, "preset rule (default borda)");
  gqi->add_option("--alpha", gqi_alpha, "scoring vector")->excludes(gqi_rule_opt);
  gqi->add_option("--out", gqi_out, "output profile path")->required();
  gqi->callback(
      [&] { exit_code = run_gen_query_instance(gqi_m, gqi_c1, gqi_rule, gqi_alpha, gqi_out); });

  std::string gm_p1, gm_p2, gm_p3, gm_out;
  auto* gm = gen_cmd->add_subcommand(
      "margins", "three-candidate profile realizing pairwise margins in [1/3, 2/3]");
  gm->add_option("--p1", gm_p1, "Pr[a beats b] as p/q")->required();
  gm->add_option("--p2", gm_p2, "Pr[b beats c] as p/q")->required();
  gm->add_option("--p3", gm_p3, "Pr[c beats a] as p/q")->required();
  gm->add_option("--out", gm_out, "output profile path")->required();
  gm->callback([&] { exit_code = run_gen_margins(gm_p1, gm_p2, gm_p3, gm_out); });

  int gf_n = 8, gf_i = 1, gf_r = 1;
  long long gf_s = 0;
  std::string gf_out;
  auto* gf = gen_cmd->add_subcommand(
      "fibonacci", "near-tied three-candidate instance from the Fibonacci winner table");
  gf->add_option("--n", gf_n, "scale parameter (default 8)");
  gf->add_option("--i", gf_i, "gap index in 1..n (default 1)");
  gf->add_option("--s", gf_s, "base offset (default 0)");
  gf->add_option("--r", gf_r, "row of the winner table, 1..6 (default 1)");
  gf->add_option("--out", gf_out, "output profile path")->required();
  gf->callback([&] { exit_code = run_gen_fibonacci(gf_n, gf_i, gf_s, gf_r, gf_out); });

  // --- fib-ambiguity -----------------------------------------------------------
  int fa_n = 8, fa_i = 0;
  long long fa_p1 = 0, fa_p2 = 0, fa_p3 = 0;
  auto* fa = app.add_subcommand(
      "fib-ambiguity", "all Fibonacci parameter triples consistent with observed margins");
  fa->add_option("--n", fa_n, "scale parameter (default 8)");
  auto* fa_p1_opt = fa->add_option("--phat1", fa_p1, "observed scaled margin for a vs b");
  auto* fa_p2_opt = fa->add_option("--phat2", fa_p2, "observed scaled margin for b vs c");
  auto* fa_p3_opt = fa->add_option("--phat3", fa_p3, "observed scaled margin for c vs a");
  auto* fa_i_opt = fa->add_option("--i", fa_i, "pin the gap index");
  fa->callback([&] {
    exit_code = run_fib_ambiguity(
        fa_n, fa_p1_opt->count() ? std::optional<long long>(fa_p1) : std::nullopt,
        fa_p2_opt->count() ? std::optional<long long>(fa_p2) : std::nullopt,
        fa_p3_opt->count() ? std::optional<long long>(fa_p3) : std::nullopt,
        fa_i_opt->count() ? std::optional<int>(fa_i) : std::nullopt);
  });

  // --- cover / bound-curve -------------------------------------------------------
  int cover_m = 0, cover_t = 0, cover_tstar = 0, cover_cap = 20;
  std::string cover_out;
  auto* cover_cmd =
      app.add_subcommand("cover", "covering designs: counting bound, greedy, exact within cap");
  cover_cmd->add_option("--m", cover_m, "ground set size")->required();
  cover_cmd->add_option("--t", cover_t, "block size")->required();
  cover_cmd->add_option("--tstar", cover_tstar, "covered subset size")->required();
  cover_cmd->add_option("--cap", cover_cap, "exact-search base set cap (default 20)");
  cover_cmd->add_option("--out", cover_out, "also write a one-row CSV here");
  cover_cmd->callback([&] {
    const std::optional<std::string> out =
        cover_out.empty() ? std::nullopt : std::optional<std::string>(cover_out);
    exit_code = run_cover(cover_m, cover_t, cover_tstar, cover_cap, out);
  });

  int bc_m = 3, bc_tstar = 2, bc_grid = 20;
  std::string bc_out;
  auto* bc = app.add_subcommand(
      "bound-curve", "CSV of the success-probability bound against the random-guess baseline");
  bc->add_option("--m", bc_m, "number of candidates (default 3)");
  bc->add_option("--tstar", bc_tstar, "minimal query size of the target rule (default 2)");
  bc->add_option("--grid", bc_grid, "number of delta steps (default 20)");
  bc->add_option("--out", bc_out, "write CSV here instead of stdout");
  bc->callback([&] {
    const std::optional<std::string> out =
        bc_out.empty() ? std::nullopt : std::optional<std::string>(bc_out);
    emit_csv("bound-curve", emit_bound_curve(bc_m, bc_tstar, bc_grid), out);
  });

  // --- verify ------------------------------------------------------------------
  auto* verify_cmd = app.add_subcommand("verify", "re-check a construction or bound");
  verify_cmd->require_subcommand(1);
  const auto run_single = [&](const std::string& name,
                              const std::function<void(Checker&)>& body) {
    std::cout << "command: verify " << name << '\n';
    Checker ck;
    body(ck);
    exit_code = finish(ck);
  };

  int vhp_m = 4;
  auto* vhp = verify_cmd->add_subcommand(
      "hidden-pair", "plurality-separated profiles invisible to proper queries");
  vhp->add_option("--m", vhp_m, "number of candidates (default 4)");
  vhp->callback([&] { run_single("hidden-pair", [&](Checker& ck) { verify_hidden_pair(ck, vhp_m); }); });

  int vwf_m = 3;
  auto* vwf = verify_cmd->add_subcommand(
      "winner-family", "indistinguishable profiles with every candidate winning once");
  vwf->add_option("--m", vwf_m, "number of candidates (default 3)");
  vwf->callback(
      [&] { run_single("winner-family", [&](Checker& ck) { verify_winner_family(ck, vwf_m); }); });

  int vos_m = 4, vos_trials = 25;
  std::uint64_t vos_seed = 1;
  auto* vos = verify_cmd->add_subcommand(
      "oracle-scoring", "query-driven scoring agrees with direct evaluation");
  vos->add_option("--m", vos_m, "number of candidates (default 4)");
  vos->add_option("--trials", vos_trials, "random profiles to test (default 25)");
  vos->add_option("--seed", vos_seed, "random seed (default 1)");
  vos->callback([&] {
    run_single("oracle-scoring",
               [&](Checker& ck) { verify_oracle_scoring(ck, vos_m, vos_trials, vos_seed); });
  });

  int vsb_m = 6;
  auto* vsb = verify_cmd->add_subcommand(
      "span-boundary", "which rules each query size can and cannot express");
  vsb->add_option("--max-m", vsb_m, "largest candidate count (default 6)");
  vsb->callback(
      [&] { run_single("span-boundary", [&](Checker& ck) { verify_span_boundary(ck, vsb_m); }); });

  int vsep_m = 4;
  auto* vsep = verify_cmd->add_subcommand(
      "separation", "triangular certificates separating rules from smaller spans");
  vsep->add_option("--m", vsep_m, "number of candidates (default 4)");
  vsep->callback(
      [&] { run_single("separation", [&](Checker& ck) { verify_separation(ck, vsep_m); }); });

  int vef_m = 3;
  auto* vef = verify_cmd->add_subcommand(
      "elimination-family", "indistinguishable profiles steering elimination anywhere");
  vef->add_option("--m", vef_m, "number of candidates (default 3)");
  vef->callback([&] {
    run_single("elimination-family", [&](Checker& ck) { verify_elimination_family(ck, vef_m); });
  });

  auto* vhi = verify_cmd->add_subcommand(
      "hard-instance", "planted instance hiding the winner from proper queries, plus the bound");
  vhi->callback(
      [&] { run_single("hard-instance", [&](Checker& ck) { verify_hard_instance(ck); }); });

  int vnt_n = 4;
  auto* vnt = verify_cmd->add_subcommand(
      "near-ties", "Fibonacci near-tie sweep and margin-ambiguity counts");
  vnt->add_option("--n", vnt_n, "scale parameter, at least 2 (default 4)");
  vnt->callback([&] { run_single("near-ties", [&](Checker& ck) { verify_near_ties(ck, vnt_n); }); });

  int vt_m = 8, vt_trials = 25;
  std::uint64_t vt_seed = 1;
  auto* vt = verify_cmd->add_subcommand(
      "tournament", "size-2-query pairwise winner within the query budget");
  vt->add_option("--max-m", vt_m, "largest candidate count (default 8)");
  vt->add_option("--trials", vt_trials, "random profiles per m (default 25)");
  vt->add_option("--seed", vt_seed, "random seed (default 1)");
  vt->callback([&] {
    run_single("tournament", [&](Checker& ck) { verify_tournament(ck, vt_m, vt_trials, vt_seed); });
  });

  int vc_m = 6;
  auto* vc = verify_cmd->add_subcommand(
      "covering", "covering-design bound against greedy and exact sizes");
  vc->add_option("--max-m", vc_m, "largest ground set (default 6)");
  vc->callback([&] { run_single("covering", [&](Checker& ck) { verify_covering(ck, vc_m); }); });

  int vi_trials = 50;
  std::uint64_t vi_seed = 1;
  auto* vi = verify_cmd->add_subcommand(
      "invariants", "algebraic invariants of the profile operations");
  vi->add_option("--trials", vi_trials, "random instances per family (default 50)");
  vi->add_option("--seed", vi_seed, "random seed (default 1)");
  vi->callback([&] {
    run_single("invariants", [&](Checker& ck) { verify_invariants(ck, vi_trials, vi_seed); });
  });

  int va_max_m = 5;
  auto* va = verify_cmd->add_subcommand("all", "the full verification battery");
  va->add_option("--max-m", va_max_m, "largest candidate count (default 5)");
  va->callback([&] {
    std::cout << "command: verify all\n"
              << "max-m: " << va_max_m << '\n';
    Checker ck;
    for (int m = 2; m <= va_max_m; ++m) verify_hidden_pair(ck, m);
    for (int m = 3; m <= std::min(va_max_m, 5); ++m) verify_winner_family(ck, m);
    for (int m = 2; m <= std::min(va_max_m, 5); ++m) verify_oracle_scoring(ck, m, 25, 1);
    verify_span_boundary(ck, std::min(va_max_m, 8));
    for (int m = 3; m <= std::min(va_max_m, 5); ++m) verify_separation(ck, m);
    for (int m = 3; m <= std::min(va_max_m, 5); ++m) verify_elimination_family(ck, m);
    if (va_max_m >= 4) verify_hard_instance(ck);
    verify_near_ties(ck, 4);
    verify_tournament(ck, va_max_m, 25, 1);
    verify_covering(ck, std::min(va_max_m, 6));
    verify_invariants(ck, 50, 1);
    exit_code = finish(ck);
  });

  const auto start = std::chrono::steady_clock::now();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  if (timing) {
    const auto elapsed = std::chrono::steady_clock::now() - start;
    std::cout << "wall-ms: "
              << std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count() << '\n';
  }
  return exit_code;
}

}  // namespace votelab::cli

int main(int argc, char** argv) { return votelab::cli::run(argc, argv); }
