#include <catch2/catch_amalgamated.hpp>

#include <votelab/votelab.hpp>

#include "helpers.hpp"

using namespace votelab;
using helpers::rk;

namespace {

std::multiset<CandidateId> winner_multiset(const std::vector<FibonacciTriple>& triples) {
  std::multiset<CandidateId> out;
  for (const auto& t : triples) out.insert(t.winner);
  return out;
}

Rational direct_pairwise(const Profile& p, CandidateId x, CandidateId y) {
  Rational margin;
  for (const auto& [ranking, mass] : p.support()) {
    if (ranking.prefers(x, y)) margin += mass;
  }
  return margin;
}

} // namespace

TEST_CASE("the three-candidate hidden pair is two half-mass rankings") {
  ParityPair pair = parity_pair(CandidateSet::with_default_labels(3), 0, 1);
  CHECK(pair.profile.support_size() == 2);
  CHECK(pair.profile.mass(rk({0, 1, 2})) == Rational(1, 2));
  CHECK(pair.profile.mass(rk({2, 1, 0})) == Rational(1, 2));
  CHECK(pair.swapped.mass(rk({1, 0, 2})) == Rational(1, 2));
  CHECK(pair.swapped.mass(rk({2, 0, 1})) == Rational(1, 2));
}

TEST_CASE("with two candidates the hidden pair degenerates to a point mass") {
  ParityPair pair = parity_pair(CandidateSet::with_default_labels(2), 0, 1);
  CHECK(pair.profile == point_mass(CandidateSet::with_default_labels(2), rk({0, 1})));
  CHECK(pair.swapped == point_mass(CandidateSet::with_default_labels(2), rk({1, 0})));
}

TEST_CASE("hidden pairs separate plurality while defeating every proper query") {
  for (int m = 3; m <= 5; ++m) {
    ParityPair pair = parity_pair(CandidateSet::with_default_labels(m), 0, 1);
    CHECK(plurality_score(pair.profile, 0) == Rational(BigInt(1), BigInt(1) << (m - 2)));
    CHECK(plurality_score(pair.profile, 1) == Rational(0));
    CHECK(pair.swapped == transpose_profile(pair.profile, 0, 1));
    CHECK(indistinguishable(pair.profile, pair.swapped, m - 1).indistinguishable);
    REQUIRE(!indistinguishable(pair.profile, pair.swapped, m).indistinguishable);
    for (const auto& [ranking, mass] : pair.profile.support()) {
      const int gap = ranking.position_of(0) - ranking.position_of(1);
      CHECK((gap == 1 || gap == -1));
    }
  }
}

TEST_CASE("hidden pairs work for any distinct candidate choice") {
  ParityPair pair = parity_pair(CandidateSet::with_default_labels(4), 2, 0);
  CHECK(plurality_score(pair.profile, 2) == Rational(1, 4));
  CHECK(plurality_score(pair.profile, 0) == Rational(0));
  CHECK(indistinguishable(pair.profile, pair.swapped, 3).indistinguishable);
  CHECK_THROWS_AS(parity_pair(CandidateSet::with_default_labels(3), 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(parity_pair(CandidateSet::with_default_labels(1), 0, 0), std::invalid_argument);
}

TEST_CASE("the winner family plants a distinct unique winner behind uniform views") {
  const CandidateSet candidates = CandidateSet::with_default_labels(3);
  ParityPair pair = parity_pair(candidates, 0, 1);
  ScoringVector plu = preset("plurality", 3);
  WinnerFamily family = winner_family(pair.profile, 0, 1, plu, 2);
  CHECK(family.a == 0);
  CHECK(family.b == 1);
  CHECK(family.uniform_reference == uniform_profile(candidates));
  REQUIRE(family.profiles.size() == 3);
  for (CandidateId c = 0; c < 3; ++c) {
    const Profile& member = family.profiles.at(c);
    CHECK(winners(member, plu) == std::set<CandidateId>{c});
    CHECK(indistinguishable(member, family.uniform_reference, 2).indistinguishable);
    // Every two-candidate view of a member is exactly uniform.
    for (const auto& subset : subsets_of_size(3, 2)) {
      Profile view = restrict_profile(member, subset);
      CHECK(view == uniform_profile(view.candidates()));
    }
  }
}

TEST_CASE("winner family members are pairwise indistinguishable at the query size") {
  const CandidateSet candidates = CandidateSet::with_default_labels(4);
  ParityPair pair = parity_pair(candidates, 0, 1);
  WinnerFamily family = winner_family(pair.profile, 0, 1, preset("plurality", 4), 3);
  for (CandidateId c = 0; c < 4; ++c) {
    for (CandidateId d = c + 1; d < 4; ++d) {
      CHECK(indistinguishable(family.profiles.at(c), family.profiles.at(d), 3).indistinguishable);
    }
  }
}

TEST_CASE("the winner family normalizes orientation to the higher scorer") {
  const CandidateSet candidates = CandidateSet::with_default_labels(3);
  ParityPair pair = parity_pair(candidates, 0, 1);
  // Passing the pair reversed still ends with a = the plurality-heavy side.
  WinnerFamily family = winner_family(pair.profile, 1, 0, preset("plurality", 3), 2);
  CHECK(family.a == 0);
  CHECK(family.b == 1);
}

TEST_CASE("the winner family rejects unusable seeds") {
  const CandidateSet candidates = CandidateSet::with_default_labels(3);
  ScoringVector plu = preset("plurality", 3);
  // Equal scores: uniform profile ties everyone.
  CHECK_THROWS_AS(winner_family(uniform_profile(candidates), 0, 1, plu, 2), std::invalid_argument);
  // Distinguishable pair: a point mass is exposed by pair queries.
  Profile point = point_mass(candidates, rk({0, 1, 2}));
  CHECK_THROWS_AS(winner_family(point, 0, 1, plu, 2), std::invalid_argument);
  CHECK_THROWS_AS(winner_family(point, 0, 0, plu, 2), std::invalid_argument);
}

TEST_CASE("embedding places the inner block after the chosen prefix") {
  const CandidateSet ambient = CandidateSet::with_default_labels(5);
  const std::vector<CandidateId> c1 = {0, 2, 4};
  const std::vector<CandidateId> c2 = {1, 3};
  Profile inner = parity_pair(ambient.subset(c1), 0, 1).profile;
  for (int i = 1; i <= 3; ++i) {
    Profile planted = embedded_profile(ambient, c1, c2, i, inner);
    for (const auto& [ranking, mass] : planted.support()) {
      // Prefix: the first i-1 fixed outer candidates, then the inner block.
      for (int j = 0; j < i - 1; ++j) CHECK(ranking.at(j) == c2[j]);
      for (int j = i - 1; j < i + 2; ++j) {
        CHECK((ranking.at(j) == 0 || ranking.at(j) == 2 || ranking.at(j) == 4));
      }
    }
    // Inner masses carry over: total stays 1 with inner's support size.
    CHECK(planted.support_size() == inner.support_size());
    // The pair occupies positions at or after the prefix only.
    const auto pos_a = pos_vector(planted, 0);
    for (int j = 0; j < i - 1; ++j) CHECK(pos_a[j] == Rational(0));
  }
}

TEST_CASE("planted profiles stay hidden from queries below the block size") {
  const CandidateSet ambient = CandidateSet::with_default_labels(5);
  const std::vector<CandidateId> c1 = {0, 2, 4};
  const std::vector<CandidateId> c2 = {1, 3};
  Profile inner = parity_pair(ambient.subset(c1), 0, 1).profile;
  for (int i = 1; i <= 3; ++i) {
    Profile planted = embedded_profile(ambient, c1, c2, i, inner);
    Profile swapped = transpose_profile(planted, 0, 2);
    CHECK(indistinguishable(planted, swapped, 2).indistinguishable);
  }
}

TEST_CASE("embedding validates its partition and index") {
  const CandidateSet ambient = CandidateSet::with_default_labels(4);
  Profile inner = parity_pair(ambient.subset({0, 1}), 0, 1).profile;
  CHECK_THROWS_AS(embedded_profile(ambient, {0, 1}, {2}, 1, inner), std::invalid_argument);
  CHECK_THROWS_AS(embedded_profile(ambient, {0, 1}, {2, 0}, 1, inner), std::invalid_argument);
  CHECK_THROWS_AS(embedded_profile(ambient, {0, 1}, {2, 3}, 0, inner), std::invalid_argument);
  CHECK_THROWS_AS(embedded_profile(ambient, {0, 1}, {2, 3}, 4, inner), std::invalid_argument);
  Profile wrong_inner = parity_pair(ambient.subset({0, 2}), 0, 1).profile;
  CHECK_THROWS_AS(embedded_profile(ambient, {0, 1}, {2, 3}, 1, wrong_inner), std::invalid_argument);
  CHECK_NOTHROW(embedded_profile(ambient, {0, 1}, {2, 3}, 3, inner));
}

TEST_CASE("separation certificates expose vectors outside the span") {
  for (int m = 3; m <= 4; ++m) {
    const CandidateSet candidates = CandidateSet::with_default_labels(m);
    std::vector<CandidateId> everyone(m);
    for (int c = 0; c < m; ++c) everyone[c] = c;
    SeparationCertificate cert =
        separating_index(candidates, preset("plurality", m), m - 1, everyone, 0, 1);
    CHECK(cert.index == 1);
    CHECK(cert.score_gap == Rational(BigInt(1), BigInt(1) << (m - 2)));
    REQUIRE(cert.difference_vectors.size() == 1);
  }
}

TEST_CASE("difference vectors form the triangle pattern across plant positions") {
  const CandidateSet candidates = CandidateSet::with_default_labels(5);
  SeparationCertificate cert =
      separating_index(candidates, preset("plurality", 5), 2, {0, 1, 2}, 0, 1);
  REQUIRE(cert.difference_vectors.size() == 3);
  for (int i = 1; i <= 3; ++i) {
    const auto& diff = cert.difference_vectors[i - 1];
    for (int j = 0; j < i - 1; ++j) CHECK(diff[j] == Rational(0));
    CHECK(diff[i - 1] != Rational(0));
  }
  CHECK(cert.score_gap != Rational(0));
  CHECK(cert.index >= 1);
  CHECK(cert.index <= 3);
}

TEST_CASE("certificate scores match direct evaluation on the planted profile") {
  const CandidateSet candidates = CandidateSet::with_default_labels(4);
  ScoringVector veto = preset("veto", 4);
  REQUIRE(!span_membership(veto, 3).member);
  SeparationCertificate cert = separating_index(candidates, veto, 3, {0, 1, 2, 3}, 0, 1);
  Rational rebuilt;
  const auto& diff = cert.difference_vectors[cert.index - 1];
  for (int j = 0; j < 4; ++j) rebuilt += veto[j] * diff[j];
  CHECK(rebuilt == cert.score_gap);
}

TEST_CASE("vectors inside the span admit no separation certificate") {
  const CandidateSet candidates = CandidateSet::with_default_labels(4);
  CHECK_THROWS_AS(separating_index(candidates, preset("borda", 4), 2, {0, 1, 2}, 0, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(separating_index(candidates, preset("plurality", 4), 3, {0, 1}, 0, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(separating_index(candidates, preset("plurality", 4), 3, {0, 1, 2, 3}, 0, 0),
                  std::invalid_argument);
}

TEST_CASE("the elimination family elects exactly its designated candidate") {
  for (int m = 3; m <= 4; ++m) {
    StvFamily family = stv_family(CandidateSet::with_default_labels(m));
    CHECK(family.params.epsilon == Rational(1, static_cast<long long>(m) * m));
    REQUIRE(static_cast<int>(family.profiles.size()) == m);
    for (CandidateId c = 0; c < m; ++c) {
      CHECK(stv_winners(family.profiles.at(c)).winners == std::set<CandidateId>{c});
    }
  }
}

TEST_CASE("elimination family members all present the same sub-full views") {
  const int m = 3;
  StvFamily family = stv_family(CandidateSet::with_default_labels(m));
  for (CandidateId c = 0; c < m; ++c) {
    for (CandidateId d = c + 1; d < m; ++d) {
      CHECK(indistinguishable(family.profiles.at(c), family.profiles.at(d), m - 1)
                .indistinguishable);
    }
  }
}

TEST_CASE("the loop bulk trails the scheduled candidate by the exact deficit") {
  for (int m = 3; m <= 4; ++m) {
    StvFamily family = stv_family(CandidateSet::with_default_labels(m));
    for (CandidateId c = 0; c < m; ++c) {
      // After the seeded first elimination of next(c), the loop part alone
      // eliminates next^2(c), next^3(c), ... with an exact, uniform margin.
      std::vector<CandidateId> remaining;
      for (CandidateId x = 0; x < m; ++x) {
        if (x != (c + 1) % m) remaining.push_back(x);
      }
      for (int k = 2; k < m; ++k) {
        const CandidateId loser = static_cast<CandidateId>((c + k) % m);
        Profile view = restrict_profile(family.loop_uniform, remaining);
        const int sz = static_cast<int>(remaining.size());
        auto local_of = [&](CandidateId x) {
          return static_cast<int>(std::lower_bound(remaining.begin(), remaining.end(), x) -
                                  remaining.begin());
        };
        const Rational loser_mass = plurality_score(view, local_of(loser));
        const Rational deficit(1, static_cast<long long>(m) * (sz - 1));
        for (CandidateId x : remaining) {
          if (x == loser) continue;
          CHECK(plurality_score(view, local_of(x)) == loser_mass + deficit);
        }
        remaining.erase(std::find(remaining.begin(), remaining.end(), loser));
        std::sort(remaining.begin(), remaining.end());
      }
    }
  }
}

TEST_CASE("the elimination family validates its mixing weight") {
  const CandidateSet candidates = CandidateSet::with_default_labels(3);
  CHECK_NOTHROW(stv_family(candidates, Rational(1, 100)));
  CHECK_THROWS_AS(stv_family(candidates, Rational(0)), std::invalid_argument);
  CHECK_THROWS_AS(stv_family(candidates, Rational(-1, 9)), std::invalid_argument);
  // At eps = 1/7, eps * m(m-1) = 6/7 == 1 - eps: the margin collapses.
  CHECK_THROWS_AS(stv_family(candidates, Rational(1, 7)), std::invalid_argument);
  CHECK_THROWS_AS(stv_family(CandidateSet::with_default_labels(2)), std::invalid_argument);
}

TEST_CASE("the hard instance looks uniform to every query missing part of the core") {
  const CandidateSet candidates = CandidateSet::with_default_labels(4);
  ScoringVector borda = preset("borda", 4);
  QueryComplexityInstance instance = query_complexity_instance(candidates, borda, 2, {0, 1});
  CHECK(winners(instance.profile, borda) == std::set<CandidateId>{instance.winner});
  for (int size = 1; size <= 3; ++size) {
    for (const auto& subset : subsets_of_size(4, size)) {
      bool contains_core = true;
      for (CandidateId c : instance.c1) {
        if (!std::binary_search(subset.begin(), subset.end(), c)) contains_core = false;
      }
      if (contains_core) continue;
      Profile view = restrict_profile(instance.profile, subset);
      CHECK(view == uniform_profile(view.candidates()));
    }
  }
}

TEST_CASE("the hard instance strictly demotes the swapped-out candidate") {
  const CandidateSet candidates = CandidateSet::with_default_labels(4);
  ScoringVector borda = preset("borda", 4);
  QueryComplexityInstance instance = query_complexity_instance(candidates, borda, 2, {0, 1});
  Profile uniform = uniform_profile(candidates);
  CHECK(score(instance.profile, borda, instance.a) < score(uniform, borda, instance.a));
  CHECK(instance.winner == instance.b);
  CHECK(instance.a != instance.b);
}

TEST_CASE("the hard instance rejects mismatched parameters") {
  const CandidateSet candidates = CandidateSet::with_default_labels(4);
  ScoringVector borda = preset("borda", 4);
  CHECK_THROWS_AS(query_complexity_instance(candidates, borda, 3, {0, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(query_complexity_instance(candidates, borda, 2, {0, 1, 2}), std::invalid_argument);
  ScoringVector constant(std::vector<Rational>{1, 1, 1, 1});
  CHECK_THROWS_AS(query_complexity_instance(candidates, constant, 1, {0}), std::invalid_argument);
}

TEST_CASE("the success ceiling evaluates the two-branch minimum exactly") {
  CHECK(bound_success_probability(Rational(0), 3, 2) == Rational(1, 3));
  CHECK(bound_success_probability(Rational(1), 5, 3) == Rational(1));
  CHECK(bound_success_probability(Rational(2, 3), 3, 2) == Rational(5, 6));
  CHECK_THROWS_AS(bound_success_probability(Rational(-1, 2), 3, 2), std::invalid_argument);
  CHECK_THROWS_AS(bound_success_probability(Rational(3, 2), 3, 2), std::invalid_argument);
  CHECK_THROWS_AS(bound_success_probability(Rational(0), 3, 1), std::invalid_argument);
}

TEST_CASE("prescribed pairwise margins realize an exact three-candidate profile") {
  SECTION("all margins one third") {
    Profile p = margins_to_profile(Rational(1, 3), Rational(1, 3), Rational(1, 3));
    CHECK(p.support_size() == 3);
    CHECK(p.mass(rk({0, 2, 1})) == Rational(1, 3));
    CHECK(p.mass(rk({1, 0, 2})) == Rational(1, 3));
    CHECK(p.mass(rk({2, 1, 0})) == Rational(1, 3));
  }
  SECTION("all margins one half") {
    Profile p = margins_to_profile(Rational(1, 2), Rational(1, 2), Rational(1, 2));
    CHECK(p == uniform_profile(CandidateSet::with_default_labels(3)));
  }
  SECTION("margins are recovered by restriction") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 20; ++trial) {
      Rational p1(1, 3), p2(1, 3), p3(1, 3);
      p1 += Rational(static_cast<long long>(rng() % 25), 72);
      p2 += Rational(static_cast<long long>(rng() % 25), 72);
      p3 += Rational(static_cast<long long>(rng() % 25), 72);
      Profile p = margins_to_profile(p1, p2, p3);
      CHECK(direct_pairwise(p, 0, 1) == p1);
      CHECK(direct_pairwise(p, 1, 2) == p2);
      CHECK(direct_pairwise(p, 2, 0) == p3);
    }
  }
  SECTION("margins outside the feasible band are rejected") {
    CHECK_THROWS_AS(margins_to_profile(Rational(1, 4), Rational(1, 2), Rational(1, 2)),
                    std::invalid_argument);
    CHECK_THROWS_AS(margins_to_profile(Rational(1, 2), Rational(3, 4), Rational(1, 2)),
                    std::invalid_argument);
  }
}

TEST_CASE("the shifted fibonacci sequence starts one, two, three, five") {
  auto f = shifted_fibonacci(6);
  CHECK(f == std::vector<long long>{1, 2, 3, 5, 8, 13});
  CHECK_THROWS_AS(shifted_fibonacci(0), std::invalid_argument);
  CHECK_THROWS_AS(shifted_fibonacci(86), std::invalid_argument);
}

TEST_CASE("near-tie instances realize their designed scaled margins") {
  // Row 1 shifts (s + F_{i+2}, s, s + F_i); row 6 shifts (s, s + F_{i+1}, s + F_{i+2}).
  auto fib = shifted_fibonacci(10);
  FibonacciInstance row1 = fibonacci_instance(8, 3, 10, 1);
  CHECK(row1.scaled == std::vector<long long>{10 + fib[4], 10, 10 + fib[2]});
  CHECK(row1.declared_winner == 0);
  FibonacciInstance row6 = fibonacci_instance(8, 3, 10, 6);
  CHECK(row6.scaled == std::vector<long long>{10, 10 + fib[3], 10 + fib[4]});
  CHECK(row6.declared_winner == 1);
  // Margins are the scaled values pushed into the feasible band.
  const long long scale = 9 * fib[9];
  CHECK(row1.p1 == Rational(1, 3) + Rational(row1.scaled[0], 3 * scale));
  CHECK(row1.p2 == Rational(1, 3) + Rational(row1.scaled[1], 3 * scale));
  CHECK(row1.p3 == Rational(1, 3) + Rational(row1.scaled[2], 3 * scale));
}

TEST_CASE("declared winners match the direct positional winner on every row") {
  ScoringVector borda = preset("borda", 3);
  const int n = 5;
  auto fib = shifted_fibonacci(n + 2);
  const long long s_max = static_cast<long long>(n) * fib[n + 1];
  for (int i = 1; i <= n; ++i) {
    for (long long s : {static_cast<long long>(0), s_max / 2, s_max}) {
      for (int r = 1; r <= 6; ++r) {
        FibonacciInstance instance = fibonacci_instance(n, i, s, r);
        CHECK(winners(instance.profile, borda) ==
              std::set<CandidateId>{instance.declared_winner});
        for (long long v : instance.scaled) {
          CHECK(v >= 0);
          CHECK(v <= static_cast<long long>(n + 1) * fib[n + 1]);
        }
      }
    }
  }
}

TEST_CASE("near-tie instances validate their parameters") {
  CHECK_THROWS_AS(fibonacci_instance(8, 0, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(fibonacci_instance(8, 9, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(fibonacci_instance(8, 3, -1, 1), std::invalid_argument);
  CHECK_THROWS_AS(fibonacci_instance(8, 3, 0, 7), std::invalid_argument);
  CHECK_THROWS_AS(fibonacci_instance(0, 1, 0, 1), std::invalid_argument);
}

TEST_CASE("one observed margin with known block index leaves six live explanations") {
  // At i=3 the offsets {0, F_3, F_4, F_5} = {0, 3, 5, 8} all fit below 100.
  auto triples = fibonacci_consistent_set(8, 100, std::nullopt, std::nullopt, 3);
  REQUIRE(triples.size() == 6);
  CHECK(winner_multiset(triples) == std::multiset<CandidateId>{0, 0, 1, 1, 2, 2});
  for (const auto& t : triples) CHECK(t.i == 3);
}

TEST_CASE("two margins with the first leading leave two live explanations") {
  // Gap 8 = F_5 pins i = 3 and rows 1, 2 only.
  auto triples = fibonacci_consistent_set(8, 58, 50, std::nullopt);
  REQUIRE(triples.size() == 2);
  CHECK(triples[0].i == 3);
  CHECK(triples[0].s == 50);
  CHECK(triples[1].s == 50);
  CHECK(winner_multiset(triples) == std::multiset<CandidateId>{0, 2});
}

TEST_CASE("two margins with the second leading leave four live explanations") {
  // Gap 5 = F_4 splits across rows 3..6 with block index 3 or 4.
  auto triples = fibonacci_consistent_set(8, 50, 55, std::nullopt);
  REQUIRE(triples.size() == 4);
  CHECK(winner_multiset(triples) == std::multiset<CandidateId>{0, 1, 1, 2});
  CHECK(triples[0].i == 3);
  CHECK(triples[0].s == 47);
  CHECK(triples[0].r == 3);
  CHECK(triples[1].i == 3);
  CHECK(triples[1].s == 50);
  CHECK(triples[1].r == 6);
  CHECK(triples[2].i == 4);
  CHECK(triples[2].s == 42);
  CHECK(triples[2].r == 4);
  CHECK(triples[3].i == 4);
  CHECK(triples[3].s == 50);
  CHECK(triples[3].r == 5);
}

TEST_CASE("every consistent triple reproduces the observations it was matched on") {
  auto triples = fibonacci_consistent_set(6, 30, std::nullopt, 28, std::nullopt);
  for (const auto& t : triples) {
    FibonacciInstance instance = fibonacci_instance(6, t.i, t.s, t.r);
    CHECK(instance.scaled[0] == 30);
    CHECK(instance.scaled[2] == 28);
    CHECK(instance.declared_winner == t.winner);
  }
  CHECK_THROWS_AS(fibonacci_consistent_set(6, std::nullopt, std::nullopt, std::nullopt),
                  std::invalid_argument);
}
