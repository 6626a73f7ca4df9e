#include <catch2/catch_amalgamated.hpp>

#include <votelab/votelab.hpp>

#include "helpers.hpp"

using namespace votelab;
using helpers::rk;

namespace {

ScoringVector sv(std::vector<Rational> w) { return ScoringVector(std::move(w)); }

Profile half_abc_half_cba() {
  return helpers::make_profile(3, {{{0, 1, 2}, Rational(1, 2)}, {{2, 1, 0}, Rational(1, 2)}});
}

} // namespace

TEST_CASE("score is the expected position weight") {
  Profile p = half_abc_half_cba();
  ScoringVector top_only = sv({1, 0, 0});
  CHECK(score(p, top_only, 0) == Rational(1, 2));
  CHECK(score(p, top_only, 1) == Rational(0));
  CHECK(score(p, top_only, 2) == Rational(1, 2));
  CHECK_THROWS_AS(score(p, sv({1, 0}), 0), std::invalid_argument);
}

TEST_CASE("every candidate scores zero under a zero-sum vector on the uniform profile") {
  Profile p = uniform_profile(CandidateSet::with_default_labels(3));
  ScoringVector alpha = sv({1, 0, -1});
  for (CandidateId c = 0; c < 3; ++c) CHECK(score(p, alpha, c) == Rational(0));
}

TEST_CASE("scores under (1,0,-1) are differences of adjacent pairwise margins") {
  // score(a) = Pr[a first] - Pr[a last] = Pr[a > b] - Pr[b > c] on three
  // candidates; the three scores always sum to zero.
  std::mt19937_64 rng(21);
  ScoringVector alpha = sv({1, 0, -1});
  for (int trial = 0; trial < 30; ++trial) {
    Profile p = helpers::random_profile(rng, 3);
    Rational p1, p2, p3; // Pr[a>b], Pr[b>c], Pr[c>a]
    for (const auto& [ranking, mass] : p.support()) {
      if (ranking.prefers(0, 1)) p1 += mass;
      if (ranking.prefers(1, 2)) p2 += mass;
      if (ranking.prefers(2, 0)) p3 += mass;
    }
    CHECK(score(p, alpha, 0) == p1 - p3);
    CHECK(score(p, alpha, 1) == p2 - p1);
    CHECK(score(p, alpha, 2) == p3 - p2);
    CHECK(score(p, alpha, 0) + score(p, alpha, 1) + score(p, alpha, 2) == Rational(0));
  }
}

TEST_CASE("winners returns the full argmax set in candidate order") {
  Profile point = point_mass(CandidateSet::with_default_labels(3), rk({0, 1, 2}));
  ScoringVector borda = sv({2, 1, 0});
  CHECK(winners(point, borda) == std::set<CandidateId>{0});
  Profile uniform = uniform_profile(CandidateSet::with_default_labels(3));
  CHECK(winners(uniform, borda) == std::set<CandidateId>{0, 1, 2});
  Profile split = half_abc_half_cba();
  CHECK(winners(split, sv({1, 0, 0})) == std::set<CandidateId>{0, 2});
}

TEST_CASE("winner sets are invariant under positive affine rescaling") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 25; ++trial) {
    const int m = 2 + static_cast<int>(rng() % 4);
    Profile p = helpers::random_profile(rng, m);
    ScoringVector alpha = helpers::random_scoring_vector(rng, m);
    Rational scale(1 + static_cast<long long>(rng() % 5), 1 + static_cast<long long>(rng() % 3));
    Rational shift(static_cast<long long>(rng() % 9) - 4);
    std::vector<Rational> rescaled;
    for (const Rational& w : alpha.weights()) rescaled.push_back(scale * w + shift);
    CHECK(winners(p, alpha) == winners(p, ScoringVector(rescaled)));
  }
}

TEST_CASE("basis vectors match their closed form") {
  CHECK(basis_vector(4, 3, 1).weights() == std::vector<Rational>{3, 1, 0, 0});
  CHECK(basis_vector(4, 3, 2).weights() == std::vector<Rational>{0, 2, 2, 0});
  CHECK(basis_vector(4, 3, 3).weights() == std::vector<Rational>{0, 0, 1, 3});
  CHECK(basis_vector(3, 2, 1).weights() == std::vector<Rational>{2, 1, 0});
  CHECK_THROWS_AS(basis_vector(3, 4, 1), std::invalid_argument);
  CHECK_THROWS_AS(basis_vector(3, 2, 3), std::invalid_argument);
}

TEST_CASE("basis vectors vanish before their index and are positive on it") {
  for (int m = 1; m <= 8; ++m) {
    for (int t = 1; t <= m; ++t) {
      BasisFamily family = BasisFamily::build(m, t);
      REQUIRE(static_cast<int>(family.vectors.size()) == t);
      for (int k = 1; k <= t; ++k) {
        const ScoringVector& gen = family.vectors[k - 1];
        for (int j = 0; j < k - 1; ++j) CHECK(gen[j] == Rational(0));
        CHECK(gen[k - 1] == Rational(binomial(m - k, t - k)));
        CHECK(gen[k - 1] > Rational(0));
      }
    }
  }
}

TEST_CASE("span membership produces exact coefficients or a nonzero residual") {
  SECTION("borda lies in the size-two span") {
    for (int m = 3; m <= 6; ++m) {
      std::vector<Rational> borda;
      for (int j = 0; j < m; ++j) borda.emplace_back(m - 1 - j);
      SpanDecision d = span_membership(sv(borda), 2);
      REQUIRE(d.member);
      REQUIRE(d.coefficients.size() == 2);
      // Reconstruct exactly from the returned coefficients.
      BasisFamily family = BasisFamily::build(m, 2);
      for (int j = 0; j < m; ++j) {
        Rational rebuilt = d.coefficients[0] * family.vectors[0][j] +
                           d.coefficients[1] * family.vectors[1][j];
        CHECK(rebuilt == borda[j]);
      }
    }
  }
  SECTION("plurality stays outside every proper span") {
    for (int m = 3; m <= 6; ++m) {
      std::vector<Rational> plu(m, Rational(0));
      plu[0] = Rational(1);
      for (int t = 1; t < m; ++t) {
        SpanDecision d = span_membership(sv(plu), t);
        CHECK(!d.member);
        REQUIRE(!d.residual.empty());
        bool nonzero = false;
        for (const Rational& r : d.residual) {
          if (!r.is_zero()) nonzero = true;
        }
        CHECK(nonzero);
      }
      CHECK(span_membership(sv(plu), m).member);
    }
  }
  SECTION("constant vectors already lie in the size-one span") {
    CHECK(span_membership(sv({1, 1, 1}), 1).member);
    CHECK(span_membership(sv({Rational(2, 3), Rational(2, 3)}), 1).member);
  }
}

TEST_CASE("smaller spans are contained in larger ones") {
  for (int m = 2; m <= 6; ++m) {
    for (int t_small = 1; t_small <= m; ++t_small) {
      for (int t = t_small; t <= m; ++t) {
        for (int k = 1; k <= t_small; ++k) {
          CHECK(span_membership(basis_vector(m, t_small, k), t).member);
        }
      }
    }
  }
}

TEST_CASE("minimal query size matches known rules") {
  CHECK(minimal_query_size(sv({3, 2, 1, 0})) == 2);
  CHECK(minimal_query_size(sv({1, 0, 0, 0})) == 4);
  CHECK(minimal_query_size(sv({1, 1, 1, 1})) == 1);
  CHECK(minimal_query_size(sv({0, 0, 0, -1})) == 4);
  CHECK(minimal_query_size(sv({2, 1, 0})) == 2);
}

TEST_CASE("scores reconstructed through the oracle equal direct scores") {
  Profile hidden = half_abc_half_cba();
  QuerySession session(hidden, 2);
  ScoringVector borda = sv({2, 1, 0});
  for (CandidateId c = 0; c < 3; ++c) {
    CHECK(score_via_queries(session, borda, c) == score(hidden, borda, c));
  }
  CHECK(session.query_count() <= 3);
}

TEST_CASE("constant vectors give every candidate the same reconstructed score") {
  Profile hidden = helpers::make_profile(3, {{{1, 0, 2}, Rational(2, 5)}, {{2, 0, 1}, Rational(3, 5)}});
  QuerySession session(hidden, 1);
  ScoringVector constant = sv({Rational(1, 3), Rational(1, 3), Rational(1, 3)});
  Rational first = score_via_queries(session, constant, 0);
  for (CandidateId c = 1; c < 3; ++c) CHECK(score_via_queries(session, constant, c) == first);
  CHECK(first == Rational(1, 3));
}

TEST_CASE("full-size sessions reconstruct any vector exactly") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    Profile hidden = helpers::random_profile(rng, 4);
    QuerySession session(hidden, 4);
    ScoringVector plu = sv({1, 0, 0, 0});
    for (CandidateId c = 0; c < 4; ++c) {
      CHECK(score_via_queries(session, plu, c) == score(hidden, plu, c));
    }
  }
}

TEST_CASE("vectors outside the span are refused by the oracle path") {
  QuerySession session(half_abc_half_cba(), 2);
  CHECK_THROWS_AS(score_via_queries(session, sv({1, 0, 0}), 0), NotComputableError);
  CHECK(session.query_count() == 0);
}

TEST_CASE("oracle winner sets match direct winner sets on random profiles") {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = 3 + static_cast<int>(rng() % 3);
    Profile hidden = helpers::random_profile(rng, m);
    const int t = 2 + static_cast<int>(rng() % (m - 1));
    ScoringVector alpha = [&] {
      // Random member of the size-t span so the precondition holds.
      std::vector<Rational> w(m, Rational(0));
      BasisFamily family = BasisFamily::build(m, t);
      for (int k = 0; k < t; ++k) {
        Rational lambda(static_cast<long long>(rng() % 7) - 3);
        for (int j = 0; j < m; ++j) w[j] += lambda * family.vectors[k][j];
      }
      return ScoringVector(std::move(w));
    }();
    QuerySession session(hidden, t);
    CHECK(winners_via_queries(session, alpha) == winners(hidden, alpha));
    CHECK(session.query_count() <= static_cast<int>(static_cast<long long>(binomial(m, t))));
  }
}

TEST_CASE("uniform hidden profiles elect everyone through the oracle") {
  Profile hidden = uniform_profile(CandidateSet::with_default_labels(4));
  QuerySession session(hidden, 2);
  CHECK(winners_via_queries(session, sv({3, 2, 1, 0})) == std::set<CandidateId>{0, 1, 2, 3});
}

TEST_CASE("simplex coordinates normalize up to positive affine equivalence") {
  SimplexPoint borda = simplex_coordinates(sv({3, 2, 1, 0}));
  REQUIRE(!borda.constant);
  CHECK(borda.coordinates ==
        std::vector<Rational>{Rational(1, 2), Rational(1, 3), Rational(1, 6), Rational(0)});
  SimplexPoint veto = simplex_coordinates(sv({0, 0, 0, -1}));
  REQUIRE(!veto.constant);
  CHECK(veto.coordinates ==
        std::vector<Rational>{Rational(1, 3), Rational(1, 3), Rational(1, 3), Rational(0)});
  SimplexPoint flat = simplex_coordinates(sv({5, 5, 5}));
  CHECK(flat.constant);
  CHECK(flat.coordinates.empty());
}
