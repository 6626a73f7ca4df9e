#include <catch2/catch_amalgamated.hpp>

#include <votelab/votelab.hpp>

using namespace votelab;

TEST_CASE("the counting bound keeps the exact ratio next to its ceiling") {
  CoverBound b432 = cover_lower_bound(4, 3, 2);
  CHECK(b432.ratio == Rational(2));
  CHECK(b432.ceiling == BigInt(2));
  CoverBound b632 = cover_lower_bound(6, 3, 2);
  CHECK(b632.ratio == Rational(5));
  CHECK(b632.ceiling == BigInt(5));
  CoverBound b542 = cover_lower_bound(5, 4, 2);
  CHECK(b542.ratio == Rational(10, 6));
  CHECK(b542.ceiling == BigInt(2));
  CHECK_THROWS_AS(cover_lower_bound(3, 4, 2), std::invalid_argument);
  CHECK_THROWS_AS(cover_lower_bound(4, 2, 3), std::invalid_argument);
}

TEST_CASE("covering a size with itself needs every subset") {
  for (int m = 2; m <= 6; ++m) {
    for (int t = 1; t <= m; ++t) {
      CHECK(cover_lower_bound(m, t, t).ratio == Rational(binomial(m, t)));
    }
  }
}

TEST_CASE("cover validation finds the first uncovered target") {
  CoverInstance empty{4, 3, 2, {}};
  CoverCheck check = is_cover(empty);
  REQUIRE(!check.covered);
  CHECK(*check.first_uncovered == std::vector<int>{0, 1});

  CoverInstance partial{4, 3, 2, {{0, 1, 2}}};
  check = is_cover(partial);
  REQUIRE(!check.covered);
  CHECK(*check.first_uncovered == std::vector<int>{0, 3});

  CoverInstance full{4, 3, 2, {}};
  for (const auto& s : subsets_of_size(4, 3)) full.sets.push_back(s);
  CHECK(is_cover(full).covered);

  CoverInstance malformed{4, 3, 2, {{0, 1}}};
  CHECK_THROWS_AS(is_cover(malformed), std::invalid_argument);
  CoverInstance out_of_range{4, 3, 2, {{0, 1, 4}}};
  CHECK_THROWS_AS(is_cover(out_of_range), std::invalid_argument);
}

TEST_CASE("greedy covers validate and respect the counting bound") {
  for (int m = 2; m <= 7; ++m) {
    for (int t = 1; t <= m; ++t) {
      for (int t_star = 1; t_star <= t; ++t_star) {
        CoverInstance cover = greedy_cover(m, t, t_star);
        CHECK(is_cover(cover).covered);
        CHECK(BigInt(static_cast<long long>(cover.sets.size())) >=
              cover_lower_bound(m, t, t_star).ceiling);
      }
    }
  }
}

TEST_CASE("greedy covering a size with itself lists every subset") {
  CoverInstance cover = greedy_cover(4, 2, 2);
  CHECK(cover.sets.size() == 6);
  CHECK(is_cover(cover).covered);
}

TEST_CASE("the exact minimum for pairs inside triples of four is three") {
  // The counting bound gives 2, but no two triples of {0..3} contain all six
  // pairs: the bound is a floor, not always attained.
  CHECK(exact_cover_size(4, 3, 2) == 3);
  CoverInstance witness = exact_cover(4, 3, 2);
  CHECK(witness.sets.size() == 3);
  CHECK(is_cover(witness).covered);
}

TEST_CASE("exact covers sit between the bound and the greedy size") {
  for (int m = 2; m <= 6; ++m) {
    for (int t = 1; t <= m; ++t) {
      if (binomial(m, t) > BigInt(20)) continue;
      for (int t_star = 1; t_star <= t; ++t_star) {
        CoverInstance exact = exact_cover(m, t, t_star);
        REQUIRE(is_cover(exact).covered);
        const auto size = static_cast<long long>(exact.sets.size());
        CHECK(BigInt(size) >= cover_lower_bound(m, t, t_star).ceiling);
        CHECK(size <= static_cast<long long>(greedy_cover(m, t, t_star).sets.size()));
        if (t_star == t) CHECK(BigInt(size) == binomial(m, t));
      }
    }
  }
}

TEST_CASE("removing any set from a minimum cover breaks it") {
  CoverInstance exact = exact_cover(5, 3, 2);
  REQUIRE(is_cover(exact).covered);
  for (std::size_t skip = 0; skip < exact.sets.size(); ++skip) {
    CoverInstance reduced{exact.m, exact.t, exact.t_star, {}};
    for (std::size_t i = 0; i < exact.sets.size(); ++i) {
      if (i != skip) reduced.sets.push_back(exact.sets[i]);
    }
    CHECK(!is_cover(reduced).covered);
  }
}

TEST_CASE("exhaustive search refuses oversized base families") {
  CHECK_THROWS_AS(exact_cover(7, 3, 2), CapExceededError);
  CHECK_THROWS_AS(exact_cover(4, 3, 2, 3), CapExceededError);
  CHECK_NOTHROW(exact_cover(4, 3, 2, 4));
}
