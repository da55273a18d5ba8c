#include <doctest.h>

#include <random>

#include "cubefree/additive.hpp"
#include "cubefree/constructions.hpp"
#include "oracles.hpp"

using namespace cubefree;

using V = std::vector<Element>;

namespace {

DenseSet zp(std::int64_t p, V xs) { return DenseSet::from_elements(Ambient::cyclic(p), xs); }

// S_t by enumerating all 2^t - 1 selections.
V s_t_oracle(const V& coeffs, std::int64_t d) {
  std::vector<bool> hit(static_cast<std::size_t>(d), false);
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << coeffs.size()); ++mask) {
    Element sum = 0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      if (mask >> i & 1) sum += coeffs[i];
    }
    hit[static_cast<std::size_t>(mod(sum, d))] = true;
  }
  V out;
  for (Element i = 0; i < d; ++i) {
    if (hit[static_cast<std::size_t>(i)]) out.push_back(i);
  }
  return out;
}

}  // namespace

TEST_CASE("sumset examples") {
  CHECK(sumset(zp(5, {0, 1}), zp(5, {0, 1})).elements() == V{0, 1, 2});
  CHECK(sumset(zp(5, {0}), zp(5, {1, 3, 4})).elements() == V{1, 3, 4});
  CHECK(sumset(zp(3, {0, 1, 2}), zp(3, {1})).elements() == V{0, 1, 2});
  CHECK(sumset(zp(5, {}), zp(5, {1})).empty());
  CHECK_THROWS_AS(sumset(zp(5, {1}), zp(7, {1})), std::invalid_argument);
}

TEST_CASE("sumset matches pairwise sums") {
  std::mt19937_64 rng(41);
  for (std::int64_t n = 1; n <= 70; n += 3) {
    const oracle::Space s{true, n};
    const auto a = oracle::random_subset(s, rng, 0.2);
    const auto b = oracle::random_subset(s, rng, 0.2);
    std::vector<Element> expected;
    for (const auto x : a) {
      for (const auto y : b) expected.push_back((x + y) % n);
    }
    REQUIRE(sumset(zp(n, a), zp(n, b)) == zp(n, expected));
  }
}

TEST_CASE("cauchy_davenport_check examples") {
  const auto p2 = cauchy_davenport_check(2);
  CHECK(p2.pass);
  CHECK(p2.pairs_checked == 9);
  CHECK(cauchy_davenport_check(3).pairs_checked == 49);
  CHECK(cauchy_davenport_check(5).pairs_checked == 961);
  const auto p7 = cauchy_davenport_check(7);
  CHECK(p7.pass);
  CHECK(p7.pairs_checked == 16129);
  CHECK_FALSE(p7.counterexample);
  CHECK_THROWS_AS(cauchy_davenport_check(6), std::invalid_argument);
  CHECK_THROWS_AS(cauchy_davenport_check(17), CapExceeded);
}

TEST_CASE("s_t_set examples") {
  CHECK(s_t_set({1, 1}, 3).achieved.elements() == V{1, 2});
  CHECK(s_t_set({1, 2}, 3).achieved.elements() == V{0, 1, 2});
  CHECK(s_t_set({2, 2, 2}, 4).achieved.elements() == V{0, 2});
  CHECK_THROWS_AS(s_t_set({0, 1}, 3), std::invalid_argument);
  CHECK_THROWS_AS(s_t_set({1, 1, 1, 1}, 3), std::invalid_argument);
}

TEST_CASE("s_t_set matches the 2^t oracle for t <= 12") {
  std::mt19937_64 rng(43);
  for (std::int64_t d = 2; d <= 40; ++d) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto t = 1 + rng() % static_cast<std::uint64_t>(std::min<std::int64_t>(d, 12));
      V coeffs;
      for (std::uint64_t i = 0; i < t; ++i) coeffs.push_back(1 + static_cast<Element>(rng() % (d - 1)));
      REQUIRE(s_t_set(coeffs, d).achieved.elements() == s_t_oracle(coeffs, d));
    }
  }
}

TEST_CASE("verify_s_t_lemma examples") {
  const auto v3 = verify_s_t_lemma(3, 3);
  CHECK(v3.pass);
  CHECK(v3.tuples_checked == 2 + 4 + 8);
  CHECK(verify_s_t_lemma(2, 2).pass);
  const auto v6 = verify_s_t_lemma(6, 6);
  CHECK(v6.pass);
  CHECK(v6.tuples_checked == 5 + 25 + 125 + 625 + 3125 + 15625);
  CHECK_THROWS_AS(verify_s_t_lemma(4, 5), std::invalid_argument);
}

TEST_CASE("the S_t lemma holds on every tuple, checked directly for d <= 6") {
  for (std::int64_t d = 2; d <= 6; ++d) {
    for (std::int64_t t = 1; t <= d; ++t) {
      V coeffs(static_cast<std::size_t>(t), 1);
      while (true) {
        const auto s = s_t_oracle(coeffs, d);
        REQUIRE((s.front() == 0 || static_cast<std::int64_t>(s.size()) >= t));
        std::size_t i = 0;
        while (i < coeffs.size() && coeffs[i] == d - 1) coeffs[i++] = 1;
        if (i == coeffs.size()) break;
        ++coeffs[i];
      }
    }
  }
}

TEST_CASE("zero_subset_sum examples") {
  CHECK(zero_subset_sum({1, 1, 1}, 3) == std::vector<std::size_t>{0, 1, 2});
  CHECK(zero_subset_sum({1, 2, 1}, 3) == std::vector<std::size_t>{0, 1});
  CHECK(zero_subset_sum({1, 3, 2, 2}, 4) == std::vector<std::size_t>{0, 1});
  CHECK_THROWS_AS(zero_subset_sum({1, 1}, 3), std::invalid_argument);
  CHECK_THROWS_AS(zero_subset_sum({1, 3, 1}, 3), std::invalid_argument);
}

TEST_CASE("zero_subset_sum always finds the smallest witness (d <= 6, every tuple)") {
  for (std::int64_t d = 2; d <= 6; ++d) {
    V res(static_cast<std::size_t>(d), 1);
    while (true) {
      const auto w = zero_subset_sum(res, d);
      REQUIRE_FALSE(w.empty());
      Element sum = 0;
      for (const auto i : w) sum += res[i];
      REQUIRE(mod(sum, d) == 0);
      // Lexicographically smallest among all zero-sum index sets.
      std::vector<std::size_t> best;
      for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << d); ++mask) {
        std::vector<std::size_t> idx;
        Element s = 0;
        for (std::size_t i = 0; i < res.size(); ++i) {
          if (mask >> i & 1) {
            idx.push_back(i);
            s += res[i];
          }
        }
        if (mod(s, d) == 0 && (best.empty() || idx < best)) best = idx;
      }
      REQUIRE(w == best);
      std::size_t i = 0;
      while (i < res.size() && res[i] == d - 1) res[i++] = 1;
      if (i == res.size()) break;
      ++res[i];
    }
  }
}

TEST_CASE("family_diagonal examples") {
  const auto f = family_diagonal(5, 3);
  REQUIRE(f.members.size() == 4);
  CHECK(f.members[0].elements() == V{1, 2});
  CHECK(f.members[1].elements() == V{2, 4});
  CHECK(f.members[2].elements() == V{1, 3});
  CHECK(f.members[3].elements() == V{3, 4});
  const auto g = family_diagonal(4, 2);
  for (std::size_t i = 0; i < g.members.size(); ++i) CHECK(g.members[i].elements() == V{g.indices[i]});
  const auto h = family_diagonal(25, 5);
  CHECK(h.members.size() == 24);
  for (const auto& m : h.members) CHECK(m.size() == 4);
  // Distinct indices may give the same set; both are kept.
  CHECK(h.members[4] == h.members[9]);
}

TEST_CASE("family_prime_power examples") {
  const auto f = family_prime_power(2, 3, 2, 1);
  REQUIRE(f.members.size() == 4);
  CHECK(f.members[0].elements() == V{1, 2, 3});
  CHECK(f.members[1].elements() == V{1, 3, 6});
  CHECK(f.members[2].elements() == V{2, 5, 7});
  CHECK(f.members[3].elements() == V{5, 6, 7});
  const auto g = family_prime_power(3, 2, 1, 1);
  REQUIRE(g.members.size() == 6);
  for (std::size_t i = 0; i < g.members.size(); ++i) {
    const auto x = g.indices[i];
    CHECK(g.members[i] == zp(9, {x, (2 * x) % 9}));
  }
  const auto h = family_prime_power(2, 2, 2, 1);
  REQUIRE(h.members.size() == 2);
  CHECK(h.members[0].elements() == V{1, 2, 3});
  CHECK(h.members[1].elements() == V{1, 2, 3});
  CHECK_THROWS_AS(family_prime_power(2, 3, 2, 3), std::invalid_argument);
  CHECK_THROWS_AS(family_prime_power(2, 3, 2, 0), std::invalid_argument);
}

TEST_CASE("incidence_report examples") {
  const auto r = incidence_report(family_diagonal(25, 5), 4, 4);
  CHECK(r.pass);
  CHECK(r.identity_lhs == 4 * 24);
  CHECK(r.identity_rhs == 4 * 24);
  CHECK(r.multiplicity_histogram.at(4) == 24);
  CHECK(r.multiplicity_histogram.at(0) == 1);

  const auto q = incidence_report(family_prime_power(2, 3, 2, 1), 2, 3);
  CHECK(q.pass);
  CHECK(q.identity_lhs == 3 * 4);
  CHECK(q.identity_rhs == 2 * 6);

  CHECK(incidence_report(family_diagonal(5, 3), 2, 2).pass);

  // Wrong expectations fail with a located offender.
  const auto bad = incidence_report(family_diagonal(5, 3), 3, 2);
  CHECK_FALSE(bad.pass);
  CHECK(bad.offending_element.has_value());
  const auto bad_size = incidence_report(family_diagonal(6, 3), 2, 2);
  CHECK_FALSE(bad_size.pass);
}

TEST_CASE("incidence totals balance for every family") {
  for (std::int64_t n = 2; n <= 40; ++n) {
    for (std::int64_t d = 2; d <= 7; ++d) {
      const auto r = incidence_report(family_diagonal(n, d), d - 1, static_cast<std::size_t>(d - 1));
      REQUIRE(r.member_total == r.multiplicity_total);
      // Uniform when d is the smallest prime factor of N.
      if (smallest_prime_factor(n) == d) REQUIRE(r.pass);
    }
  }
  for (const std::int64_t p : {2, 3, 5}) {
    for (int l = 1; ipow(p, l) <= 625; ++l) {
      for (int d = 1; d <= l; ++d) {
        const auto mult = static_cast<std::size_t>((p - 1) * ipow(p, d - 1));
        const auto size = static_cast<std::size_t>(ipow(p, d) - 1);
        for (int a = 1; a <= l - d + 1; ++a) {
          const auto r = incidence_report(family_prime_power(p, l, d, a), mult, size);
          REQUIRE(r.member_total == r.multiplicity_total);
          REQUIRE(r.pass);
        }
      }
    }
  }
}
