#include <doctest.h>

#include <set>

#include "cubefree/constructions.hpp"
#include "cubefree/cube.hpp"
#include "oracles.hpp"

using namespace cubefree;

using V = std::vector<Element>;

TEST_CASE("residue_construction examples") {
  CHECK(residue_construction(9, 3).elements() == V{1, 2, 4, 5, 7, 8});
  CHECK(residue_construction(6, 2).elements() == V{1, 3, 5});
  CHECK(residue_construction(4, 4).elements() == V{1, 2, 3});
  CHECK_THROWS_AS(residue_construction(10, 3), std::invalid_argument);
  CHECK_THROWS_AS(residue_construction(10, 1), std::invalid_argument);
}

TEST_CASE("residue_construction is cube-free with (d-1)N/d elements") {
  for (std::int64_t d = 2; d <= 5; ++d) {
    for (std::int64_t n = d; n <= 60; n += d) {
      const auto a = residue_construction(n, d);
      REQUIRE(static_cast<std::int64_t>(a.size()) == (d - 1) * n / d);
      REQUIRE(is_cube_free(a, static_cast<int>(d)));
    }
  }
  // Small cases against the independent multiset oracle.
  for (std::int64_t d = 2; d <= 4; ++d) {
    for (std::int64_t n = d; n <= 12; n += d) {
      CHECK(oracle::cube_free({true, n}, residue_construction(n, d).elements(), static_cast<int>(d)));
    }
  }
}

TEST_CASE("interval_construction examples and dichotomy") {
  CHECK(interval_construction(Ambient::interval(9)).elements() == V{4, 5, 6, 7, 8, 9});
  CHECK(interval_construction(Ambient::cyclic(9)).elements() == V{0, 4, 5, 6, 7, 8});
  CHECK(interval_construction(Ambient::interval(3)).elements() == V{2, 3});
  CHECK_THROWS_AS(interval_construction(Ambient::interval(10)), std::invalid_argument);
  for (std::int64_t n = 3; n <= 30; n += 3) {
    CHECK(is_cube_free(interval_construction(Ambient::interval(n)), 3));
    const auto w = find_cube(interval_construction(Ambient::cyclic(n)), 3);
    REQUIRE(w);
    CHECK(w->cube.is_subset_of(interval_construction(Ambient::cyclic(n))));
    CHECK(project_cube(w->generator) == w->cube);
  }
}

TEST_CASE("chain_decomposition examples") {
  CHECK(chain_decomposition(10, 2).chains == std::vector<V>{{1, 2, 4, 8}, {3, 6}, {5, 10}, {7}, {9}});
  CHECK(chain_decomposition(3, 5).chains == std::vector<V>{{1}, {2}, {3}});
  CHECK(chain_decomposition(9, 3).chains == std::vector<V>{{1, 3, 9}, {2, 6}, {4}, {5}, {7}, {8}});
  CHECK_THROWS_AS(chain_decomposition(10, 1), std::invalid_argument);
}

TEST_CASE("chains and integer layers partition [N]") {
  for (std::int64_t n = 1; n <= 200; n += 7) {
    for (std::int64_t d = 2; d <= 5; ++d) {
      std::multiset<Element> seen;
      for (const auto& chain : chain_decomposition(n, d).chains) {
        for (std::size_t i = 0; i < chain.size(); ++i) {
          seen.insert(chain[i]);
          if (i) REQUIRE(chain[i] == chain[i - 1] * d);
        }
        REQUIRE(chain[0] % d != 0);
      }
      REQUIRE(seen.size() == static_cast<std::size_t>(n));
      REQUIRE(std::set<Element>(seen.begin(), seen.end()).size() == static_cast<std::size_t>(n));

      std::size_t total = 0;
      const auto layers = integer_layers(n, d);
      for (std::size_t i = 1; i <= layers.layers.size(); ++i) {
        layers.layer(i).for_each([&](Element x) { REQUIRE(factorize(x, d).exponent == static_cast<int>(i) - 1); });
        total += layers.layer(i).size();
      }
      REQUIRE(total == static_cast<std::size_t>(n));
    }
  }
}

TEST_CASE("matrix_coord examples") {
  CHECK(matrix_coord(1, 2) == MatrixCoord{1, 1});
  CHECK(matrix_coord(12, 2) == MatrixCoord{3, 2});
  CHECK(matrix_coord(7, 3) == MatrixCoord{1, 5});
  CHECK(matrix_coord_inverse({1, 1}, 2) == 1);
  CHECK(matrix_coord_inverse({3, 2}, 2) == 12);
  CHECK(matrix_coord_inverse({2, 3}, 3) == 12);
  CHECK_THROWS_AS(matrix_coord(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(matrix_coord_inverse({0, 1}, 2), std::invalid_argument);
}

TEST_CASE("matrix_coord is injective and inverted on [1, 10^5]") {
  for (const std::int64_t d : {2, 3, 5}) {
    std::set<std::pair<std::int64_t, std::int64_t>> seen;
    for (std::int64_t m = 1; m <= 100000; ++m) {
      const auto c = matrix_coord(m, d);
      REQUIRE(seen.insert({c.row, c.col}).second);
      REQUIRE(matrix_coord_inverse(c, d) == m);
    }
    // The other direction: every coordinate in a small grid comes back.
    for (std::int64_t row = 1; row <= 6; ++row) {
      for (std::int64_t col = 1; col <= 50; ++col) {
        REQUIRE(matrix_coord(matrix_coord_inverse({row, col}, d), d) == MatrixCoord{row, col});
      }
    }
  }
}

TEST_CASE("integer and prime-power layer examples") {
  const auto li = integer_layers(10, 2);
  REQUIRE(li.layers.size() == 4);
  CHECK(li.layer(1).elements() == V{1, 3, 5, 7, 9});
  CHECK(li.layer(2).elements() == V{2, 6, 10});
  CHECK(li.layer(3).elements() == V{4});
  CHECK(li.layer(4).elements() == V{8});

  const auto lp = prime_power_layers(2, 3);
  REQUIRE(lp.layers.size() == 4);
  CHECK(lp.layer(1).elements() == V{1, 3, 5, 7});
  CHECK(lp.layer(2).elements() == V{2, 6});
  CHECK(lp.layer(3).elements() == V{4});
  CHECK(lp.layer(4).elements() == V{0});
  CHECK(lp.layer_range(1, 2).elements() == V{1, 2, 3, 5, 6, 7});

  const auto l3 = prime_power_layers(3, 1);
  CHECK(l3.layer(1).elements() == V{1, 2});
  CHECK(l3.layer(2).elements() == V{0});
  CHECK_THROWS_AS(prime_power_layers(4, 2), std::invalid_argument);
}

TEST_CASE("prime-power layer sizes are (p-1)p^(l-i), and 1 for the zero layer") {
  for (const std::int64_t p : {2, 3, 5, 7}) {
    for (int l = 1; ipow(p, l) <= 5000; ++l) {
      const auto lp = prime_power_layers(p, l);
      REQUIRE(lp.layers.size() == static_cast<std::size_t>(l + 1));
      std::size_t total = 0;
      for (int i = 1; i <= l; ++i) {
        REQUIRE(static_cast<std::int64_t>(lp.layer(i).size()) == (p - 1) * ipow(p, l - i));
        total += lp.layer(i).size();
      }
      REQUIRE(lp.layer(l + 1).elements() == V{0});
      REQUIRE(total + 1 == static_cast<std::size_t>(ipow(p, l)));
    }
  }
}

TEST_CASE("alternating_chain_set examples") {
  CHECK(alternating_chain_set(10, 2).elements() == V{1, 3, 4, 5, 7, 9});
  CHECK(alternating_chain_set(3, 5).elements() == V{1, 2, 3});
  CHECK(alternating_chain_set(9, 3).elements() == V{1, 2, 4, 5, 7, 8, 9});
}

TEST_CASE("alternating_chain_set is pair-free and takes ceil(|C|/2) per chain") {
  for (std::int64_t n = 1; n <= 300; n += 11) {
    for (std::int64_t d = 2; d <= 6; ++d) {
      const auto a = alternating_chain_set(n, d);
      REQUIRE((a & dilate(a, d)).empty());
      std::size_t expected = 0;
      for (const auto& chain : chain_decomposition(n, d).chains) expected += (chain.size() + 1) / 2;
      REQUIRE(a.size() == expected);
    }
  }
}

TEST_CASE("block_partition examples") {
  const auto b = block_partition(2, 3, 2);
  CHECK(b.q == 2);
  REQUIRE(b.ranges.size() == 2);
  CHECK(b.ranges[0] == std::pair{1, 2});
  CHECK(b.blocks[0].elements() == V{1, 2, 3, 5, 6, 7});
  CHECK(b.ranges[1] == std::pair{3, 4});
  CHECK(b.blocks[1].elements() == V{0, 4});

  const auto c = block_partition(3, 1, 2);
  CHECK(c.q == 1);
  REQUIRE(c.ranges.size() == 1);
  CHECK(c.blocks[0].elements() == V{0, 1, 2});

  // Width-d ranges [1,2], [3,4], then the remainder [5,5] = {0}.
  const auto e = block_partition(2, 4, 2);
  CHECK(e.q == 2);
  REQUIRE(e.ranges.size() == 3);
  CHECK(e.ranges[0] == std::pair{1, 2});
  CHECK(e.ranges[1] == std::pair{3, 4});
  CHECK(e.ranges[2] == std::pair{5, 5});
  CHECK(e.blocks[2].elements() == V{0});
}

TEST_CASE("blocks partition Z_{p^l} into ceil((l+1)/d) pieces") {
  for (const std::int64_t p : {2, 3, 5}) {
    for (int l = 1; l <= 5; ++l) {
      for (int d = 1; d <= l + 1; ++d) {
        const auto b = block_partition(p, l, d);
        REQUIRE(b.blocks.size() == static_cast<std::size_t>((l + 1 + d - 1) / d));
        std::size_t total = 0;
        for (std::size_t i = 0; i < b.blocks.size(); ++i) {
          total += b.blocks[i].size();
          for (std::size_t j = i + 1; j < b.blocks.size(); ++j) REQUIRE((b.blocks[i] & b.blocks[j]).empty());
        }
        REQUIRE(total == static_cast<std::size_t>(ipow(p, l)));
      }
    }
  }
}
