#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "pgroups/commutators.hpp"

using namespace pgroups;

TEST_CASE("witt_count small values") {
  CHECK(witt_count(2, 1) == 2);  // the generators themselves
  CHECK(witt_count(2, 2) == 1);
  CHECK(witt_count(2, 3) == 2);
  CHECK(witt_count(3, 2) == 3);
  // same values via the brute-force Lyndon-word count
  CHECK(testutil::lyndon_count(2, 1) == 2);
  CHECK(testutil::lyndon_count(2, 2) == 1);
  CHECK(testutil::lyndon_count(2, 3) == 2);
  CHECK(testutil::lyndon_count(3, 2) == 3);
}

TEST_CASE("witt_count agrees with Lyndon enumeration for r<=4, w<=6") {
  for (int r = 1; r <= 4; ++r)
    for (int w = 1; w <= 6; ++w)
      CHECK(witt_count(r, w) == testutil::lyndon_count(r, w));
}

TEST_CASE("witt_count rejects bad arguments") {
  CHECK_THROWS_AS(witt_count(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(witt_count(2, 0), std::invalid_argument);
}

TEST_CASE("cumulative_count") {
  CHECK(cumulative_count(2, 1) == 2);
  CHECK(cumulative_count(2, 2) == 3);
  CHECK(cumulative_count(2, 3) == 5);
  for (int r = 2; r <= 4; ++r) {
    long long sum = 0;
    for (int i = 1; i <= 6; ++i) {
      sum += witt_count(r, i);
      CHECK(cumulative_count(r, i) == sum);
    }
  }
}

TEST_CASE("table on two generators up to weight 3") {
  CommutatorTable t = basic_commutators(2, 3);
  REQUIRE(t.size() == 5);
  CHECK(t.name(0) == "a");
  CHECK(t.name(1) == "b");
  CHECK(t.name(2) == "[b,a]");
  CHECK(t.name(3) == "[[b,a],a]");
  CHECK(t.name(4) == "[[b,a],b]");
  CHECK(t.pair_id(1, 0) == 2);
  CHECK(t.pair_id(2, 0) == 3);
  CHECK(t.pair_id(2, 1) == 4);
  CHECK(t.pair_id(0, 1) == -1);
}

TEST_CASE("table on two generators up to weight 2") {
  CommutatorTable t = basic_commutators(2, 2);
  REQUIRE(t.size() == 3);
  CHECK(t.count_of_weight(1) == 2);
  CHECK(t.count_of_weight(2) == 1);
}

TEST_CASE("weight-1 entries are the generators in index order") {
  CommutatorTable t = basic_commutators(2, 1);
  REQUIRE(t.size() == 2);
  CHECK(t.entry(0).gen == 0);
  CHECK(t.entry(1).gen == 1);
  CHECK(t.name(0) == "a");
  CHECK(t.name(1) == "b");
}

TEST_CASE("per-weight table counts match witt_count for r<=4, w<=6") {
  for (int r = 2; r <= 4; ++r) {
    CommutatorTable t = basic_commutators(r, 6);
    for (int w = 1; w <= 6; ++w) CHECK(t.count_of_weight(w) == witt_count(r, w));
    CHECK(static_cast<long long>(t.size()) == cumulative_count(r, 6));
  }
}

TEST_CASE("structural invariants of the table") {
  for (int r = 2; r <= 4; ++r) {
    CommutatorTable t = basic_commutators(r, 6);
    int prev_weight = 1;
    for (int id = 0; id < t.size(); ++id) {
      const BasicCommutator& c = t.entry(id);
      CHECK(c.id == id);
      CHECK(c.weight >= prev_weight);  // ids ordered by weight
      prev_weight = c.weight;
      if (c.is_generator()) {
        CHECK(c.weight == 1);
        continue;
      }
      // the Hall conditions
      CHECK(c.left > c.right);
      CHECK(c.weight == t.weight(c.left) + t.weight(c.right));
      const BasicCommutator& l = t.entry(c.left);
      if (!l.is_generator()) CHECK(c.right >= l.right);
    }
    // lexicographic (left, right) order inside each weight class
    for (int w = 2; w <= 6; ++w) {
      for (int id = t.first_of_weight(w) + 1; id < t.first_of_weight(w + 1); ++id) {
        auto a = std::make_pair(t.entry(id - 1).left, t.entry(id - 1).right);
        auto b = std::make_pair(t.entry(id).left, t.entry(id).right);
        CHECK(a < b);
      }
    }
  }
}

TEST_CASE("table is complete: every Hall-admissible pair is present") {
  CommutatorTable t = basic_commutators(3, 5);
  for (int u = 0; u < t.size(); ++u) {
    for (int v = 0; v < u; ++v) {
      if (t.weight(u) + t.weight(v) > 5) continue;
      const BasicCommutator& cu = t.entry(u);
      bool hall = cu.is_generator() || v >= cu.right;
      CHECK((t.pair_id(u, v) >= 0) == hall);
    }
  }
}

TEST_CASE("construction is deterministic") {
  CommutatorTable a = basic_commutators(3, 4);
  CommutatorTable b = basic_commutators(3, 4);
  REQUIRE(a.size() == b.size());
  for (int id = 0; id < a.size(); ++id) {
    CHECK(a.entry(id).left == b.entry(id).left);
    CHECK(a.entry(id).right == b.entry(id).right);
    CHECK(a.entry(id).gen == b.entry(id).gen);
  }
}

TEST_CASE("entry cap is enforced") {
  try {
    basic_commutators(4, 6, 50);
    FAIL("expected ResourceError");
  } catch (const ResourceError& e) {
    CHECK(e.required() > 50);
  }
}
