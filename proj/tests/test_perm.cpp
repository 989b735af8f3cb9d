#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "belyi/perm.hpp"
#include "belyi/perm_group.hpp"
#include "belyi/triple.hpp"

using namespace belyi;

TEST_CASE("composition applies the left factor first") {
  // identity case
  auto p = Permutation::from_cycles("(1,2)", 2);
  auto id = Permutation::identity(2);
  CHECK(p * id == p);
  CHECK(id * p == p);
  CHECK(p * p.inverse() == id);

  // the two displayed example triples multiply to the identity in this
  // convention and in no other
  auto s0 = Permutation::from_cycles("(1,4,2,5,3)", 5);
  auto s1 = Permutation::from_cycles("(1,2,3,4)", 5);
  auto si = Permutation::from_cycles("(1,2,3,5)", 5);
  CHECK(((si * s1) * s0).is_identity());

  auto t0 = Permutation::from_cycles("(1,2,3,4,5,6)", 7);
  auto t1 = Permutation::from_cycles("(2,7,6,3,4,5)", 7);
  auto ti = Permutation::from_cycles("(1,7,2)(3,5)(4,6)", 7);
  CHECK(((ti * t1) * t0).is_identity());
}

TEST_CASE("image arrays and cycle strings round-trip") {
  auto s0 = Permutation::from_cycles("(1,4,2,5,3)", 5);
  CHECK(s0.images1() == std::vector<int>{4, 5, 1, 2, 3});
  CHECK(Permutation::from_images1({4, 5, 1, 2, 3}) == s0);
  CHECK(Permutation::from_cycles(s0.cycle_string(), 5) == s0);
  auto id = Permutation::identity(3);
  CHECK(id.cycle_string() == "()");
  CHECK(Permutation::from_cycles("()", 3) == id);
  CHECK_THROWS_AS(Permutation::from_images1({1, 1, 3}), std::invalid_argument);
  CHECK_THROWS_AS(Permutation::from_cycles("(1,2)(2,3)", 3), std::invalid_argument);
}

TEST_CASE("cycle types and index") {
  CHECK(Permutation::identity(5).cycle_type() == Partition({1, 1, 1, 1, 1}));
  CHECK(Permutation::from_cycles("(1,4,2,5,3)", 5).cycle_type() == Partition({5}));
  CHECK(Permutation::from_cycles("(1,7,2)(3,5)(4,6)", 7).cycle_type() == Partition({3, 2, 2}));
  CHECK(Permutation::identity(7).index() == 0);
  CHECK(Permutation::from_cycles("(1,2,3)(4,5)", 5).index() == 3);
  // brute-force orbit count oracle
  auto p = Permutation::from_cycles("(1,4,2,5,3)", 5);
  CHECK(p.index() == 5 - static_cast<int>(p.cycles().size()));
  CHECK(p.index() == 4);
}

TEST_CASE("round trip properties over random permutations") {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 200; ++trial) {
    uint32_t d = 1 + rng() % 11;
    std::vector<int> im(d);
    for (uint32_t i = 0; i < d; ++i) im[i] = static_cast<int>(i);
    std::shuffle(im.begin(), im.end(), rng);
    auto p = Permutation::from_images0(im);
    CHECK((p * p.inverse()).is_identity());
    CHECK(p.inverse().cycle_type() == p.cycle_type());
    std::shuffle(im.begin(), im.end(), rng);
    auto tau = Permutation::from_images0(im);
    CHECK(p.conj(tau).cycle_type() == p.cycle_type());
    CHECK(p.conj(tau).index() == p.index());
    // conj is a right action: (p^a)^b = p^(ab)
    std::shuffle(im.begin(), im.end(), rng);
    auto rho = Permutation::from_images0(im);
    CHECK(p.conj(tau).conj(rho) == p.conj(tau * rho));
  }
}

TEST_CASE("partition parsing and display") {
  Partition p({6, 1});
  CHECK(p.exponent_string() == "6^1 1^1");
  CHECK(Partition::parse_exponent("6^1 1^1") == p);
  CHECK(Partition::parse_exponent("3^2.1^2") == Partition({3, 3, 1, 1}));
  CHECK(Partition({4, 2, 2, 1}).exponent_string('.') == "4^1.2^2.1^1");
  CHECK_THROWS_AS(Partition({1, 2}), std::invalid_argument);
}
