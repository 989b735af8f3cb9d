#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "belyi/passport.hpp"
#include "belyi/triple.hpp"

using namespace belyi;

namespace {
Permutation cyc(const std::string& s, uint32_t d) { return Permutation::from_cycles(s, d); }

Permutation random_perm(std::mt19937& rng, uint32_t d) {
  std::vector<int> im(d);
  for (uint32_t i = 0; i < d; ++i) im[i] = static_cast<int>(i);
  std::shuffle(im.begin(), im.end(), rng);
  return Permutation::from_images0(im);
}

PermutationTriple deg5_example() {
  return PermutationTriple(cyc("(1,4,2,5,3)", 5), cyc("(1,2,3,4)", 5), cyc("(1,2,3,5)", 5));
}

PermutationTriple deg7_example() {
  return PermutationTriple(cyc("(1,2,3,4,5,6)", 7), cyc("(2,7,6,3,4,5)", 7), cyc("(1,7,2)(3,5)(4,6)", 7));
}
}  // namespace

TEST_CASE("genus via Riemann-Hurwitz") {
  auto d1 = PermutationTriple::from_pair(Permutation::identity(1), Permutation::identity(1));
  CHECK(triple_genus(d1) == 0);
  CHECK(triple_genus(deg5_example()) == 1);
  CHECK(triple_genus(deg7_example()) == 1);
}

TEST_CASE("canonical triple is constant on orbits and idempotent") {
  std::mt19937 rng(2024);
  auto check_orbit = [&](const PermutationTriple& t, int conjugations) {
    auto canon = canonical_triple(t);
    CHECK(canonical_triple(canon) == canon);
    for (int k = 0; k < conjugations; ++k) {
      auto tau = random_perm(rng, t.degree());
      CHECK(canonical_triple(t.conj(tau)) == canon);
    }
  };
  check_orbit(deg5_example(), 100);
  check_orbit(deg7_example(), 100);
  auto id1 = PermutationTriple::from_pair(Permutation::identity(1), Permutation::identity(1));
  CHECK(canonical_triple(id1) == id1);
  // canonical form is minimal: spot-check against a full scan in degree 4
  std::vector<PermutationTriple> pool;
  for (int trial = 0; trial < 5; ++trial) {
    auto t = PermutationTriple::from_pair(random_perm(rng, 4), random_perm(rng, 4));
    auto canon = canonical_triple(t);
    std::vector<int> im{0, 1, 2, 3};
    bool any_smaller = false;
    do {
      auto img = t.conj(Permutation::from_images0(im));
      if (img < canon) any_smaller = true;
    } while (std::next_permutation(im.begin(), im.end()));
    CHECK_FALSE(any_smaller);
  }
}

TEST_CASE("simultaneous conjugator") {
  auto t = deg5_example();
  CHECK(simultaneous_conjugator(t, t).has_value());
  std::mt19937 rng(7);
  for (int k = 0; k < 20; ++k) {
    auto tau = random_perm(rng, 5);
    auto found = simultaneous_conjugator(t, t.conj(tau));
    REQUIRE(found.has_value());
    CHECK(t.conj(*found) == t.conj(tau));
  }
  // two distinct representatives of the size-13 family are not conjugate
  auto a = deg7_example();
  auto b = canonical_triple(a);
  CHECK(simultaneous_conjugator(a, b).has_value());
}

TEST_CASE("triple automorphisms") {
  // the degree-5 example generates S_5, whose centralizer is trivial
  CHECK(triple_automorphisms(deg5_example()).order() == 1);
  CHECK(triple_automorphisms(deg7_example()).order() == 1);

  // brute-force cross-check for small degrees: |Aut| equals the count of
  // tau fixing the triple
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    uint32_t d = 2 + rng() % 5;
    auto t = PermutationTriple::from_pair(random_perm(rng, d), random_perm(rng, d));
    PermGroup aut = triple_automorphisms(t);
    std::vector<int> im(d);
    for (uint32_t i = 0; i < d; ++i) im[i] = static_cast<int>(i);
    std::size_t count = 0;
    do {
      auto tau = Permutation::from_images0(im);
      if (t.conj(tau) == t) ++count;
    } while (std::next_permutation(im.begin(), im.end()));
    CHECK(aut.order() == count);
    // closure property
    for (const auto& a : aut.elements)
      for (const auto& b : aut.elements) CHECK(aut.contains(a * b));
    if (t.transitive()) CHECK(d % aut.order() == 0);
  }
}

TEST_CASE("relabelings of the three base points") {
  auto t = deg7_example();
  auto imgs = s3_images(t);
  // every image is a valid triple; the multiset of cycle types is preserved
  std::array<Partition, 3> base = t.lambda();
  std::sort(base.begin(), base.end());
  std::set<std::array<std::vector<int>, 3>> role_perms;
  for (const auto& img : imgs) {
    CHECK(((img.sinf * img.s1) * img.s0).is_identity());
    auto lam = img.lambda();
    std::array<std::vector<int>, 3> key{lam[0].parts, lam[1].parts, lam[2].parts};
    role_perms.insert(key);
    std::sort(lam.begin(), lam.end());
    CHECK(lam == base);
    // the generated group is untouched
    CHECK(identify_generated({img.s0, img.s1}).order == 5040);
  }
  // lambda = (61, 61, 322) admits three distinct role arrangements
  CHECK(role_perms.size() == 3);
}

TEST_CASE("partition order") {
  CHECK(partition_leq(Partition({5}), Partition({4, 1})));
  CHECK(partition_leq(Partition({3, 1}), Partition({3, 1})));
  CHECK_FALSE(partition_leq(Partition({2, 2}), Partition({4})));
  CHECK_THROWS_AS(partition_leq(Partition({2}), Partition({1, 1, 1})), std::invalid_argument);
  // total order: trichotomy and transitivity over all partitions of 6
  auto parts = partitions_of(6);
  for (const auto& a : parts)
    for (const auto& b : parts) {
      CHECK((partition_leq(a, b) || partition_leq(b, a)));
      if (partition_leq(a, b) && partition_leq(b, a)) CHECK(a == b);
      for (const auto& c : parts)
        if (partition_leq(a, b) && partition_leq(b, c)) CHECK(partition_leq(a, c));
    }
}
