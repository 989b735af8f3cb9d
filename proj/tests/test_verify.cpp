#include <catch2/catch_amalgamated.hpp>

#include "belyi/verify.hpp"

using namespace belyi;

namespace {
Poly<Rat> P(std::vector<int> c) {
  std::vector<Rat> q(c.begin(), c.end());
  return Poly<Rat>(std::move(q));
}

BelyiMapFixture genus2_fixture() {
  BelyiMapFixture fx;
  fx.genus = 2;
  fx.model = HyperellipticModel<Rat>(2, Poly<Rat>(), P({3, 0, 6, 0, 4, 0, 1}));
  fx.num = {P({1, 0, 2, 0, 1}), P({0, 1})};       // x^4 + 2x^2 + 1 + x y
  fx.den = {P({2, 0, 4, 0, 2}), Poly<Rat>()};     // 2 (x^2 + 1)^2
  fx.lambda = {Partition({6}), Partition({6}), Partition({3, 3})};
  return fx;
}

BelyiMapFixture elliptic_fixture() {
  BelyiMapFixture fx;
  fx.genus = 1;
  fx.model = HyperellipticModel<Rat>(1, Poly<Rat>(), P({10, 5, 0, 1}));
  fx.num = {P({16}), P({-5, 1})};  // (x - 5) y + 16
  fx.den = {P({32}), Poly<Rat>()};
  fx.lambda = {Partition({5}), Partition({4, 1}), Partition({4, 1})};
  return fx;
}

BelyiMapFixture degree8_fixture() {
  BelyiMapFixture fx;
  fx.genus = 1;
  fx.model = HyperellipticModel<Rat>(1, Poly<Rat>(), P({8, 8, 1, 1}));
  fx.num = {P({-3072, -5120, -2560, -768, -272, -16}), P({1088, 1280, 368, 96, 28})};
  fx.den = {Poly<Rat>(), P({0, 0, 0, 0, 27})};  // 27 x^4 y
  fx.lambda = {Partition({3, 3, 1, 1}), Partition({4, 4}), Partition({4, 4})};
  return fx;
}
}  // namespace

TEST_CASE("published maps pass ramification verification") {
  auto r1 = verify_ramification(genus2_fixture(), 50);
  INFO(r1.message);
  CHECK(r1.pass);
  CHECK_FALSE(r1.inconclusive);
  CHECK(r1.degree == 6);

  auto r2 = verify_ramification(elliptic_fixture(), 50);
  INFO(r2.message);
  CHECK(r2.pass);
  CHECK(r2.degree == 5);

  auto r3 = verify_ramification(degree8_fixture(), 50);
  INFO(r3.message);
  CHECK(r3.pass);
  CHECK(r3.degree == 8);
}

TEST_CASE("perturbed fixtures fail") {
  auto perturb = [](Poly<Rat>& p) {
    for (auto& c : p.c)
      if (c != 0) {
        c *= Rat(101) / 100;
        break;
      }
  };
  {
    auto fx = genus2_fixture();
    perturb(fx.num.a);
    auto r = verify_ramification(fx, 50);
    CHECK_FALSE(r.pass);
  }
  {
    auto fx = elliptic_fixture();
    perturb(fx.num.a);
    auto r = verify_ramification(fx, 50);
    CHECK_FALSE(r.pass);
  }
  {
    auto fx = degree8_fixture();
    perturb(fx.num.b);
    auto r = verify_ramification(fx, 50);
    CHECK_FALSE(r.pass);
  }
}

TEST_CASE("exact genus-zero verification") {
  // cyclic map x^6
  BelyiMapFixture fx;
  fx.genus = 0;
  fx.num0 = poly_pow(Poly<Rat>::x(), 6);
  fx.den0 = Poly<Rat>::constant(Rat(1));
  fx.lambda = {Partition({6}), Partition({1, 1, 1, 1, 1, 1}), Partition({6})};
  auto r = verify_ramification(fx);
  INFO(r.message);
  CHECK(r.pass);
  CHECK(r.found[1] == std::vector<int>({1, 1, 1, 1, 1, 1}));

  // the dihedral-style degree-2 map 4x(1-x) has partitions (1,1; 2; 2) up to roles
  BelyiMapFixture dih;
  dih.genus = 0;
  dih.num0 = Poly<Rat>(std::vector<Rat>{Rat(0), Rat(4), Rat(-4)});
  dih.den0 = Poly<Rat>::constant(Rat(1));
  dih.lambda = {Partition({1, 1}), Partition({2}), Partition({2})};
  CHECK(verify_ramification(dih).pass);

  // wrong expectation fails
  dih.lambda = {Partition({2}), Partition({2}), Partition({2})};
  CHECK_FALSE(verify_ramification(dih).pass);

  // degenerate map reported
  BelyiMapFixture cst;
  cst.genus = 0;
  cst.num0 = Poly<Rat>::constant(Rat(7));
  cst.den0 = Poly<Rat>::constant(Rat(14));
  cst.lambda = {Partition({1}), Partition({1}), Partition({1})};
  auto rc = verify_ramification(cst);
  CHECK_FALSE(rc.pass);
  CHECK(rc.message.find("degenerate") != std::string::npos);

  // fiber degrees always sum to the map degree
  for (const auto& f : {fx, dih}) {
    auto rep = verify_ramification(f);
    for (int k = 0; k < 3; ++k) {
      int sum = 0;
      for (int e : rep.found[static_cast<std::size_t>(k)]) sum += e;
      CHECK(sum == rep.degree);
    }
  }
}

TEST_CASE("sub-tolerance perturbations are reported, not guessed") {
  // a 1e-30 nudge at 50 working digits lands between the hard and soft
  // thresholds: the verdict must be inconclusive rather than a silent pass
  auto fx = elliptic_fixture();
  fx.num.a.c[0] += Rat(1) / Int("1000000000000000000000000000000");
  auto r = verify_ramification(fx, 50);
  CHECK_FALSE(r.pass);
  CHECK(r.inconclusive);
}
