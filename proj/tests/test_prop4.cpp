#include <doctest.h>

#include <random>

#include "conglab/congruence.hpp"
#include "conglab/error.hpp"
#include "conglab/prop4.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace conglab;

namespace {

NestedInstance uniform(std::size_t n, unsigned m, const BinRelation& r, const BinRelation& st) {
  NestedInstance inst;
  inst.r.assign(m + 1, r);
  inst.s.assign(m, st);
  inst.t.assign(m, st);
  return inst;
}

NestedInstance random_instance(std::size_t n, unsigned m, std::mt19937& rng) {
  NestedInstance inst;
  for (unsigned i = 0; i <= m; ++i) inst.r.push_back(fixtures::random_relation(n, 0.4, rng));
  for (unsigned i = 0; i < m; ++i) {
    inst.s.push_back(fixtures::random_relation(n, 0.3, rng) | BinRelation::diagonal(n));
    inst.t.push_back(fixtures::random_relation(n, 0.3, rng) | BinRelation::diagonal(n));
  }
  return inst;
}

}  // namespace

TEST_CASE("validate_prop4_instance") {
  auto z2 = fixtures::cyclic_group(2);
  auto d = BinRelation::diagonal(2);
  CHECK_NOTHROW(validate_prop4_instance(z2, uniform(2, 2, d, d)));
  CHECK_THROWS_AS(validate_prop4_instance(z2, uniform(2, 1, d, d)), InvalidInstance);
  auto bad = uniform(2, 2, d, d);
  bad.s[1] = BinRelation(2);
  CHECK_THROWS_AS(validate_prop4_instance(z2, bad), InvalidInstance);
  auto short_r = uniform(2, 2, d, d);
  short_r.r.pop_back();
  CHECK_THROWS_AS(validate_prop4_instance(z2, short_r), InvalidInstance);
  CHECK_THROWS_AS(validate_prop4_instance(z2, uniform(3, 2, BinRelation::diagonal(3),
                                                      BinRelation::diagonal(3))),
                  InvalidInstance);
}

TEST_CASE("nested_layers agrees with chain enumeration") {
  std::mt19937 rng(41);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 2 + i % 3;
    const unsigned m = 2 + i % 3;
    auto inst = random_instance(n, m, rng);
    CHECK(nested_layers(inst).front() == oracle::nested_chain_side(inst));
  }
}

TEST_CASE("prop4_derived") {
  SUBCASE("diagonal S and T stay diagonal") {
    auto z4 = fixtures::cyclic_group(4);
    std::mt19937 rng(42);
    auto inst = uniform(4, 3, fixtures::random_relation(4, 0.5, rng), BinRelation::diagonal(4));
    auto der = prop4_derived(z4, inst);
    for (unsigned i = 1; i <= 3; ++i) {
      CHECK(der.S(i) == BinRelation::diagonal(4));
      CHECK(der.T(i) == BinRelation::diagonal(4));
    }
  }

  SUBCASE("without operations the unions are literal") {
    auto set3 = fixtures::bare_set(3);
    std::mt19937 rng(43);
    auto inst = random_instance(3, 4, rng);
    auto der = prop4_derived(set3, inst);
    REQUIRE(der.r.size() == 5);
    CHECK(der.r[0] == inst.r[0]);
    CHECK(der.r[4] == inst.r[4]);
    for (unsigned i = 1; i < 4; ++i) CHECK(der.r[i] == (inst.r[i - 1] | inst.r[i] | inst.r[i + 1]));
    CHECK(der.S(1) == inst.S(2));
    CHECK(der.T(1) == inst.T(2));
    CHECK(der.S(4) == inst.S(3));
    CHECK(der.T(4) == inst.T(3));
    for (unsigned i = 2; i < 4; ++i) {
      CHECK(der.S(i) == oracle::compose(inst.S(i - 1), inst.S(i + 1)));
      CHECK(der.T(i) == oracle::compose(inst.T(i + 1), inst.T(i - 1)));
    }
  }

  SUBCASE("Z2 boundary at m = 2") {
    auto z2 = fixtures::cyclic_group(2);
    auto s1 = BinRelation::diagonal(2);
    s1.set(0, 1);
    NestedInstance inst = uniform(2, 2, BinRelation::full(2), BinRelation::diagonal(2));
    inst.s[0] = s1;
    auto der = prop4_derived(z2, inst);
    CHECK(der.S(2) == oracle::compatible_closure(z2, s1));
    // (0,1) + (1,1) = (1,0)
    CHECK(der.S(2) == BinRelation::full(2));
    CHECK(der.S(1) == BinRelation::diagonal(2));
    CHECK(der.r.size() == 3);
    CHECK(der.r[1] == BinRelation::full(2));
  }

  SUBCASE("middle indices on random algebras") {
    std::mt19937 rng(44);
    for (int i = 0; i < 20; ++i) {
      auto a = fixtures::random_algebra(3, {2}, rng);
      auto inst = random_instance(3, 4, rng);
      auto der = prop4_derived(a, inst);
      auto cl = [&](const BinRelation& x) { return oracle::compatible_closure(a, x); };
      for (unsigned k = 1; k < 4; ++k)
        CHECK(der.r[k] == cl(inst.r[k - 1] | inst.r[k] | inst.r[k + 1]));
      for (unsigned k = 2; k < 4; ++k) {
        CHECK(der.S(k) == oracle::compose(cl(inst.S(k - 1)), cl(inst.S(k + 1))));
        CHECK(der.T(k) == oracle::compose(cl(inst.T(k + 1)), cl(inst.T(k - 1))));
      }
      CHECK(der.S(1) == cl(inst.S(2)));
      CHECK(der.S(4) == cl(inst.S(3)));
    }
  }
}

TEST_CASE("prop4_check") {
  SUBCASE("all full") {
    auto z2 = fixtures::cyclic_group(2);
    auto v = prop4_check(z2, uniform(2, 3, BinRelation::full(2), BinRelation::full(2)));
    CHECK(v.holds);
    CHECK(v.left == BinRelation::full(2));
    CHECK(v.right == BinRelation::full(2));
  }

  SUBCASE("Z4 random instances hold") {
    auto z4 = fixtures::cyclic_group(4);
    std::mt19937 rng(45);
    for (int i = 0; i < 100; ++i) {
      auto inst = random_instance(4, 2 + i % 2, rng);
      auto v = prop4_check(z4, inst);
      CHECK(v.holds);
      CHECK(v.left == oracle::nested_chain_side(inst));
      CHECK(v.right == oracle::nested_chain_side(prop4_derived(z4, inst)));
    }
  }

  SUBCASE("failures carry a separating pair and a left chain") {
    auto set3 = fixtures::bare_set(3);
    std::mt19937 rng(46);
    int failures = 0;
    for (int i = 0; i < 300; ++i) {
      auto inst = random_instance(3, 2, rng);
      auto v = prop4_check(set3, inst);
      auto ol = oracle::nested_chain_side(inst);
      auto orr = oracle::nested_chain_side(prop4_derived(set3, inst));
      CHECK(v.holds == ol.subset_of(orr));
      if (v.holds) continue;
      ++failures;
      REQUIRE(v.counterexample.has_value());
      REQUIRE(v.left_chain.has_value());
      auto [x, y] = *v.counterexample;
      CHECK(ol.test(x, y));
      CHECK_FALSE(orr.test(x, y));
      CHECK_FALSE(nested_chain_violation(inst, *v.left_chain).has_value());
    }
    CHECK(failures > 0);
  }
}

TEST_CASE("extract_nested_witness") {
  std::mt19937 rng(47);
  for (int i = 0; i < 100; ++i) {
    auto inst = random_instance(4, 3, rng);
    auto side = nested_layers(inst).front();
    for (auto [x, y] : side.pairs()) {
      auto c = extract_nested_witness(inst, x, y);
      CHECK(c.a.front() == x);
      CHECK(c.b.front() == y);
      CHECK_FALSE(nested_chain_violation(inst, c).has_value());
    }
  }
  auto inst = uniform(2, 2, BinRelation::diagonal(2), BinRelation::diagonal(2));
  CHECK_THROWS_AS(extract_nested_witness(inst, 0, 1), InvalidArgument);
  CHECK(extract_nested_witness(inst, 1, 1) == NestedChain{{1, 1, 1}, {1, 1, 1}});
}

TEST_CASE("the X_m substitution reproduces both sides") {
  std::vector<FiniteAlgebra> pool = {fixtures::cyclic_group(4), fixtures::chain_lattice3(),
                                     fixtures::bare_set(3)};
  for (auto& alg : pool) {
    auto con = enumerate_con(alg);
    for (unsigned m = 2; m <= 3; ++m)
      for (auto& a : con)
        for (auto& b : con)
          for (auto& g : con)
            for (auto& d : con) {
              IdentityInstance x;
              x.m = m;
              x.alpha = a.relation();
              x.beta = b.relation();
              x.gamma = g.relation();
              x.delta = d.relation();
              auto nested = nested_from_xm(x);
              auto iv = check_identity(alg, x);
              auto pv = prop4_check(alg, nested);
              CHECK(pv.left == iv.left);
              CHECK(pv.right == iv.right);
            }
  }
}
