#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "conglab/congruence.hpp"
#include "conglab/error.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace conglab;

namespace {

std::set<std::vector<std::size_t>> partitions_of(const std::vector<Congruence>& con) {
  std::set<std::vector<std::size_t>> out;
  for (auto& c : con) out.insert(c.partition());
  return out;
}

// meet of every scanned congruence containing (x, y)
BinRelation oracle_principal(const FiniteAlgebra& a, Element x, Element y) {
  BinRelation out = BinRelation::full(a.size());
  for (auto& p : oracle::partition_scan(a))
    if (p[x] == p[y]) out = out & oracle::partition_relation(p);
  return out;
}

}  // namespace

TEST_CASE("canonical partition form") {
  auto c = Congruence::from_partition({5, 5, 2, 5});
  CHECK(c.partition() == std::vector<std::size_t>{0, 0, 1, 0});
  CHECK(c.block_count() == 2);
  CHECK(c.relation() == oracle::partition_relation({0, 0, 1, 0}));
  CHECK(Congruence::from_equivalence(c.relation()) == c);
}

TEST_CASE("as_congruence") {
  auto z4 = fixtures::cyclic_group(4);
  CHECK(as_congruence(z4, BinRelation::diagonal(4)) == Congruence::bottom(4));
  CHECK(as_congruence(z4, BinRelation::full(4)) == Congruence::top(4));
  REQUIRE(oracle::partition_compatible(z4, {0, 1, 0, 1}));
  CHECK(as_congruence(z4, oracle::partition_relation({0, 1, 0, 1})).partition() ==
        std::vector<std::size_t>{0, 1, 0, 1});

  try {
    as_congruence(z4, oracle::partition_relation({0, 0, 1, 1}));
    FAIL("accepted a non-compatible partition");
  } catch (const CongruenceError& e) {
    CHECK(e.kind() == CongruenceError::Kind::NotCompatible);
  }
  BinRelation r = BinRelation::diagonal(4);
  r.set(0, 1);
  try {
    as_congruence(z4, r);
    FAIL("accepted a non-symmetric relation");
  } catch (const CongruenceError& e) {
    CHECK(e.kind() == CongruenceError::Kind::NotEquivalence);
  }
}

TEST_CASE("principal_congruence") {
  auto z4 = fixtures::cyclic_group(4);
  CHECK(principal_congruence(z4, 1, 1) == Congruence::bottom(4));
  CHECK(principal_congruence(z4, 0, 2).relation() == oracle_principal(z4, 0, 2));
  CHECK(principal_congruence(z4, 0, 2).partition() == std::vector<std::size_t>{0, 1, 0, 1});
  CHECK(principal_congruence(z4, 0, 1).relation() == oracle_principal(z4, 0, 1));
  CHECK(principal_congruence(z4, 0, 1) == Congruence::top(4));
}

TEST_CASE("principal_congruence is the meet of containing congruences (n <= 6)") {
  std::mt19937 rng(21);
  for (int i = 0; i < 25; ++i) {
    const std::size_t n = 2 + i % 5;
    auto a = fixtures::random_algebra(n, {i % 2 == 0 ? 1u : 2u}, rng);
    for (Element x = 0; x < n; ++x)
      for (Element y = x + 1; y < n; ++y)
        CHECK(principal_congruence(a, x, y).relation() == oracle_principal(a, x, y));
  }
}

TEST_CASE("enumerate_con") {
  auto z4 = fixtures::cyclic_group(4);
  auto con = enumerate_con(z4);
  CHECK(con.size() == oracle::partition_scan(z4).size());
  CHECK(con.size() == 3);
  CHECK(con.front() == Congruence::bottom(4));
  CHECK(con.back() == Congruence::top(4));

  CHECK(enumerate_con(fixtures::bare_set(1)).size() == 1);
  CHECK(enumerate_con(fixtures::bare_set(2)).size() == 2);
  CHECK(enumerate_con(fixtures::bare_set(4)).size() == 15);

  const auto cap = enumeration_cap();
  set_enumeration_cap(3);
  CHECK_THROWS_AS(enumerate_con(z4), CapExceeded);
  set_enumeration_cap(cap);
}

TEST_CASE("enumerate_con matches the partition scan on random algebras (n <= 5)") {
  std::mt19937 rng(22);
  for (int i = 0; i < 40; ++i) {
    const std::size_t n = 1 + i % 5;
    auto a = fixtures::random_algebra(n, {i % 3 == 0 ? 2u : 1u}, rng);
    auto con = enumerate_con(a);
    CHECK(partitions_of(con) == oracle::partition_scan(a));
    CHECK(std::is_sorted(con.begin(), con.end()));
  }
}

TEST_CASE("join and meet") {
  auto k = fixtures::klein_group();
  auto con = enumerate_con(k);
  CHECK(partitions_of(con) == oracle::partition_scan(k));
  auto ker1 = Congruence::from_partition({0, 0, 1, 1});
  auto ker2 = Congruence::from_partition({0, 1, 0, 1});
  REQUIRE(partitions_of(con).count(ker1.partition()));
  REQUIRE(partitions_of(con).count(ker2.partition()));
  // the only scanned congruence containing both kernels is the top
  for (auto& c : con)
    if (ker1.leq(c) && ker2.leq(c)) CHECK(c == Congruence::top(4));
  CHECK(join(k, ker1, ker2) == Congruence::top(4));
  CHECK(meet(ker1, ker2) == Congruence::bottom(4));

  auto z4 = fixtures::cyclic_group(4);
  auto c = principal_congruence(z4, 0, 2);
  CHECK(join(z4, c, Congruence::bottom(4)) == c);
  CHECK(meet(c, Congruence::top(4)) == c);
  CHECK(join(z4, c, c) == c);
}

TEST_CASE("lattice axioms on Con A (n <= 4)") {
  std::vector<FiniteAlgebra> pool = {fixtures::cyclic_group(4), fixtures::klein_group(),
                                     fixtures::chain_lattice3(), fixtures::bare_set(4)};
  std::mt19937 rng(23);
  for (int i = 0; i < 6; ++i) pool.push_back(fixtures::random_algebra(4, {1}, rng));
  for (auto& a : pool) {
    auto con = enumerate_con(a);
    std::set<std::vector<std::size_t>> all = partitions_of(con);
    for (auto& x : con)
      for (auto& y : con) {
        auto j = join(a, x, y);
        auto m = meet(x, y);
        CHECK(all.count(j.partition()));
        CHECK(all.count(m.partition()));
        CHECK(j == join(a, y, x));
        CHECK(m == meet(y, x));
        CHECK(join(a, x, m) == x);
        CHECK(meet(x, j) == x);
        CHECK(x.leq(j));
        CHECK(m.leq(x));
        // least upper bound against every congruence above both
        for (auto& z : con)
          if (x.leq(z) && y.leq(z)) CHECK(j.leq(z));
        for (auto& z : con) {
          CHECK(join(a, join(a, x, y), z) == join(a, x, join(a, y, z)));
          CHECK(meet(meet(x, y), z) == meet(x, meet(y, z)));
        }
      }
  }
}

TEST_CASE("beta_gamma") {
  auto k = fixtures::klein_group();
  auto top = Congruence::top(4);
  auto ker1 = Congruence::from_partition({0, 0, 1, 1});
  auto ker2 = Congruence::from_partition({0, 1, 0, 1});
  auto p0 = beta_gamma(k, top, ker1, ker2, 0);
  CHECK(p0.beta == Congruence::bottom(4));
  CHECK(p0.gamma == Congruence::bottom(4));
  auto p1 = beta_gamma(k, top, ker1, ker2, 1);
  CHECK(p1.beta == ker1);
  CHECK(p1.gamma == ker2);
  auto p2 = beta_gamma(k, top, ker1, ker2, 2);
  CHECK(p2.beta == top);
  CHECK(p2.gamma == top);
}

TEST_CASE("beta_gamma sequences increase and stabilize") {
  std::vector<FiniteAlgebra> pool = {fixtures::chain_lattice3(), fixtures::klein_group(),
                                     fixtures::bare_set(3)};
  std::mt19937 rng(24);
  for (int i = 0; i < 4; ++i) pool.push_back(fixtures::random_algebra(4, {1}, rng));
  for (auto& a : pool) {
    auto con = enumerate_con(a);
    for (auto& al : con)
      for (auto& be : con)
        for (auto& ga : con) {
          BetaGammaSequence seq(a, al, be, ga);
          for (std::size_t n = 0; n < con.size() + 1; ++n) {
            auto cur = seq.at(n);
            auto next = seq.at(n + 1);
            CHECK(cur.index == n);
            CHECK(cur.beta.leq(next.beta));
            CHECK(cur.gamma.leq(next.gamma));
            // direct recursion step
            CHECK(next.beta == join(a, be, meet(al, cur.gamma)));
            CHECK(next.gamma == join(a, ga, meet(al, cur.beta)));
          }
          // after |Con A| steps no further growth
          auto last = seq.at(2 * con.size());
          CHECK(last.beta == seq.at(2 * con.size() + 1).beta);
          CHECK(last.gamma == seq.at(2 * con.size() + 1).gamma);
        }
  }
}

TEST_CASE("is_m_permutable") {
  auto z4 = fixtures::cyclic_group(4);
  auto con = enumerate_con(z4);
  for (auto& x : con)
    for (auto& y : con)
      CHECK(oracle::compose(x.relation(), y.relation()) ==
            oracle::compose(y.relation(), x.relation()));
  auto v = is_m_permutable(z4, 2);
  CHECK(v.holds);
  CHECK(v.con_size == 3);

  auto two = fixtures::bare_set(2);
  for (unsigned m = 2; m < 6; ++m) CHECK(is_m_permutable(two, m).holds);

  auto c3 = fixtures::chain_lattice3();
  auto w = is_m_permutable(c3, 2);
  CHECK_FALSE(w.holds);
  REQUIRE(w.violation.has_value());
  const auto& viol = *w.violation;
  auto tp = alt_power(viol.theta.relation(), viol.psi.relation(), 2);
  auto pt = alt_power(viol.psi.relation(), viol.theta.relation(), 2);
  if (viol.in_theta_first) {
    CHECK(oracle::compose(viol.theta.relation(), viol.psi.relation()).test(viol.a, viol.b));
    CHECK_FALSE(pt.test(viol.a, viol.b));
  } else {
    CHECK(oracle::compose(viol.psi.relation(), viol.theta.relation()).test(viol.a, viol.b));
    CHECK_FALSE(tp.test(viol.a, viol.b));
  }
  CHECK_THROWS_AS(is_m_permutable(c3, 1), InvalidArgument);
}

TEST_CASE("m-permutable implies (m+1)-permutable on small unary algebras") {
  std::mt19937 rng(25);
  for (int i = 0; i < 60; ++i) {
    auto a = fixtures::random_algebra(2 + i % 4, {1}, rng);
    auto con = enumerate_con(a);
    for (unsigned m = 2; m <= 4; ++m)
      if (is_m_permutable(con, m).holds) CHECK(is_m_permutable(con, m + 1).holds);
  }
}
