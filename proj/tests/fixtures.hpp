#pragma once

// Named algebras shared by the test suites.

#include <random>
#include <string>
#include <vector>

#include "conglab/algebra.hpp"
#include "conglab/relation.hpp"
#include "conglab/term.hpp"

namespace fixtures {

using conglab::Element;
using conglab::FiniteAlgebra;
using conglab::OperationTable;

inline OperationTable binary(const std::string& sym, std::size_t n, auto f) {
  OperationTable t{sym, 2, {}};
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) t.table.push_back(static_cast<Element>(f(a, b)));
  }
  return t;
}

inline OperationTable unary(const std::string& sym, std::size_t n, auto f) {
  OperationTable t{sym, 1, {}};
  for (Element a = 0; a < n; ++a) t.table.push_back(static_cast<Element>(f(a)));
  return t;
}

/// Z_n as a group: +, unary -, constant 0.
inline FiniteAlgebra cyclic_group(std::size_t n) {
  return FiniteAlgebra(
      "Z" + std::to_string(n), n,
      {binary("+", n, [n](Element a, Element b) { return (a + b) % n; }),
       unary("-", n, [n](Element a) { return (n - a) % n; }),
       OperationTable{"0", 0, {0}}});
}

/// Z2 x Z2 with elements encoded 2*first + second.
inline FiniteAlgebra klein_group() {
  return FiniteAlgebra("Z2xZ2", 4,
                       {binary("+", 4, [](Element a, Element b) { return a ^ b; }),
                        unary("-", 4, [](Element a) { return a; }),
                        OperationTable{"0", 0, {0}}});
}

/// The chain 0 < 1 < 2 as a lattice.
inline FiniteAlgebra chain_lattice3() {
  return FiniteAlgebra("C3", 3,
                       {binary("meet", 3, [](Element a, Element b) { return a < b ? a : b; }),
                        binary("join", 3, [](Element a, Element b) { return a < b ? b : a; })});
}

inline FiniteAlgebra meet_semilattice2() {
  return FiniteAlgebra("SL2", 2,
                       {binary("meet", 2, [](Element a, Element b) { return a & b; })});
}

inline FiniteAlgebra bare_set(std::size_t n) { return FiniteAlgebra("set", n, {}); }

/// x - y + z over the group symbols.
inline conglab::Term malcev_term() {
  using conglab::Term;
  return Term::app("+", {Term::var(0), Term::app("+", {Term::app("-", {Term::var(1)}),
                                                       Term::var(2)})});
}

inline conglab::BinRelation random_relation(std::size_t n, double density, std::mt19937& rng) {
  std::bernoulli_distribution coin(density);
  conglab::BinRelation r(n);
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      if (coin(rng)) r.set(a, b);
    }
  }
  return r;
}

inline FiniteAlgebra random_algebra(std::size_t n, const std::vector<unsigned>& arities,
                                    std::mt19937& rng) {
  std::uniform_int_distribution<Element> pick(0, static_cast<Element>(n - 1));
  std::vector<OperationTable> ops;
  for (std::size_t i = 0; i < arities.size(); ++i) {
    std::size_t len = 1;
    for (unsigned k = 0; k < arities[i]; ++k) len *= n;
    OperationTable t{"f" + std::to_string(i), arities[i], {}};
    for (std::size_t j = 0; j < len; ++j) t.table.push_back(pick(rng));
    ops.push_back(std::move(t));
  }
  return FiniteAlgebra("rand" + std::to_string(n), n, std::move(ops));
}

}  // namespace fixtures
