#pragma once

// Text formats. '#' starts a comment running to end of line; tokens are
// whitespace separated.
//
//   algebra <name>
//   size <n>
//   op <symbol> <arity>
//   <n^arity entries, row-major>
//
//   rel <name> <n>       followed by pairs "a b"
//   diag <n>             the diagonal
//   full <n>             the full relation
//   cong <name> <n> : <block id per element>
//
//   HM certificate: one (t<i> <term>) per line, terms as S-expressions over
//   x, y, z, e.g. (t1 (+ x (+ (- y) z))).
//
// Role files name relations with a leading role token:
//
//   alpha cong a 4 : 0 1 0 1
//   beta diag 4
//
// A nested-inclusion spec is "nested <m>", an inline algebra block, then
// roles R0..Rm, S1..Sm, T1..Tm.

#include <map>
#include <string>
#include <string_view>

#include "conglab/algebra.hpp"
#include "conglab/congruence.hpp"
#include "conglab/malcev.hpp"
#include "conglab/prop4.hpp"
#include "conglab/relation.hpp"
#include "conglab/term.hpp"

namespace conglab {

FiniteAlgebra parse_algebra(std::string_view text, const std::string& file = "<input>");
std::string serialize_algebra(const FiniteAlgebra& a);

struct NamedRelation {
  std::string name;
  BinRelation relation;
};

/// Accepts any of rel / diag / full / cong blocks.
NamedRelation parse_relation(std::string_view text, const std::string& file = "<input>");
std::string serialize_relation(const BinRelation& r, const std::string& name);
std::string serialize_congruence(const Congruence& c, const std::string& name);

/// Role -> relation for files of "<role> <relation block>" entries.
std::map<std::string, BinRelation> parse_role_relations(std::string_view text,
                                                        const std::string& file = "<input>");

Term parse_term(std::string_view text, const std::string& file = "<input>");

HMChain parse_hm_certificate(std::string_view text, const std::string& file = "<input>");
std::string serialize_hm_certificate(const HMChain& chain);

struct NestedSpec {
  FiniteAlgebra algebra;
  NestedInstance instance;
};

NestedSpec parse_nested_spec(std::string_view text, const std::string& file = "<input>");
std::string serialize_nested_spec(const FiniteAlgebra& a, const NestedInstance& inst);

}  // namespace conglab
