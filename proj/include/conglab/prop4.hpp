#pragma once

#include <optional>
#include <string>
#include <vector>

#include "conglab/algebra.hpp"
#include "conglab/identities.hpp"
#include "conglab/relation.hpp"

namespace conglab {

// Nested inclusion
//
//   R_0(S_1 o R_1(S_2 o ... R_{m-1}(S_m o R_m o T_m) o T_{m-1} ...) o T_1)
//
// for arbitrary R_0..R_m and reflexive S_1..S_m, T_1..T_m. Membership of
// (a_0, b_0) is witnessed by chains with a_i R_i b_i, a_i S_{i+1} a_{i+1}
// and b_{i+1} T_{i+1} b_i.

/// Relations R_0..R_m (r.size() == m + 1), S_1..S_m and T_1..T_m stored
/// zero-based (s[i - 1] is S_i).
struct NestedInstance {
  std::vector<BinRelation> r;
  std::vector<BinRelation> s;
  std::vector<BinRelation> t;

  unsigned m() const { return static_cast<unsigned>(s.size()); }
  const BinRelation& S(unsigned i) const { return s[i - 1]; }
  const BinRelation& T(unsigned i) const { return t[i - 1]; }
};

/// Throws InvalidInstance unless m >= 2, counts match, sizes agree with
/// the algebra and every S_i, T_i is reflexive.
void validate_prop4_instance(const FiniteAlgebra& a, const NestedInstance& inst);

/// Layers indexed by depth from the outside: layers[k] relates (a_k, b_k);
/// layers[m] = R_m, layers[k] = R_k & (S_{k+1} o layers[k+1] o T_{k+1}).
std::vector<BinRelation> nested_layers(const NestedInstance& inst);

/// Right-hand instance: R_0, R'_1..R'_{m-1}, R_m with the primed S', T'.
/// R'_i = cl(R_{i-1} u R_i u R_{i+1}); S'_1 = cl(S_2), T'_1 = cl(T_2),
/// S'_m = cl(S_{m-1}), T'_m = cl(T_{m-1}); in between
/// S'_i = cl(S_{i-1}) o cl(S_{i+1}) and T'_i = cl(T_{i+1}) o cl(T_{i-1}).
NestedInstance prop4_derived(const FiniteAlgebra& a, const NestedInstance& inst);

struct NestedChain {
  std::vector<Element> a;
  std::vector<Element> b;

  bool operator==(const NestedChain&) const = default;
};

NestedChain extract_nested_witness(const NestedInstance& inst, Element a0, Element b0);

std::optional<std::string> nested_chain_violation(const NestedInstance& inst,
                                                  const NestedChain& chain);

struct Prop4Verdict {
  bool holds = true;
  BinRelation left;
  BinRelation right;
  NestedInstance derived;
  std::optional<std::pair<Element, Element>> counterexample;
  std::optional<NestedChain> left_chain;
};

/// Tests left-hand side contained in the right-hand side.
Prop4Verdict prop4_check(const FiniteAlgebra& a, const NestedInstance& inst);

/// The substitution that turns the nested form into X_m: R_0..R_{m-1} =
/// alpha, R_m = alpha & delta, odd-indexed S, T = beta, even-indexed S, T =
/// gamma.
NestedInstance nested_from_xm(const IdentityInstance& inst);

}  // namespace conglab
