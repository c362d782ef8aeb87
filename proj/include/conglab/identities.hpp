#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "conglab/algebra.hpp"
#include "conglab/congruence.hpp"
#include "conglab/relation.hpp"

namespace conglab {

// Bracketed congruence identities.
//
// The left side of X_m with m brackets is
//
//   alpha(beta o alpha(gamma o ... alpha(b* o alpha delta o b*) ... o gamma) o beta)
//
// where the innermost alternating relation b* is beta for odd m and gamma
// for even m. Y_m replaces the innermost alpha delta by alpha g*, where g*
// is the other one of beta, gamma. Right sides swap beta and gamma
// throughout. A pair (a_0, b_0) lies in a side iff there are chains
// a_0..a_m, b_0..b_m with a_i alpha b_i, a_m (inner) b_m and consecutive
// a's and b's related by the relation of the bracket they cross.

enum class Family { X, Y };
enum class Side { Left, Right };

class InvalidInstance : public Error {
 public:
  using Error::Error;
};

struct IdentityInstance {
  unsigned m = 1;
  BinRelation alpha;
  BinRelation beta;
  BinRelation gamma;
  BinRelation delta;  // ignored by the Y family
  bool starred = false;
  Family family = Family::X;
  // Strict: alpha, beta, gamma, delta are congruences. Generalized: alpha
  // is any compatible relation and delta any relation.
  bool generalized = false;

  /// Same instance with beta and gamma exchanged.
  IdentityInstance swapped() const;
};

/// Throws InvalidInstance when sizes disagree, m is 0, or the congruence
/// requirements of the mode are not met.
void validate_instance(const FiniteAlgebra& a, const IdentityInstance& inst);

/// Relation crossed between a_j and a_{j+1} (j = 0..m-1) on a side.
const BinRelation& bracket_relation(const IdentityInstance& inst, Side side, unsigned j);
/// Relation required between a_m and b_m on a side.
const BinRelation& inner_relation(const IdentityInstance& inst, Side side);

/// Layers L_0..L_m of a side evaluated inside-out: L_0 = alpha & inner,
/// L_k = alpha & (theta o L_{k-1} o theta) with theta the bracket relation
/// of depth k from the inside. L_m is the side.
std::vector<BinRelation> side_layers(const IdentityInstance& inst, Side side);

/// The side as displayed: raw for the left side; for a starred instance the
/// right side is transitively closed.
BinRelation eval_xm_side(const FiniteAlgebra& a, const IdentityInstance& inst, Side side);

struct WitnessChain {
  std::vector<Element> a;
  std::vector<Element> b;

  bool operator==(const WitnessChain&) const = default;
};

/// Chain for a pair of the raw side; throws InvalidArgument if the pair is
/// not a member.
WitnessChain extract_witness(const IdentityInstance& inst, Side side, Element a0,
                             Element b0);
WitnessChain extract_witness(const FiniteAlgebra& a, const IdentityInstance& inst,
                             Side side, Element a0, Element b0);

/// Checks a chain against the side's membership conditions literally.
/// Returns a description of the first violated condition, or nullopt.
std::optional<std::string> chain_violation(const IdentityInstance& inst, Side side,
                                           const WitnessChain& chain);
inline bool validate_chain(const IdentityInstance& inst, Side side,
                           const WitnessChain& chain) {
  return !chain_violation(inst, side, chain).has_value();
}

struct IdentityCounterexample {
  Side side;  // the side the pair belongs to
  Element a0;
  Element b0;
  WitnessChain chain;
};

struct IdentityVerdict {
  bool holds = true;
  BinRelation left;
  BinRelation right;  // transitively closed for starred instances
  std::optional<IdentityCounterexample> counterexample;
};

/// Unstarred: left == right. Starred: left is contained in the transitive
/// closure of right.
IdentityVerdict check_identity(const FiniteAlgebra& a, const IdentityInstance& inst);

/// Starred two-sided form: closure(left) == closure(right).
bool check_starred_closed_form(const FiniteAlgebra& a, const IdentityInstance& inst);

/// m * floor((m + 1) / 2) - 1, for m >= 3.
unsigned h_from_m(unsigned m);

struct AbhVerdict {
  bool holds = true;
  Congruence left;   // alpha beta_h
  Congruence right;  // alpha gamma_h
};

AbhVerdict check_abh(const FiniteAlgebra& a, const Congruence& alpha,
                     const Congruence& beta, const Congruence& gamma, std::size_t h);

}  // namespace conglab
