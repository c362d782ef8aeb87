#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conglab/algebra.hpp"
#include "conglab/error.hpp"
#include "conglab/relation.hpp"

namespace conglab {

/// Raised when a relation handed to as_congruence is not a congruence.
class CongruenceError : public Error {
 public:
  enum class Kind { NotEquivalence, NotCompatible };

  CongruenceError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// A congruence stored both as a canonical partition (block ids numbered by
/// first occurrence) and as its relation.
class Congruence {
 public:
  /// Trusted constructor from an equivalence relation; canonicalizes.
  /// Use as_congruence to validate against an algebra.
  static Congruence from_equivalence(const BinRelation& r);
  /// Trusted constructor from block ids (any numbering).
  static Congruence from_partition(std::vector<std::size_t> blocks);

  static Congruence bottom(std::size_t n);
  static Congruence top(std::size_t n);

  std::size_t size() const { return relation_.size(); }
  const std::vector<std::size_t>& partition() const { return partition_; }
  const BinRelation& relation() const { return relation_; }
  std::size_t block_count() const;

  bool operator==(const Congruence& other) const { return partition_ == other.partition_; }
  bool operator<(const Congruence& other) const;
  bool leq(const Congruence& other) const { return relation_.subset_of(other.relation_); }

 private:
  Congruence(std::vector<std::size_t> partition, BinRelation relation)
      : partition_(std::move(partition)), relation_(std::move(relation)) {}

  std::vector<std::size_t> partition_;
  BinRelation relation_;
};

/// Validates r and returns it as a congruence of a. Throws CongruenceError
/// naming a violating tuple.
Congruence as_congruence(const FiniteAlgebra& a, const BinRelation& r);

/// Cg(x, y): least congruence containing (x, y).
Congruence principal_congruence(const FiniteAlgebra& a, Element x, Element y);

/// Enumeration cap on |A| for enumerate_con (default 8).
std::size_t enumeration_cap();
void set_enumeration_cap(std::size_t cap);

/// All congruences of a, bottom first and top last. Throws CapExceeded when
/// |A| exceeds enumeration_cap().
std::vector<Congruence> enumerate_con(const FiniteAlgebra& a);

/// Intersection.
Congruence meet(const Congruence& x, const Congruence& y);
/// Transitive closure of the union; compatibility with a is asserted.
Congruence join(const FiniteAlgebra& a, const Congruence& x, const Congruence& y);

struct BetaGammaPair {
  std::size_t index;
  Congruence beta;
  Congruence gamma;
};

/// beta_0 = gamma_0 = 0, beta_{n+1} = beta + alpha gamma_n,
/// gamma_{n+1} = gamma + alpha beta_n. Memoizes every index computed.
class BetaGammaSequence {
 public:
  BetaGammaSequence(const FiniteAlgebra& a, Congruence alpha, Congruence beta,
                    Congruence gamma);

  const BetaGammaPair& at(std::size_t n);

 private:
  const FiniteAlgebra* algebra_;
  Congruence alpha_;
  Congruence beta_;
  Congruence gamma_;
  std::vector<BetaGammaPair> terms_;
};

BetaGammaPair beta_gamma(const FiniteAlgebra& a, const Congruence& alpha,
                         const Congruence& beta, const Congruence& gamma,
                         std::size_t n);

/// Result of is_m_permutable. On failure names the congruences (indices into
/// the enumerated Con A) and an element pair in one alternating product but
/// not the other.
struct PermutabilityVerdict {
  bool holds = true;
  std::size_t con_size = 0;
  struct Violation {
    Congruence theta;
    Congruence psi;
    Element a;
    Element b;
    bool in_theta_first;  // (a, b) in theta o_m psi but not psi o_m theta
  };
  std::optional<Violation> violation;
};

PermutabilityVerdict is_m_permutable(const FiniteAlgebra& a, unsigned m);
/// Same test against a precomputed congruence list.
PermutabilityVerdict is_m_permutable(const std::vector<Congruence>& con, unsigned m);

}  // namespace conglab
