#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "conglab/algebra.hpp"

namespace conglab {

/// A binary relation on {0, ..., n-1} stored as an n x n bit matrix with
/// one 64-bit-word bitset per row.
class BinRelation {
 public:
  using Word = std::uint64_t;

  explicit BinRelation(std::size_t n = 0)
      : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

  static BinRelation empty(std::size_t n) { return BinRelation(n); }
  static BinRelation diagonal(std::size_t n);
  static BinRelation full(std::size_t n);
  static BinRelation from_pairs(std::size_t n,
                                std::span<const std::pair<Element, Element>> pairs);

  std::size_t size() const { return n_; }

  bool test(Element a, Element b) const {
    return (bits_[a * words_ + b / 64] >> (b % 64)) & 1U;
  }
  void set(Element a, Element b) { bits_[a * words_ + b / 64] |= Word{1} << (b % 64); }
  void reset(Element a, Element b) {
    bits_[a * words_ + b / 64] &= ~(Word{1} << (b % 64));
  }

  std::span<const Word> row(Element a) const {
    return {bits_.data() + a * words_, words_};
  }
  std::span<Word> row(Element a) { return {bits_.data() + a * words_, words_}; }

  /// Elements b with (a, b) in the relation, ascending.
  std::vector<Element> successors(Element a) const;

  std::size_t count() const;
  std::vector<std::pair<Element, Element>> pairs() const;

  bool subset_of(const BinRelation& other) const;
  BinRelation converse() const;

  BinRelation operator|(const BinRelation& other) const;
  BinRelation operator&(const BinRelation& other) const;

  bool operator==(const BinRelation&) const = default;

 private:
  std::size_t n_;
  std::size_t words_;
  std::vector<Word> bits_;
};

/// (a, c) in result iff some b has (a, b) in r and (b, c) in s.
BinRelation compose(const BinRelation& r, const BinRelation& s);

/// alpha o beta o alpha o ... with m factors in total.
BinRelation alt_power(const BinRelation& alpha, const BinRelation& beta, unsigned m);

/// Least transitive relation containing r.
BinRelation transitive_closure(const BinRelation& r);

/// Least equivalence relation containing r.
BinRelation equivalence_closure(const BinRelation& r);

/// Least compatible relation containing x: the subuniverse of A^2 generated
/// by x's pairs, computed without materializing A^2's tables.
BinRelation compatible_closure(const FiniteAlgebra& a, const BinRelation& x);

/// An operation applied to related argument pairs whose results are not
/// related.
struct CompatibilityViolation {
  std::size_t op;
  std::vector<Element> left_args;
  std::vector<Element> right_args;
  Element left_result;
  Element right_result;
};

/// First violation in enumeration order, or nullopt when r is a subuniverse
/// of A^2.
std::optional<CompatibilityViolation> find_incompatibility(const FiniteAlgebra& a,
                                                           const BinRelation& r);

struct RelationFlags {
  bool reflexive = false;
  bool symmetric = false;
  bool transitive = false;
  std::optional<bool> compatible;  // set only when an algebra is supplied
};

RelationFlags relation_predicates(const BinRelation& r,
                                  const FiniteAlgebra* a = nullptr);

bool is_reflexive(const BinRelation& r);
bool is_symmetric(const BinRelation& r);
bool is_transitive(const BinRelation& r);

}  // namespace conglab
