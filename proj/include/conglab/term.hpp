#pragma once

#include <array>
#include <string>
#include <vector>

#include "conglab/algebra.hpp"

namespace conglab {

/// A term over the variables x, y, z (indices 0, 1, 2).
class Term {
 public:
  static constexpr unsigned kVariables = 3;

  static Term var(unsigned index);
  static Term app(std::string symbol, std::vector<Term> children = {});

  bool is_var() const { return var_ >= 0; }
  unsigned var_index() const { return static_cast<unsigned>(var_); }
  const std::string& symbol() const { return symbol_; }
  const std::vector<Term>& children() const { return children_; }

  std::size_t depth() const;

  bool operator==(const Term&) const = default;

 private:
  Term() = default;

  int var_ = -1;
  std::string symbol_;
  std::vector<Term> children_;
};

using Assignment = std::array<Element, Term::kVariables>;

/// Value of `t` in `a` under (x, y, z) = assignment.
/// Throws InvalidArgument on unknown symbols, arity mismatch or
/// out-of-range assignment.
Element eval_term(const FiniteAlgebra& a, const Term& t,
                  const Assignment& assignment);

/// S-expression text: variables print as x, y, z; applications as
/// (sym arg ...), constants as (sym).
std::string to_sexpr(const Term& t);

}  // namespace conglab
