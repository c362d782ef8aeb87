#include "conglab/term.hpp"

#include <algorithm>

#include "conglab/error.hpp"

namespace conglab {

Term Term::var(unsigned index) {
  if (index >= kVariables) {
    throw InvalidArgument("term variable index " + std::to_string(index) +
                          " out of range");
  }
  Term t;
  t.var_ = static_cast<int>(index);
  return t;
}

Term Term::app(std::string symbol, std::vector<Term> children) {
  Term t;
  t.symbol_ = std::move(symbol);
  t.children_ = std::move(children);
  return t;
}

std::size_t Term::depth() const {
  std::size_t d = 0;
  for (const auto& c : children_) d = std::max(d, c.depth() + 1);
  return is_var() ? 0 : std::max<std::size_t>(d, 1);
}

namespace {

Element eval_rec(const FiniteAlgebra& a, const Term& t, const Assignment& asg) {
  if (t.is_var()) return asg[t.var_index()];
  auto op = a.find_op(t.symbol());
  if (!op) throw InvalidArgument("unknown operation symbol '" + t.symbol() + "'");
  if (a.op(*op).arity != t.children().size()) {
    throw InvalidArgument("operation '" + t.symbol() + "' has arity " +
                          std::to_string(a.op(*op).arity) + ", term gives " +
                          std::to_string(t.children().size()));
  }
  std::vector<Element> args;
  args.reserve(t.children().size());
  for (const auto& c : t.children()) args.push_back(eval_rec(a, c, asg));
  return a.apply(*op, args);
}

}  // namespace

Element eval_term(const FiniteAlgebra& a, const Term& t,
                  const Assignment& assignment) {
  for (Element e : assignment) {
    if (e >= a.size()) {
      throw InvalidArgument("assignment element " + std::to_string(e) +
                            " outside universe");
    }
  }
  return eval_rec(a, t, assignment);
}

std::string to_sexpr(const Term& t) {
  static constexpr const char* kNames[] = {"x", "y", "z"};
  if (t.is_var()) return kNames[t.var_index()];
  std::string out = "(" + t.symbol();
  for (const auto& c : t.children()) out += " " + to_sexpr(c);
  return out + ")";
}

}  // namespace conglab
