#include "conglab/prop4.hpp"

namespace conglab {

void validate_prop4_instance(const FiniteAlgebra& a, const NestedInstance& inst) {
  const unsigned m = inst.m();
  if (m < 2) throw InvalidInstance("nested instance: m must be at least 2");
  if (inst.r.size() != m + 1 || inst.t.size() != m) {
    throw InvalidInstance("nested instance: need R_0..R_m, S_1..S_m, T_1..T_m");
  }
  const std::size_t n = a.size();
  auto check = [&](const BinRelation& rel, const std::string& name, bool reflexive) {
    if (rel.size() != n) {
      throw InvalidInstance("nested instance: " + name + " has size " +
                            std::to_string(rel.size()) + ", algebra has " +
                            std::to_string(n));
    }
    if (reflexive && !is_reflexive(rel)) {
      throw InvalidInstance("nested instance: " + name + " is not reflexive");
    }
  };
  for (unsigned i = 0; i <= m; ++i) check(inst.r[i], "R" + std::to_string(i), false);
  for (unsigned i = 1; i <= m; ++i) {
    check(inst.S(i), "S" + std::to_string(i), true);
    check(inst.T(i), "T" + std::to_string(i), true);
  }
}

std::vector<BinRelation> nested_layers(const NestedInstance& inst) {
  const unsigned m = inst.m();
  std::vector<BinRelation> layers(m + 1);
  layers[m] = inst.r[m];
  for (unsigned k = m; k-- > 0;) {
    layers[k] = inst.r[k] & compose(compose(inst.S(k + 1), layers[k + 1]), inst.T(k + 1));
  }
  return layers;
}

NestedInstance prop4_derived(const FiniteAlgebra& a, const NestedInstance& inst) {
  validate_prop4_instance(a, inst);
  const unsigned m = inst.m();
  std::vector<BinRelation> s_bar;
  std::vector<BinRelation> t_bar;
  for (unsigned i = 1; i <= m; ++i) {
    s_bar.push_back(compatible_closure(a, inst.S(i)));
    t_bar.push_back(compatible_closure(a, inst.T(i)));
  }
  auto sb = [&](unsigned i) -> const BinRelation& { return s_bar[i - 1]; };
  auto tb = [&](unsigned i) -> const BinRelation& { return t_bar[i - 1]; };

  NestedInstance out;
  out.r.push_back(inst.r[0]);
  for (unsigned i = 1; i < m; ++i) {
    out.r.push_back(compatible_closure(a, inst.r[i - 1] | inst.r[i] | inst.r[i + 1]));
  }
  out.r.push_back(inst.r[m]);
  for (unsigned i = 1; i <= m; ++i) {
    if (i == 1) {
      out.s.push_back(sb(2));
      out.t.push_back(tb(2));
    } else if (i == m) {
      out.s.push_back(sb(m - 1));
      out.t.push_back(tb(m - 1));
    } else {
      out.s.push_back(compose(sb(i - 1), sb(i + 1)));
      out.t.push_back(compose(tb(i + 1), tb(i - 1)));
    }
  }
  return out;
}

NestedChain extract_nested_witness(const NestedInstance& inst, Element a0, Element b0) {
  const auto layers = nested_layers(inst);
  const unsigned m = inst.m();
  const std::size_t n = inst.r[0].size();
  if (a0 >= n || b0 >= n || !layers[0].test(a0, b0)) {
    throw InvalidArgument("extract_nested_witness: (" + std::to_string(a0) + ", " +
                          std::to_string(b0) + ") is not in the left side");
  }
  NestedChain chain{{a0}, {b0}};
  for (unsigned i = 0; i < m; ++i) {
    const Element a = chain.a.back();
    const Element b = chain.b.back();
    const BinRelation& s = inst.S(i + 1);
    const BinRelation& t = inst.T(i + 1);
    bool found = false;
    if (s.test(a, a) && t.test(b, b) && layers[i + 1].test(a, b)) {
      chain.a.push_back(a);
      chain.b.push_back(b);
      continue;
    }
    for (Element x : s.successors(a)) {
      for (Element y : layers[i + 1].successors(x)) {
        if (t.test(y, b)) {
          chain.a.push_back(x);
          chain.b.push_back(y);
          found = true;
          break;
        }
      }
      if (found) break;
    }
    if (!found) throw std::logic_error("extract_nested_witness: back-walk failed");
  }
  return chain;
}

std::optional<std::string> nested_chain_violation(const NestedInstance& inst,
                                                  const NestedChain& chain) {
  const unsigned m = inst.m();
  if (chain.a.size() != m + 1 || chain.b.size() != m + 1) {
    return "chain must have exactly m+1 = " + std::to_string(m + 1) + " entries per row";
  }
  const std::size_t n = inst.r[0].size();
  for (unsigned i = 0; i <= m; ++i) {
    if (chain.a[i] >= n || chain.b[i] >= n) return "element out of range";
  }
  const auto idx = [](unsigned i) { return std::to_string(i); };
  for (unsigned i = 0; i <= m; ++i) {
    if (!inst.r[i].test(chain.a[i], chain.b[i])) {
      return "a_" + idx(i) + " R_" + idx(i) + " b_" + idx(i) + " fails";
    }
  }
  for (unsigned i = 0; i < m; ++i) {
    if (!inst.S(i + 1).test(chain.a[i], chain.a[i + 1])) {
      return "a_" + idx(i) + " S_" + idx(i + 1) + " a_" + idx(i + 1) + " fails";
    }
    if (!inst.T(i + 1).test(chain.b[i + 1], chain.b[i])) {
      return "b_" + idx(i + 1) + " T_" + idx(i + 1) + " b_" + idx(i) + " fails";
    }
  }
  return std::nullopt;
}

Prop4Verdict prop4_check(const FiniteAlgebra& a, const NestedInstance& inst) {
  Prop4Verdict v;
  v.derived = prop4_derived(a, inst);
  v.left = std::move(nested_layers(inst).front());
  v.right = std::move(nested_layers(v.derived).front());
  for (auto [x, y] : v.left.pairs()) {
    if (!v.right.test(x, y)) {
      v.holds = false;
      v.counterexample = std::make_pair(x, y);
      v.left_chain = extract_nested_witness(inst, x, y);
      break;
    }
  }
  return v;
}

NestedInstance nested_from_xm(const IdentityInstance& inst) {
  const unsigned m = inst.m;
  NestedInstance out;
  for (unsigned i = 0; i < m; ++i) out.r.push_back(inst.alpha);
  out.r.push_back(inst.alpha & inst.delta);
  for (unsigned i = 1; i <= m; ++i) {
    const BinRelation& rel = i % 2 == 1 ? inst.beta : inst.gamma;
    out.s.push_back(rel);
    out.t.push_back(rel);
  }
  return out;
}

}  // namespace conglab
