#include "conglab/identities.hpp"

namespace conglab {

namespace {

void require_congruence(const FiniteAlgebra& a, const BinRelation& r, const char* name) {
  try {
    (void)as_congruence(a, r);
  } catch (const CongruenceError& e) {
    throw InvalidInstance(std::string(name) + " is not a congruence: " + e.what());
  }
}

}  // namespace

IdentityInstance IdentityInstance::swapped() const {
  IdentityInstance out = *this;
  std::swap(out.beta, out.gamma);
  return out;
}

void validate_instance(const FiniteAlgebra& a, const IdentityInstance& inst) {
  const std::size_t n = a.size();
  if (inst.m == 0) throw InvalidInstance("identity instance: m must be at least 1");
  auto check_size = [&](const BinRelation& r, const char* name) {
    if (r.size() != n) {
      throw InvalidInstance(std::string("identity instance: ") + name + " has size " +
                            std::to_string(r.size()) + ", algebra has " +
                            std::to_string(n));
    }
  };
  check_size(inst.alpha, "alpha");
  check_size(inst.beta, "beta");
  check_size(inst.gamma, "gamma");
  if (inst.family == Family::X) check_size(inst.delta, "delta");

  require_congruence(a, inst.beta, "beta");
  require_congruence(a, inst.gamma, "gamma");
  if (inst.generalized) {
    if (find_incompatibility(a, inst.alpha)) {
      throw InvalidInstance("alpha is not a compatible relation");
    }
  } else {
    require_congruence(a, inst.alpha, "alpha");
    if (inst.family == Family::X) require_congruence(a, inst.delta, "delta");
  }
}

const BinRelation& bracket_relation(const IdentityInstance& inst, Side side, unsigned j) {
  const bool even = j % 2 == 0;
  if (side == Side::Left) return even ? inst.beta : inst.gamma;
  return even ? inst.gamma : inst.beta;
}

const BinRelation& inner_relation(const IdentityInstance& inst, Side side) {
  if (inst.family == Family::X) return inst.delta;
  // Y: the relation that is not the innermost bracket relation.
  const BinRelation& innermost_bracket = bracket_relation(inst, side, inst.m - 1);
  return &innermost_bracket == &inst.beta ? inst.gamma : inst.beta;
}

std::vector<BinRelation> side_layers(const IdentityInstance& inst, Side side) {
  std::vector<BinRelation> layers;
  layers.reserve(inst.m + 1);
  layers.push_back(inst.alpha & inner_relation(inst, side));
  for (unsigned k = 1; k <= inst.m; ++k) {
    const BinRelation& theta = bracket_relation(inst, side, inst.m - k);
    layers.push_back(inst.alpha & compose(compose(theta, layers.back()), theta));
  }
  return layers;
}

BinRelation eval_xm_side(const FiniteAlgebra& a, const IdentityInstance& inst, Side side) {
  validate_instance(a, inst);
  BinRelation raw = std::move(side_layers(inst, side).back());
  if (inst.starred && side == Side::Right) return transitive_closure(raw);
  return raw;
}

WitnessChain extract_witness(const IdentityInstance& inst, Side side, Element a0,
                             Element b0) {
  const auto layers = side_layers(inst, side);
  const unsigned m = inst.m;
  const std::size_t n = inst.alpha.size();
  if (a0 >= n || b0 >= n || !layers[m].test(a0, b0)) {
    throw InvalidArgument("extract_witness: (" + std::to_string(a0) + ", " +
                          std::to_string(b0) + ") is not in the side");
  }
  WitnessChain chain{{a0}, {b0}};
  for (unsigned j = 0; j < m; ++j) {
    const BinRelation& theta = bracket_relation(inst, side, j);
    const BinRelation& next = layers[m - j - 1];
    const Element a = chain.a.back();
    const Element b = chain.b.back();
    bool found = false;
    // Staying put keeps constant chains constant.
    if (theta.test(a, a) && theta.test(b, b) && next.test(a, b)) {
      chain.a.push_back(a);
      chain.b.push_back(b);
      continue;
    }
    for (Element x : theta.successors(a)) {
      for (Element y : next.successors(x)) {
        // Composition theta o L o theta reads y theta b.
        if (theta.test(y, b)) {
          chain.a.push_back(x);
          chain.b.push_back(y);
          found = true;
          break;
        }
      }
      if (found) break;
    }
    if (!found) throw std::logic_error("extract_witness: layer back-walk failed");
  }
  return chain;
}

WitnessChain extract_witness(const FiniteAlgebra& a, const IdentityInstance& inst,
                             Side side, Element a0, Element b0) {
  validate_instance(a, inst);
  return extract_witness(inst, side, a0, b0);
}

std::optional<std::string> chain_violation(const IdentityInstance& inst, Side side,
                                           const WitnessChain& chain) {
  const unsigned m = inst.m;
  if (chain.a.size() != m + 1 || chain.b.size() != m + 1) {
    return "chain must have exactly m+1 = " + std::to_string(m + 1) + " entries per row";
  }
  const std::size_t n = inst.alpha.size();
  for (unsigned i = 0; i <= m; ++i) {
    if (chain.a[i] >= n || chain.b[i] >= n) return "element out of range";
  }
  auto at = [](const char* row, unsigned i) {
    return std::string(row) + "_" + std::to_string(i);
  };
  for (unsigned i = 0; i <= m; ++i) {
    if (!inst.alpha.test(chain.a[i], chain.b[i])) {
      return at("a", i) + " alpha " + at("b", i) + " fails";
    }
  }
  if (!inner_relation(inst, side).test(chain.a[m], chain.b[m])) {
    return at("a", m) + " inner " + at("b", m) + " fails";
  }
  for (unsigned i = 0; i < m; ++i) {
    const BinRelation& theta = bracket_relation(inst, side, i);
    if (!theta.test(chain.a[i], chain.a[i + 1])) {
      return at("a", i) + " ~ " + at("a", i + 1) + " fails";
    }
    if (!theta.test(chain.b[i], chain.b[i + 1])) {
      return at("b", i) + " ~ " + at("b", i + 1) + " fails";
    }
  }
  return std::nullopt;
}

IdentityVerdict check_identity(const FiniteAlgebra& a, const IdentityInstance& inst) {
  validate_instance(a, inst);
  IdentityVerdict v;
  v.left = std::move(side_layers(inst, Side::Left).back());
  BinRelation raw_right = std::move(side_layers(inst, Side::Right).back());
  v.right = inst.starred ? transitive_closure(raw_right) : raw_right;

  auto first_outside = [](const BinRelation& r, const BinRelation& s)
      -> std::optional<std::pair<Element, Element>> {
    for (auto p : r.pairs()) {
      if (!s.test(p.first, p.second)) return p;
    }
    return std::nullopt;
  };

  if (auto p = first_outside(v.left, v.right)) {
    v.holds = false;
    v.counterexample = IdentityCounterexample{
        Side::Left, p->first, p->second,
        extract_witness(inst, Side::Left, p->first, p->second)};
    return v;
  }
  if (!inst.starred) {
    if (auto p = first_outside(v.right, v.left)) {
      v.holds = false;
      v.counterexample = IdentityCounterexample{
          Side::Right, p->first, p->second,
          extract_witness(inst, Side::Right, p->first, p->second)};
    }
  }
  return v;
}

bool check_starred_closed_form(const FiniteAlgebra& a, const IdentityInstance& inst) {
  validate_instance(a, inst);
  return transitive_closure(side_layers(inst, Side::Left).back()) ==
         transitive_closure(side_layers(inst, Side::Right).back());
}

unsigned h_from_m(unsigned m) {
  if (m < 3) throw InvalidArgument("h_from_m: m must be at least 3");
  return m * ((m + 1) / 2) - 1;
}

AbhVerdict check_abh(const FiniteAlgebra& a, const Congruence& alpha,
                     const Congruence& beta, const Congruence& gamma, std::size_t h) {
  BetaGammaSequence seq(a, alpha, beta, gamma);
  const auto& pair = seq.at(h);
  AbhVerdict v{true, meet(alpha, pair.beta), meet(alpha, pair.gamma)};
  v.holds = v.left == v.right;
  return v;
}

}  // namespace conglab
