#include "conglab/congruence.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>

namespace conglab {

namespace {

std::atomic<std::size_t> g_enumeration_cap{8};

std::string pair_text(Element a, Element b) {
  return "(" + std::to_string(a) + ", " + std::to_string(b) + ")";
}

std::string tuple_text(const std::vector<Element>& xs) {
  std::string s = "(";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(xs[i]);
  }
  return s + ")";
}

std::vector<std::size_t> canonical_blocks(const std::vector<std::size_t>& blocks) {
  std::map<std::size_t, std::size_t> renumber;
  std::vector<std::size_t> out(blocks.size());
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    auto [it, inserted] = renumber.emplace(blocks[i], renumber.size());
    out[i] = it->second;
  }
  return out;
}

// Join without the compatibility assertion; used where both inputs are
// known congruences of the same algebra.
Congruence join_unchecked(const Congruence& x, const Congruence& y) {
  return Congruence::from_equivalence(transitive_closure(x.relation() | y.relation()));
}

}  // namespace

Congruence Congruence::from_equivalence(const BinRelation& r) {
  const std::size_t n = r.size();
  std::vector<std::size_t> blocks(n, n);
  std::size_t next = 0;
  for (Element a = 0; a < n; ++a) {
    if (blocks[a] != n) continue;
    for (Element b : r.successors(a)) blocks[b] = next;
    blocks[a] = next;
    ++next;
  }
  return Congruence(std::move(blocks), r);
}

Congruence Congruence::from_partition(std::vector<std::size_t> blocks) {
  auto canon = canonical_blocks(blocks);
  const std::size_t n = canon.size();
  BinRelation r(n);
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      if (canon[a] == canon[b]) r.set(a, b);
    }
  }
  return Congruence(std::move(canon), std::move(r));
}

Congruence Congruence::bottom(std::size_t n) {
  return from_equivalence(BinRelation::diagonal(n));
}

Congruence Congruence::top(std::size_t n) { return from_equivalence(BinRelation::full(n)); }

std::size_t Congruence::block_count() const {
  std::size_t c = 0;
  for (std::size_t b : partition_) c = std::max(c, b + 1);
  return c;
}

bool Congruence::operator<(const Congruence& other) const {
  const auto mine = block_count();
  const auto theirs = other.block_count();
  if (mine != theirs) return mine > theirs;
  return partition_ < other.partition_;
}

Congruence as_congruence(const FiniteAlgebra& a, const BinRelation& r) {
  const std::size_t n = a.size();
  if (r.size() != n) {
    throw InvalidArgument("as_congruence: relation size " + std::to_string(r.size()) +
                          " does not match algebra size " + std::to_string(n));
  }
  using Kind = CongruenceError::Kind;
  for (Element x = 0; x < n; ++x) {
    if (!r.test(x, x)) {
      throw CongruenceError(Kind::NotEquivalence,
                            "not reflexive: missing " + pair_text(x, x));
    }
  }
  for (auto [x, y] : r.pairs()) {
    if (!r.test(y, x)) {
      throw CongruenceError(Kind::NotEquivalence, "not symmetric: " + pair_text(x, y) +
                                                      " without " + pair_text(y, x));
    }
  }
  for (auto [x, y] : r.pairs()) {
    for (Element z : r.successors(y)) {
      if (!r.test(x, z)) {
        throw CongruenceError(Kind::NotEquivalence,
                              "not transitive: " + pair_text(x, y) + ", " +
                                  pair_text(y, z) + " without " + pair_text(x, z));
      }
    }
  }
  if (auto v = find_incompatibility(a, r)) {
    throw CongruenceError(Kind::NotCompatible,
                          "not compatible with '" + a.op(v->op).symbol + "': " +
                              tuple_text(v->left_args) + " ~ " +
                              tuple_text(v->right_args) + " but results " +
                              pair_text(v->left_result, v->right_result) +
                              " unrelated");
  }
  return Congruence::from_equivalence(r);
}

Congruence principal_congruence(const FiniteAlgebra& a, Element x, Element y) {
  const std::size_t n = a.size();
  if (x >= n || y >= n) {
    throw InvalidArgument("principal_congruence: element outside universe");
  }
  BinRelation r(n);
  r.set(x, y);
  r = equivalence_closure(r);
  while (true) {
    BinRelation next = equivalence_closure(compatible_closure(a, r));
    if (next == r) break;
    r = std::move(next);
  }
  return Congruence::from_equivalence(r);
}

std::size_t enumeration_cap() { return g_enumeration_cap.load(); }
void set_enumeration_cap(std::size_t cap) { g_enumeration_cap.store(cap); }

std::vector<Congruence> enumerate_con(const FiniteAlgebra& a) {
  const std::size_t n = a.size();
  if (n > enumeration_cap()) {
    throw CapExceeded("enumerate_con(" + a.name() + ")", n, enumeration_cap());
  }
  // Every congruence is a join of principal ones.
  std::vector<Congruence> principals;
  std::set<std::vector<std::size_t>> seen_principal;
  for (Element x = 0; x < n; ++x) {
    for (Element y = x + 1; y < n; ++y) {
      auto c = principal_congruence(a, x, y);
      if (seen_principal.insert(c.partition()).second) principals.push_back(std::move(c));
    }
  }
  std::set<std::vector<std::size_t>> seen;
  std::vector<Congruence> out;
  auto bottom = Congruence::bottom(n);
  seen.insert(bottom.partition());
  out.push_back(bottom);
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const auto& p : principals) {
      if (p.leq(out[i])) continue;
      auto j = join_unchecked(out[i], p);
      if (seen.insert(j.partition()).second) out.push_back(std::move(j));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Congruence meet(const Congruence& x, const Congruence& y) {
  return Congruence::from_equivalence(x.relation() & y.relation());
}

Congruence join(const FiniteAlgebra& a, const Congruence& x, const Congruence& y) {
  BinRelation u = transitive_closure(x.relation() | y.relation());
  if (auto v = find_incompatibility(a, u)) {
    throw std::logic_error("join: transitive closure of a union of congruences is "
                           "not compatible with '" + a.op(v->op).symbol + "'");
  }
  return Congruence::from_equivalence(u);
}

BetaGammaSequence::BetaGammaSequence(const FiniteAlgebra& a, Congruence alpha,
                                     Congruence beta, Congruence gamma)
    : algebra_(&a),
      alpha_(std::move(alpha)),
      beta_(std::move(beta)),
      gamma_(std::move(gamma)) {
  const std::size_t n = a.size();
  if (alpha_.size() != n || beta_.size() != n || gamma_.size() != n) {
    throw InvalidArgument("beta_gamma: congruence size does not match algebra");
  }
  terms_.push_back({0, Congruence::bottom(n), Congruence::bottom(n)});
}

const BetaGammaPair& BetaGammaSequence::at(std::size_t n) {
  while (terms_.size() <= n) {
    const auto& prev = terms_.back();
    Congruence b = join(*algebra_, beta_, meet(alpha_, prev.gamma));
    Congruence g = join(*algebra_, gamma_, meet(alpha_, prev.beta));
    terms_.push_back({terms_.size(), std::move(b), std::move(g)});
  }
  return terms_[n];
}

BetaGammaPair beta_gamma(const FiniteAlgebra& a, const Congruence& alpha,
                         const Congruence& beta, const Congruence& gamma,
                         std::size_t n) {
  BetaGammaSequence seq(a, alpha, beta, gamma);
  return seq.at(n);
}

PermutabilityVerdict is_m_permutable(const std::vector<Congruence>& con, unsigned m) {
  if (m < 2) throw InvalidArgument("is_m_permutable: m must be at least 2");
  PermutabilityVerdict v;
  v.con_size = con.size();
  for (std::size_t i = 0; i < con.size(); ++i) {
    for (std::size_t j = i + 1; j < con.size(); ++j) {
      const auto& theta = con[i];
      const auto& psi = con[j];
      BinRelation tp = alt_power(theta.relation(), psi.relation(), m);
      BinRelation pt = alt_power(psi.relation(), theta.relation(), m);
      if (tp == pt) continue;
      v.holds = false;
      for (auto [x, y] : (tp | pt).pairs()) {
        if (tp.test(x, y) != pt.test(x, y)) {
          v.violation = PermutabilityVerdict::Violation{theta, psi, x, y, tp.test(x, y)};
          return v;
        }
      }
    }
  }
  return v;
}

PermutabilityVerdict is_m_permutable(const FiniteAlgebra& a, unsigned m) {
  return is_m_permutable(enumerate_con(a), m);
}

}  // namespace conglab
