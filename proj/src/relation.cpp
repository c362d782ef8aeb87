#include "conglab/relation.hpp"

#include <bit>

#include "conglab/closure.hpp"
#include "conglab/error.hpp"

namespace conglab {

namespace {

void require_same_size(const BinRelation& r, const BinRelation& s, const char* what) {
  if (r.size() != s.size()) {
    throw InvalidArgument(std::string(what) + ": relation sizes differ (" +
                          std::to_string(r.size()) + " vs " +
                          std::to_string(s.size()) + ")");
  }
}

void or_into(std::span<BinRelation::Word> dst, std::span<const BinRelation::Word> src) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] |= src[i];
}

}  // namespace

BinRelation BinRelation::diagonal(std::size_t n) {
  BinRelation r(n);
  for (Element a = 0; a < n; ++a) r.set(a, a);
  return r;
}

BinRelation BinRelation::full(std::size_t n) {
  BinRelation r(n);
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) r.set(a, b);
  }
  return r;
}

BinRelation BinRelation::from_pairs(std::size_t n,
                                    std::span<const std::pair<Element, Element>> pairs) {
  BinRelation r(n);
  for (auto [a, b] : pairs) {
    if (a >= n || b >= n) {
      throw InvalidArgument("relation pair (" + std::to_string(a) + ", " +
                            std::to_string(b) + ") outside universe of size " +
                            std::to_string(n));
    }
    r.set(a, b);
  }
  return r;
}

std::vector<Element> BinRelation::successors(Element a) const {
  std::vector<Element> out;
  auto words = row(a);
  for (std::size_t w = 0; w < words.size(); ++w) {
    Word bits = words[w];
    while (bits != 0) {
      out.push_back(static_cast<Element>(w * 64 + std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

std::size_t BinRelation::count() const {
  std::size_t c = 0;
  for (Word w : bits_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::vector<std::pair<Element, Element>> BinRelation::pairs() const {
  std::vector<std::pair<Element, Element>> out;
  for (Element a = 0; a < n_; ++a) {
    for (Element b : successors(a)) out.emplace_back(a, b);
  }
  return out;
}

bool BinRelation::subset_of(const BinRelation& other) const {
  require_same_size(*this, other, "subset_of");
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] & ~other.bits_[i]) return false;
  }
  return true;
}

BinRelation BinRelation::converse() const {
  BinRelation out(n_);
  for (auto [a, b] : pairs()) out.set(b, a);
  return out;
}

BinRelation BinRelation::operator|(const BinRelation& other) const {
  require_same_size(*this, other, "union");
  BinRelation out = *this;
  for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] |= other.bits_[i];
  return out;
}

BinRelation BinRelation::operator&(const BinRelation& other) const {
  require_same_size(*this, other, "intersection");
  BinRelation out = *this;
  for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] &= other.bits_[i];
  return out;
}

BinRelation compose(const BinRelation& r, const BinRelation& s) {
  require_same_size(r, s, "compose");
  BinRelation out(r.size());
  for (Element a = 0; a < r.size(); ++a) {
    auto dst = out.row(a);
    for (Element b : r.successors(a)) or_into(dst, s.row(b));
  }
  return out;
}

BinRelation alt_power(const BinRelation& alpha, const BinRelation& beta, unsigned m) {
  require_same_size(alpha, beta, "alt_power");
  if (m == 0) throw InvalidArgument("alt_power: m must be positive");
  BinRelation out = alpha;
  for (unsigned i = 1; i < m; ++i) out = compose(out, i % 2 == 1 ? beta : alpha);
  return out;
}

BinRelation transitive_closure(const BinRelation& r) {
  // Warshall over bitset rows.
  BinRelation out = r;
  const std::size_t n = r.size();
  for (Element k = 0; k < n; ++k) {
    for (Element i = 0; i < n; ++i) {
      if (out.test(i, k)) or_into(out.row(i), out.row(k));
    }
  }
  return out;
}

BinRelation equivalence_closure(const BinRelation& r) {
  return transitive_closure(r | r.converse() | BinRelation::diagonal(r.size()));
}

BinRelation compatible_closure(const FiniteAlgebra& a, const BinRelation& x) {
  const std::size_t n = a.size();
  if (x.size() != n) {
    throw InvalidArgument("compatible_closure: relation size " +
                          std::to_string(x.size()) + " does not match algebra size " +
                          std::to_string(n));
  }
  if (n * n > size_cap()) {
    throw CapExceeded("compatible_closure: A^2", n * n, size_cap());
  }
  BinRelation out = x;
  std::vector<std::pair<Element, Element>> pool = x.pairs();
  std::vector<Element> left;
  std::vector<Element> right;
  const auto arities = a.arities();
  saturate(
      arities, [&] { return pool.size(); },
      [&](std::size_t op, std::span<const std::size_t> idx) {
        left.resize(idx.size());
        right.resize(idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i) {
          left[i] = pool[idx[i]].first;
          right[i] = pool[idx[i]].second;
        }
        Element l = a.apply(op, left);
        Element r = a.apply(op, right);
        if (!out.test(l, r)) {
          out.set(l, r);
          pool.emplace_back(l, r);
        }
        return true;
      });
  return out;
}

std::optional<CompatibilityViolation> find_incompatibility(const FiniteAlgebra& a,
                                                           const BinRelation& r) {
  if (r.size() != a.size()) {
    throw InvalidArgument("relation size " + std::to_string(r.size()) +
                          " does not match algebra size " + std::to_string(a.size()));
  }
  const auto pairs = r.pairs();
  for (std::size_t o = 0; o < a.ops().size(); ++o) {
    const unsigned k = a.op(o).arity;
    std::vector<Element> left(k);
    std::vector<Element> right(k);
    if (k == 0) {
      Element c = a.apply(o, left);
      if (!r.test(c, c)) return CompatibilityViolation{o, {}, {}, c, c};
      continue;
    }
    if (pairs.empty()) continue;
    std::vector<std::size_t> idx(k, 0);
    while (true) {
      for (unsigned i = 0; i < k; ++i) {
        left[i] = pairs[idx[i]].first;
        right[i] = pairs[idx[i]].second;
      }
      Element l = a.apply(o, left);
      Element rr = a.apply(o, right);
      if (!r.test(l, rr)) return CompatibilityViolation{o, left, right, l, rr};
      std::size_t pos = k;
      while (pos > 0 && idx[pos - 1] + 1 == pairs.size()) {
        idx[pos - 1] = 0;
        --pos;
      }
      if (pos == 0) break;
      ++idx[pos - 1];
    }
  }
  return std::nullopt;
}

bool is_reflexive(const BinRelation& r) {
  for (Element a = 0; a < r.size(); ++a) {
    if (!r.test(a, a)) return false;
  }
  return true;
}

bool is_symmetric(const BinRelation& r) { return r == r.converse(); }

bool is_transitive(const BinRelation& r) { return compose(r, r).subset_of(r); }

RelationFlags relation_predicates(const BinRelation& r, const FiniteAlgebra* a) {
  RelationFlags f;
  f.reflexive = is_reflexive(r);
  f.symmetric = is_symmetric(r);
  f.transitive = is_transitive(r);
  if (a != nullptr) f.compatible = !find_incompatibility(*a, r).has_value();
  return f;
}

}  // namespace conglab
