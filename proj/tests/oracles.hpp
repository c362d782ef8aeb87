#pragma once

// Brute-force reference implementations. They follow the definitions
// directly and share no code path with the library routines they check.

#include <functional>
#include <set>
#include <vector>

#include "conglab/algebra.hpp"
#include "conglab/identities.hpp"
#include "conglab/prop4.hpp"
#include "conglab/relation.hpp"

namespace oracle {

using conglab::BinRelation;
using conglab::Element;
using conglab::FiniteAlgebra;

inline BinRelation compose(const BinRelation& r, const BinRelation& s) {
  const std::size_t n = r.size();
  BinRelation out(n);
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      for (Element c = 0; c < n; ++c)
        if (r.test(a, b) && s.test(b, c)) out.set(a, c);
  return out;
}

/// Pairs (a, c) joined by a path of length >= 1, by BFS from every a.
inline BinRelation reachability(const BinRelation& r) {
  const std::size_t n = r.size();
  BinRelation out(n);
  for (Element a = 0; a < n; ++a) {
    std::vector<Element> stack;
    std::vector<char> seen(n, 0);
    for (Element b = 0; b < n; ++b)
      if (r.test(a, b) && !seen[b]) {
        seen[b] = 1;
        stack.push_back(b);
      }
    while (!stack.empty()) {
      Element b = stack.back();
      stack.pop_back();
      out.set(a, b);
      for (Element c = 0; c < n; ++c)
        if (r.test(b, c) && !seen[c]) {
          seen[c] = 1;
          stack.push_back(c);
        }
    }
  }
  return out;
}

/// Calls f on every tuple of length k over {0..n-1}.
inline void for_tuples(std::size_t n, unsigned k,
                       const std::function<void(const std::vector<Element>&)>& f) {
  std::vector<Element> t(k, 0);
  while (true) {
    f(t);
    std::size_t i = k;
    while (i > 0 && t[i - 1] + 1 == n) t[--i] = 0;
    if (i == 0) return;
    ++t[i - 1];
  }
}

inline Element apply(const FiniteAlgebra& a, std::size_t op, const std::vector<Element>& args) {
  std::size_t idx = 0;
  for (Element x : args) idx = idx * a.size() + x;
  return a.op(op).table[idx];
}

/// Fixpoint iteration over all tuples of the current set.
inline std::vector<Element> subuniverse(const FiniteAlgebra& a, std::vector<Element> gens) {
  std::set<Element> cur(gens.begin(), gens.end());
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Element> elems(cur.begin(), cur.end());
    for (std::size_t o = 0; o < a.ops().size(); ++o) {
      const unsigned k = a.op(o).arity;
      if (k > 0 && elems.empty()) continue;
      for_tuples(k == 0 ? 1 : elems.size(), k, [&](const std::vector<Element>& idx) {
        std::vector<Element> args;
        for (Element i : idx) args.push_back(elems[i]);
        if (cur.insert(apply(a, o, args)).second) changed = true;
      });
    }
  }
  return {cur.begin(), cur.end()};
}

/// Fixpoint iteration of coordinatewise operations on pairs.
inline BinRelation compatible_closure(const FiniteAlgebra& a, const BinRelation& x) {
  BinRelation cur = x;
  bool changed = true;
  while (changed) {
    changed = false;
    auto pairs = cur.pairs();
    for (std::size_t o = 0; o < a.ops().size(); ++o) {
      const unsigned k = a.op(o).arity;
      if (k > 0 && pairs.empty()) continue;
      for_tuples(k == 0 ? 1 : pairs.size(), k, [&](const std::vector<Element>& idx) {
        std::vector<Element> l, r;
        for (Element i : idx) {
          l.push_back(pairs[i].first);
          r.push_back(pairs[i].second);
        }
        Element lv = apply(a, o, l), rv = apply(a, o, r);
        if (!cur.test(lv, rv)) {
          cur.set(lv, rv);
          changed = true;
        }
      });
    }
  }
  return cur;
}

/// All set partitions of {0..n-1} as restricted growth strings.
inline std::vector<std::vector<std::size_t>> all_partitions(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> rgs(n, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t max) {
    if (i == n) {
      out.push_back(rgs);
      return;
    }
    for (std::size_t b = 0; b <= max + 1; ++b) {
      rgs[i] = b;
      rec(i + 1, std::max(max, b));
    }
  };
  if (n == 0) return {{}};
  rgs[0] = 0;
  rec(1, 0);
  return out;
}

inline bool partition_compatible(const FiniteAlgebra& a, const std::vector<std::size_t>& p) {
  const std::size_t n = a.size();
  for (std::size_t o = 0; o < a.ops().size(); ++o) {
    const unsigned k = a.op(o).arity;
    bool ok = true;
    for_tuples(n, k, [&](const std::vector<Element>& xs) {
      if (!ok) return;
      for_tuples(n, k, [&](const std::vector<Element>& ys) {
        if (!ok) return;
        for (unsigned i = 0; i < k; ++i)
          if (p[xs[i]] != p[ys[i]]) return;
        if (p[apply(a, o, xs)] != p[apply(a, o, ys)]) ok = false;
      });
    });
    if (!ok) return false;
  }
  return true;
}

/// Con A by scanning every partition.
inline std::set<std::vector<std::size_t>> partition_scan(const FiniteAlgebra& a) {
  std::set<std::vector<std::size_t>> out;
  for (auto& p : all_partitions(a.size()))
    if (partition_compatible(a, p)) out.insert(p);
  return out;
}

inline BinRelation partition_relation(const std::vector<std::size_t>& p) {
  BinRelation r(p.size());
  for (Element a = 0; a < p.size(); ++a)
    for (Element b = 0; b < p.size(); ++b)
      if (p[a] == p[b]) r.set(a, b);
  return r;
}

/// Side of X_m / Y_m by enumerating witness chains a_0..a_m, b_0..b_m
/// under the membership conditions, written out from the definition.
inline BinRelation chain_side(const conglab::IdentityInstance& inst, conglab::Side side) {
  const std::size_t n = inst.alpha.size();
  const unsigned m = inst.m;
  const bool left = side == conglab::Side::Left;
  const BinRelation& first = left ? inst.beta : inst.gamma;   // crossed at even i
  const BinRelation& second = left ? inst.gamma : inst.beta;  // crossed at odd i
  const BinRelation* inner = &inst.delta;
  if (inst.family == conglab::Family::Y) {
    // Innermost alpha g* with g* = gamma (odd m) or beta (even m) on the
    // left side; swapped on the right.
    const BinRelation& g_star = m % 2 == 1 ? inst.gamma : inst.beta;
    const BinRelation& b_star = m % 2 == 1 ? inst.beta : inst.gamma;
    inner = left ? &g_star : &b_star;
  }
  BinRelation out(n);
  std::vector<Element> as(m + 1), bs(m + 1);
  std::function<bool(unsigned)> extend = [&](unsigned i) -> bool {
    if (i == m) return inner->test(as[m], bs[m]);
    const BinRelation& theta = i % 2 == 0 ? first : second;
    for (Element x = 0; x < n; ++x) {
      if (!theta.test(as[i], x)) continue;
      for (Element y = 0; y < n; ++y) {
        if (!theta.test(bs[i], y) || !inst.alpha.test(x, y)) continue;
        as[i + 1] = x;
        bs[i + 1] = y;
        if (extend(i + 1)) return true;
      }
    }
    return false;
  };
  for (Element a0 = 0; a0 < n; ++a0)
    for (Element b0 = 0; b0 < n; ++b0) {
      if (!inst.alpha.test(a0, b0)) continue;
      as[0] = a0;
      bs[0] = b0;
      if (extend(0)) out.set(a0, b0);
    }
  return out;
}

/// Left side of the nested inclusion by chain enumeration.
inline BinRelation nested_chain_side(const conglab::NestedInstance& inst) {
  const std::size_t n = inst.r[0].size();
  const unsigned m = inst.m();
  BinRelation out(n);
  std::vector<Element> as(m + 1), bs(m + 1);
  std::function<bool(unsigned)> extend = [&](unsigned i) -> bool {
    if (i == m) return true;
    for (Element x = 0; x < n; ++x) {
      if (!inst.s[i].test(as[i], x)) continue;
      for (Element y = 0; y < n; ++y) {
        if (!inst.t[i].test(y, bs[i]) || !inst.r[i + 1].test(x, y)) continue;
        as[i + 1] = x;
        bs[i + 1] = y;
        if (extend(i + 1)) return true;
      }
    }
    return false;
  };
  for (Element a0 = 0; a0 < n; ++a0)
    for (Element b0 = 0; b0 < n; ++b0) {
      if (!inst.r[0].test(a0, b0)) continue;
      as[0] = a0;
      bs[0] = b0;
      if (extend(0)) out.set(a0, b0);
    }
  return out;
}

}  // namespace oracle
