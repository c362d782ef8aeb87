#include "conglab/malcev.hpp"

#include <algorithm>
#include <deque>
#include <string_view>
#include <unordered_map>

#include "conglab/closure.hpp"
#include "conglab/error.hpp"

namespace conglab {

namespace {

std::string_view as_bytes(std::span<const Element> v) {
  return {reinterpret_cast<const char*>(v.data()), v.size() * sizeof(Element)};
}

}  // namespace

struct FreeAlgebraBuilder {
  static std::variant<FreeAlgebra3, Inconclusive> build(const FiniteAlgebra& a,
                                                        std::size_t cap) {
    const std::size_t n = a.size();
    const std::size_t width = n * n * n;
    if (width > size_cap()) throw CapExceeded("build_free3: A^(n^3) coordinates", width, size_cap());

    FreeAlgebra3 free(a);
    free.width_ = width;
    // Keyed by the raw bytes of the term function.
    std::unordered_map<std::string, std::size_t> index;

    auto insert = [&](std::vector<Element>&& v, FreeAlgebra3::Origin origin)
        -> std::optional<std::size_t> {
      std::string key(as_bytes(v));
      auto it = index.find(key);
      if (it != index.end()) return it->second;
      const std::size_t id = free.origins_.size();
      free.values_.insert(free.values_.end(), v.begin(), v.end());
      free.origins_.push_back(std::move(origin));
      index.emplace(std::move(key), id);
      return std::nullopt;
    };

    for (unsigned var = 0; var < 3; ++var) {
      std::vector<Element> proj(width);
      for (std::size_t code = 0; code < width; ++code) {
        const std::size_t x = code / (n * n);
        const std::size_t y = (code / n) % n;
        const std::size_t z = code % n;
        proj[code] = static_cast<Element>(var == 0 ? x : var == 1 ? y : z);
      }
      FreeAlgebra3::Origin origin;
      origin.projection = static_cast<int>(var);
      auto existing = insert(std::move(proj), std::move(origin));
      free.generators_[var] = existing ? *existing : free.origins_.size() - 1;
    }

    const auto arities = a.arities();
    std::vector<Element> args;
    std::vector<Element> result(width);
    bool capped = false;
    saturate(
        arities, [&] { return free.origins_.size(); },
        [&](std::size_t op, std::span<const std::size_t> idx) {
          args.resize(idx.size());
          for (std::size_t c = 0; c < width; ++c) {
            for (std::size_t i = 0; i < idx.size(); ++i) {
              args[i] = free.values_[idx[i] * width + c];
            }
            result[c] = a.apply(op, args);
          }
          std::string key(as_bytes(result));
          if (index.count(key)) return true;
          if (free.origins_.size() >= cap) {
            capped = true;
            return false;
          }
          FreeAlgebra3::Origin origin;
          origin.op = op;
          origin.parents.assign(idx.begin(), idx.end());
          const std::size_t id = free.origins_.size();
          free.values_.insert(free.values_.end(), result.begin(), result.end());
          free.origins_.push_back(std::move(origin));
          index.emplace(std::move(key), id);
          return true;
        });
    if (capped) return Inconclusive{free.origins_.size(), cap};
    return free;
  }
};

Term FreeAlgebra3::term(std::size_t i) const {
  const Origin& o = origins_.at(i);
  if (o.projection >= 0) return Term::var(static_cast<unsigned>(o.projection));
  std::vector<Term> kids;
  kids.reserve(o.parents.size());
  for (std::size_t p : o.parents) kids.push_back(term(p));
  return Term::app(base_.op(o.op).symbol, std::move(kids));
}

std::variant<FreeAlgebra3, Inconclusive> build_free3(const FiniteAlgebra& a,
                                                     std::size_t cap) {
  return FreeAlgebraBuilder::build(a, cap);
}

HMResult hm_search(const FreeAlgebra3& free, unsigned max_m) {
  const std::size_t n = free.base().size();
  const std::size_t count = free.size();
  // xxy[f] = f(x,x,y) and xyy[g] = g(x,y,y) as vectors over (x, y).
  auto restrict = [&](std::size_t f, bool xxy) {
    std::vector<Element> out(n * n);
    auto v = free.vector(f);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        const std::size_t code = xxy ? (x * n + x) * n + y : (x * n + y) * n + y;
        out[x * n + y] = v[code];
      }
    }
    return out;
  };
  std::unordered_map<std::string, std::vector<std::size_t>> by_xyy;
  for (std::size_t g = 0; g < count; ++g) {
    auto sig = restrict(g, false);
    by_xyy[std::string(as_bytes(sig))].push_back(g);
  }

  const std::size_t start = free.generator(0);
  const std::size_t target = free.generator(2);
  std::vector<std::size_t> parent(count, count);
  std::vector<unsigned> dist(count, 0);
  std::vector<char> seen(count, 0);
  std::deque<std::size_t> queue{start};
  seen[start] = 1;
  while (!queue.empty()) {
    const std::size_t f = queue.front();
    queue.pop_front();
    if (dist[f] >= max_m) continue;
    auto sig = restrict(f, true);
    auto it = by_xyy.find(std::string(as_bytes(sig)));
    if (it == by_xyy.end()) continue;
    for (std::size_t g : it->second) {
      if (g == target) {
        std::vector<std::size_t> path{target};
        for (std::size_t cur = f; cur != count; cur = parent[cur]) path.push_back(cur);
        std::reverse(path.begin(), path.end());
        HMChain chain;
        for (std::size_t e : path) chain.terms.push_back(free.term(e));
        return chain;
      }
      if (seen[g]) continue;
      seen[g] = 1;
      parent[g] = f;
      dist[g] = dist[f] + 1;
      queue.push_back(g);
    }
  }
  return NotFound{max_m};
}

HMResult hm_search(const FiniteAlgebra& a, unsigned max_m, std::size_t cap) {
  auto built = build_free3(a, cap);
  if (auto* inc = std::get_if<Inconclusive>(&built)) return *inc;
  return hm_search(std::get<FreeAlgebra3>(built), max_m);
}

bool hm_bridge(const FiniteAlgebra& a, const Term& f, const Term& g) {
  const auto n = static_cast<Element>(a.size());
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      if (eval_term(a, f, {x, x, y}) != eval_term(a, g, {x, y, y})) return false;
    }
  }
  return true;
}

std::optional<std::string> hm_violation(const FiniteAlgebra& a, const HMChain& chain) {
  if (chain.terms.size() < 2) return "chain needs at least two terms";
  const auto n = static_cast<Element>(a.size());
  const unsigned m = chain.m();
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      for (Element z = 0; z < n; ++z) {
        if (eval_term(a, chain.terms[0], {x, y, z}) != x) {
          return "t0(x,y,z) = x fails at (" + std::to_string(x) + "," +
                 std::to_string(y) + "," + std::to_string(z) + ")";
        }
        if (eval_term(a, chain.terms[m], {x, y, z}) != z) {
          return "t" + std::to_string(m) + "(x,y,z) = z fails at (" + std::to_string(x) +
                 "," + std::to_string(y) + "," + std::to_string(z) + ")";
        }
      }
    }
  }
  for (unsigned i = 0; i < m; ++i) {
    if (!hm_bridge(a, chain.terms[i], chain.terms[i + 1])) {
      return "t" + std::to_string(i) + "(x,x,y) = t" + std::to_string(i + 1) +
             "(x,y,y) fails";
    }
  }
  return std::nullopt;
}

HMChain pad_chain(const HMChain& chain, unsigned m) {
  if (chain.m() > m) {
    throw InvalidArgument("pad_chain: chain already has m = " + std::to_string(chain.m()));
  }
  HMChain out = chain;
  while (out.m() < m) out.terms.push_back(Term::var(2));
  return out;
}

namespace {

template <typename Chain>
Chain apply_terms(const FiniteAlgebra& a, const HMChain& chain, const Chain& left) {
  const unsigned m = chain.m();
  Chain out;
  out.a.push_back(left.a[0]);
  out.b.push_back(left.b[0]);
  for (unsigned i = 1; i < m; ++i) {
    out.a.push_back(eval_term(a, chain.terms[i], {left.a[i - 1], left.a[i], left.a[i + 1]}));
    out.b.push_back(eval_term(a, chain.terms[i], {left.b[i - 1], left.b[i], left.b[i + 1]}));
  }
  out.a.push_back(left.a[m]);
  out.b.push_back(left.b[m]);
  return out;
}

}  // namespace

WitnessChain construct_witnesses_xm(const FiniteAlgebra& a, const HMChain& chain,
                                    const WitnessChain& left,
                                    const IdentityInstance& inst) {
  validate_instance(a, inst);
  if (chain.m() != inst.m) {
    throw InvalidArgument("construct_witnesses_xm: chain has m = " +
                          std::to_string(chain.m()) + ", instance has m = " +
                          std::to_string(inst.m));
  }
  if (auto why = chain_violation(inst, Side::Left, left)) {
    throw InvalidArgument("construct_witnesses_xm: left chain invalid: " + *why);
  }
  return apply_terms(a, chain, left);
}

NestedChain construct_witnesses_prop4(const FiniteAlgebra& a, const HMChain& chain,
                                      const NestedChain& left,
                                      const NestedInstance& inst) {
  validate_prop4_instance(a, inst);
  if (chain.m() != inst.m()) {
    throw InvalidArgument("construct_witnesses_prop4: chain has m = " +
                          std::to_string(chain.m()) + ", instance has m = " +
                          std::to_string(inst.m()));
  }
  if (auto why = nested_chain_violation(inst, left)) {
    throw InvalidArgument("construct_witnesses_prop4: left chain invalid: " + *why);
  }
  return apply_terms(a, chain, left);
}

}  // namespace conglab
