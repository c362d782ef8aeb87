#include "conglab/algebra.hpp"

#include <algorithm>
#include <atomic>
#include <set>

#include "conglab/closure.hpp"
#include "conglab/error.hpp"

namespace conglab {

namespace {

std::atomic<std::size_t> g_size_cap{std::size_t{1} << 20};

// n^k, or nullopt when it exceeds `limit`.
std::optional<std::size_t> checked_pow(std::size_t n, unsigned k,
                                       std::size_t limit) {
  std::size_t r = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (n != 0 && r > limit / n) return std::nullopt;
    r *= n;
  }
  return r;
}

}  // namespace

std::size_t size_cap() { return g_size_cap.load(); }
void set_size_cap(std::size_t cap) { g_size_cap.store(cap); }

FiniteAlgebra::FiniteAlgebra(std::string name, std::size_t size,
                             std::vector<OperationTable> ops)
    : name_(std::move(name)), size_(size), ops_(std::move(ops)) {
  if (size_ == 0) throw InvalidArgument("algebra '" + name_ + "': empty universe");
  std::set<std::string> seen;
  for (const auto& op : ops_) {
    if (op.symbol.empty()) {
      throw InvalidArgument("algebra '" + name_ + "': empty operation symbol");
    }
    if (!seen.insert(op.symbol).second) {
      throw InvalidArgument("algebra '" + name_ + "': duplicate operation '" +
                            op.symbol + "'");
    }
    auto expected = checked_pow(size_, op.arity, std::size_t{1} << 32);
    if (!expected || op.table.size() != *expected) {
      throw InvalidArgument("algebra '" + name_ + "': operation '" + op.symbol +
                            "' table has " + std::to_string(op.table.size()) +
                            " entries, expected n^" + std::to_string(op.arity));
    }
    for (Element e : op.table) {
      if (e >= size_) {
        throw InvalidArgument("algebra '" + name_ + "': operation '" +
                              op.symbol + "' has entry " + std::to_string(e) +
                              " outside universe");
      }
    }
  }
}

std::vector<unsigned> FiniteAlgebra::arities() const {
  std::vector<unsigned> out;
  out.reserve(ops_.size());
  for (const auto& op : ops_) out.push_back(op.arity);
  return out;
}

std::optional<std::size_t> FiniteAlgebra::find_op(const std::string& symbol) const {
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    if (ops_[i].symbol == symbol) return i;
  }
  return std::nullopt;
}

std::size_t table_index(std::span<const Element> args, std::size_t n) {
  std::size_t idx = 0;
  for (Element a : args) idx = idx * n + a;
  return idx;
}

Element encode_tuple(std::span<const Element> coords, std::size_t n) {
  return static_cast<Element>(table_index(coords, n));
}

std::vector<Element> decode_tuple(Element code, std::size_t n, unsigned k) {
  std::vector<Element> out(k);
  for (unsigned i = k; i > 0; --i) {
    out[i - 1] = static_cast<Element>(code % n);
    code = static_cast<Element>(code / n);
  }
  return out;
}

FiniteAlgebra direct_power(const FiniteAlgebra& a, unsigned k) {
  if (k == 0) throw InvalidArgument("direct_power: exponent must be positive");
  const std::size_t n = a.size();
  auto power_size = checked_pow(n, k, size_cap());
  if (!power_size) {
    throw CapExceeded("direct_power(" + a.name() + ", " + std::to_string(k) + ")",
                      static_cast<std::size_t>(-1), size_cap());
  }
  const std::size_t big_n = *power_size;

  std::vector<OperationTable> ops;
  for (const auto& op : a.ops()) {
    auto entries = checked_pow(big_n, op.arity, size_cap());
    if (!entries) {
      throw CapExceeded("direct_power table for '" + op.symbol + "'",
                        static_cast<std::size_t>(-1), size_cap());
    }
    OperationTable t{op.symbol, op.arity, std::vector<Element>(*entries)};
    std::vector<std::vector<Element>> decoded(op.arity);
    std::vector<Element> coord_args(op.arity);
    std::vector<Element> result(k);
    for (std::size_t idx = 0; idx < *entries; ++idx) {
      std::size_t rest = idx;
      for (unsigned j = op.arity; j > 0; --j) {
        decoded[j - 1] = decode_tuple(static_cast<Element>(rest % big_n), n, k);
        rest /= big_n;
      }
      for (unsigned c = 0; c < k; ++c) {
        for (unsigned j = 0; j < op.arity; ++j) coord_args[j] = decoded[j][c];
        result[c] = op.table[table_index(coord_args, n)];
      }
      t.table[idx] = encode_tuple(result, n);
    }
    ops.push_back(std::move(t));
  }
  std::string name = a.name() + "^" + std::to_string(k);
  return FiniteAlgebra(std::move(name), big_n, std::move(ops));
}

std::vector<Element> subuniverse_generate(const FiniteAlgebra& a,
                                          std::span<const Element> generators) {
  const std::size_t n = a.size();
  std::vector<char> member(n, 0);
  std::vector<Element> pool;
  for (Element g : generators) {
    if (g >= n) {
      throw InvalidArgument("subuniverse_generate: generator " +
                            std::to_string(g) + " outside universe");
    }
    if (!member[g]) {
      member[g] = 1;
      pool.push_back(g);
    }
  }
  if (pool.size() > size_cap()) {
    throw CapExceeded("subuniverse_generate", pool.size(), size_cap());
  }
  const auto arities = a.arities();
  std::vector<Element> args;
  saturate(
      arities, [&] { return pool.size(); },
      [&](std::size_t op, std::span<const std::size_t> idx) {
        args.resize(idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i) args[i] = pool[idx[i]];
        Element r = a.apply(op, args);
        if (!member[r]) {
          if (pool.size() >= size_cap()) {
            throw CapExceeded("subuniverse_generate", pool.size() + 1, size_cap());
          }
          member[r] = 1;
          pool.push_back(r);
        }
        return true;
      });
  std::sort(pool.begin(), pool.end());
  return pool;
}

FiniteAlgebra induced_subalgebra(const FiniteAlgebra& a,
                                 std::span<const Element> subuniverse) {
  std::vector<Element> elems(subuniverse.begin(), subuniverse.end());
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  if (elems.empty()) throw InvalidArgument("induced_subalgebra: empty subset");
  const std::size_t n = a.size();
  std::vector<std::int64_t> position(n, -1);
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (elems[i] >= n) throw InvalidArgument("induced_subalgebra: element out of range");
    position[elems[i]] = static_cast<std::int64_t>(i);
  }
  const std::size_t m = elems.size();
  std::vector<OperationTable> ops;
  for (std::size_t o = 0; o < a.ops().size(); ++o) {
    const auto& op = a.op(o);
    std::size_t entries = *checked_pow(m, op.arity, static_cast<std::size_t>(-1));
    OperationTable t{op.symbol, op.arity, std::vector<Element>(entries)};
    std::vector<Element> args(op.arity);
    for (std::size_t idx = 0; idx < entries; ++idx) {
      std::size_t rest = idx;
      for (unsigned j = op.arity; j > 0; --j) {
        args[j - 1] = elems[rest % m];
        rest /= m;
      }
      Element r = a.apply(o, args);
      if (position[r] < 0) {
        throw InvalidArgument("induced_subalgebra: subset not closed under '" +
                              op.symbol + "'");
      }
      t.table[idx] = static_cast<Element>(position[r]);
    }
    ops.push_back(std::move(t));
  }
  return FiniteAlgebra(a.name() + "|sub", m, std::move(ops));
}

}  // namespace conglab
