#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace conglab {

/// Elements of a finite universe {0, ..., n-1}.
using Element = std::uint32_t;

/// Global cap on generated universes and subuniverses (default 2^20).
std::size_t size_cap();
void set_size_cap(std::size_t cap);

/// A basic operation given by its full table.
///
/// The argument tuple (a_0, ..., a_{k-1}) lives at index
/// sum a_i * n^(k-1-i), i.e. row-major with the first argument slowest.
struct OperationTable {
  std::string symbol;
  unsigned arity = 0;
  std::vector<Element> table;

  bool operator==(const OperationTable&) const = default;
};

/// A finite algebra on {0, ..., n-1}. Immutable once constructed.
class FiniteAlgebra {
 public:
  /// Validates table lengths, entry ranges and symbol uniqueness.
  FiniteAlgebra(std::string name, std::size_t size,
                std::vector<OperationTable> ops);

  const std::string& name() const { return name_; }
  std::size_t size() const { return size_; }
  const std::vector<OperationTable>& ops() const { return ops_; }
  const OperationTable& op(std::size_t i) const { return ops_[i]; }
  std::vector<unsigned> arities() const;

  std::optional<std::size_t> find_op(const std::string& symbol) const;

  /// Table lookup; arguments are not range checked.
  Element apply(std::size_t op, std::span<const Element> args) const {
    std::size_t idx = 0;
    for (Element a : args) idx = idx * size_ + a;
    return ops_[op].table[idx];
  }

  bool operator==(const FiniteAlgebra&) const = default;

 private:
  std::string name_;
  std::size_t size_;
  std::vector<OperationTable> ops_;
};

/// Index of an argument tuple in a table over a universe of size n.
std::size_t table_index(std::span<const Element> args, std::size_t n);

/// A^k with coordinatewise operations. Elements are encoded base n with the
/// first coordinate most significant: (x_0, ..., x_{k-1}) -> sum x_i n^(k-1-i).
FiniteAlgebra direct_power(const FiniteAlgebra& a, unsigned k);

/// Base-n big-endian encoding used by direct_power.
Element encode_tuple(std::span<const Element> coords, std::size_t n);
std::vector<Element> decode_tuple(Element code, std::size_t n, unsigned k);

/// Least subset containing `generators` and closed under every operation.
/// Output is ascending. Throws CapExceeded past size_cap().
std::vector<Element> subuniverse_generate(const FiniteAlgebra& a,
                                          std::span<const Element> generators);

/// The subalgebra on a closed subset, renumbered 0.. in ascending order.
/// Throws InvalidArgument if the subset is not closed.
FiniteAlgebra induced_subalgebra(const FiniteAlgebra& a,
                                 std::span<const Element> subuniverse);

}  // namespace conglab
