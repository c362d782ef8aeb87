#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "conglab/algebra.hpp"
#include "conglab/identities.hpp"
#include "conglab/prop4.hpp"
#include "conglab/term.hpp"

namespace conglab {

/// Default element cap for build_free3.
inline constexpr std::size_t kDefaultFreeCap = 200000;
/// Default longest chain hm_search looks for.
inline constexpr unsigned kDefaultMaxM = 10;

/// The free algebra on x, y, z in the variety generated by a base algebra,
/// realized as the subalgebra of A^(n^3) generated by the three projections.
/// An element is its term function as a vector over (x, y, z) encoded base n
/// with x most significant.
class FreeAlgebra3 {
 public:
  struct Origin {
    // Projection index (0, 1, 2) for generators; otherwise -1 and the
    // operation with the parents' element indices.
    int projection = -1;
    std::size_t op = 0;
    std::vector<std::size_t> parents;
  };

  const FiniteAlgebra& base() const { return base_; }
  std::size_t size() const { return origins_.size(); }
  std::size_t width() const { return width_; }

  /// Term function values; length n^3.
  std::span<const Element> vector(std::size_t i) const {
    return {values_.data() + i * width_, width_};
  }
  const Origin& origin(std::size_t i) const { return origins_[i]; }
  /// Minimal-depth term recorded for element i.
  Term term(std::size_t i) const;
  /// Element index of the projection onto x, y or z.
  std::size_t generator(unsigned var) const { return generators_[var]; }

 private:
  friend struct FreeAlgebraBuilder;
  explicit FreeAlgebra3(FiniteAlgebra base) : base_(std::move(base)) {}

  FiniteAlgebra base_;
  std::size_t width_ = 0;
  std::vector<Element> values_;
  std::vector<Origin> origins_;
  std::array<std::size_t, 3> generators_{};
};

/// The free algebra did not fit under the cap.
struct Inconclusive {
  std::size_t partial_count;
  std::size_t cap;
};

/// Saturates from the projections in generation order. Throws CapExceeded
/// if n^3 exceeds size_cap().
std::variant<FreeAlgebra3, Inconclusive> build_free3(const FiniteAlgebra& a,
                                                     std::size_t cap = kDefaultFreeCap);

/// Hagemann-Mitschke terms t_0..t_m: t_0 = x, t_i(x,x,y) = t_{i+1}(x,y,y),
/// t_m = z.
struct HMChain {
  std::vector<Term> terms;

  unsigned m() const { return terms.empty() ? 0 : static_cast<unsigned>(terms.size() - 1); }
};

struct NotFound {
  unsigned max_m;
};

using HMResult = std::variant<HMChain, NotFound, Inconclusive>;

/// Shortest path from x to z in the graph on free-algebra elements with
/// f -> g iff f(x,x,y) = g(x,y,y) for all x, y. Ties go to the lowest
/// element index.
HMResult hm_search(const FiniteAlgebra& a, unsigned max_m = kDefaultMaxM,
                   std::size_t cap = kDefaultFreeCap);
/// Same search over an already built free algebra.
HMResult hm_search(const FreeAlgebra3& free, unsigned max_m);

/// The condition a chain fails, or nullopt if all three hold over A.
std::optional<std::string> hm_violation(const FiniteAlgebra& a, const HMChain& chain);
inline bool hm_verify(const FiniteAlgebra& a, const HMChain& chain) {
  return !hm_violation(a, chain).has_value();
}

/// f(x,x,y) = g(x,y,y) for all x, y in A.
bool hm_bridge(const FiniteAlgebra& a, const Term& f, const Term& g);

/// Appends copies of z until the chain has m + 1 terms. z(x,x,y) = y =
/// z(x,y,y), so the padded chain still satisfies the conditions.
HMChain pad_chain(const HMChain& chain, unsigned m);

/// c_0 = a_0, c_i = t_i(a_{i-1}, a_i, a_{i+1}) for 0 < i < m, c_m = a_m and
/// likewise d from b. Throws InvalidArgument if the left chain does not
/// validate or the chain length differs from inst.m.
WitnessChain construct_witnesses_xm(const FiniteAlgebra& a, const HMChain& chain,
                                    const WitnessChain& left,
                                    const IdentityInstance& inst);

/// The same construction for the nested inclusion; the result is meant to
/// validate against prop4_derived(a, inst).
NestedChain construct_witnesses_prop4(const FiniteAlgebra& a, const HMChain& chain,
                                      const NestedChain& left,
                                      const NestedInstance& inst);

}  // namespace conglab
