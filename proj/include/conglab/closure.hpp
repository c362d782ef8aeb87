#pragma once

// Worklist saturation shared by subuniverse generation, compatible closure
// and the free-algebra builder.

#include <cstddef>
#include <span>
#include <vector>

namespace conglab {

/// Closes an indexed element pool under operations with the given arities.
///
/// The pool lives with the caller. `pool_size()` reports how many elements
/// it currently holds; `combine(op, args)` applies operation `op` to the
/// pooled elements at indices `args` and appends the result when it is new.
/// `combine` returns false to abort the saturation (used for caps).
///
/// Element p is processed once every element before it exists, against all
/// tuples over [0, p] that mention p, so each tuple of the final pool is
/// visited exactly once. Constants are applied before anything else.
/// Returns false if `combine` aborted.
template <typename PoolSize, typename Combine>
bool saturate(std::span<const unsigned> arities, PoolSize pool_size,
              Combine combine) {
  std::vector<std::size_t> args;
  for (std::size_t op = 0; op < arities.size(); ++op) {
    if (arities[op] == 0 && !combine(op, std::span<const std::size_t>{})) {
      return false;
    }
  }
  for (std::size_t p = 0; p < pool_size(); ++p) {
    for (std::size_t op = 0; op < arities.size(); ++op) {
      const unsigned k = arities[op];
      if (k == 0) continue;
      args.assign(k, 0);
      // Odometer over [0, p]^k; tuples not mentioning p were done earlier.
      while (true) {
        bool mentions_p = false;
        for (std::size_t v : args) mentions_p = mentions_p || v == p;
        if (mentions_p && !combine(op, std::span<const std::size_t>(args))) {
          return false;
        }
        std::size_t pos = k;
        while (pos > 0 && args[pos - 1] == p) {
          args[pos - 1] = 0;
          --pos;
        }
        if (pos == 0) break;
        ++args[pos - 1];
      }
    }
  }
  return true;
}

}  // namespace conglab
