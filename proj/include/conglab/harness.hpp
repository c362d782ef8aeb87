#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conglab/algebra.hpp"
#include "conglab/malcev.hpp"

namespace conglab {

struct SignatureSpec {
  std::size_t size = 1;
  std::vector<std::pair<std::string, unsigned>> ops;
};

/// Parses "<n> <symbol>/<arity> ...", e.g. "2 */2 -/1".
SignatureSpec parse_signature(const std::string& text);

/// Lexicographic enumeration of all operation tables for a signature: the
/// concatenated tables are read as one base-n numeral, first entry most
/// significant. With `iso_filter`, only algebras whose table string is the
/// minimum over all relabelings of the universe are produced.
class AlgebraEnumerator {
 public:
  AlgebraEnumerator(SignatureSpec spec, std::size_t limit, bool iso_filter = false);

  std::optional<FiniteAlgebra> next();
  /// Tables visited so far, including filtered ones.
  std::size_t visited() const { return visited_; }

 private:
  bool advance();

  SignatureSpec spec_;
  std::size_t limit_;
  bool iso_filter_;
  std::vector<Element> digits_;
  std::size_t emitted_ = 0;
  std::size_t visited_ = 0;
  bool exhausted_ = false;
  bool started_ = false;
};

/// Convenience: drains an enumerator.
std::vector<FiniteAlgebra> enumerate_algebras(const SignatureSpec& spec, std::size_t limit,
                                              bool iso_filter = false);

/// Concatenated tables of a relabeled by perm (perm[i] is the new name of i).
std::vector<Element> relabeled_tables(const FiniteAlgebra& a,
                                      const std::vector<Element>& perm);

/// Lexicographically least relabeled table string.
std::vector<Element> canonical_tables(const FiniteAlgebra& a);

/// FNV-1a over the serialized algebra.
std::uint64_t algebra_hash(const FiniteAlgebra& a);

struct ProbeOptions {
  std::size_t h = 5;
  unsigned m = 3;
  unsigned max_m = kDefaultMaxM;
  std::size_t free_cap = kDefaultFreeCap;
};

/// Partition-level certificate of a failing instance.
struct ProbeFailure {
  std::vector<std::vector<std::size_t>> congruences;  // alpha, beta, gamma[, delta]
  std::optional<std::pair<Element, Element>> pair;
  std::optional<std::vector<Element>> chain_a;
  std::optional<std::vector<Element>> chain_b;
};

struct ProbeRecord {
  std::size_t index = 0;
  std::string algebra_text;
  std::uint64_t hash = 0;
  bool skipped = false;  // enumeration cap exceeded
  std::string skip_reason;
  std::size_t con_size = 0;
  // "found", "not_found" or "inconclusive"
  std::string hm_status;
  unsigned hm_m = 0;
  std::size_t abh_instances = 0;
  std::size_t abh_failures = 0;
  std::size_t xm_instances = 0;
  std::size_t xm_failures = 0;
  std::optional<ProbeFailure> first_abh_failure;
  std::optional<ProbeFailure> first_xm_failure;
  bool flagged = false;  // every abh instance holds, some starred X_m fails
};

struct SearchReport {
  ProbeOptions options;
  std::vector<ProbeRecord> records;
  std::size_t skipped = 0;
  std::size_t inconclusive = 0;
  // [abh all hold][xm* all hold], over non-skipped algebras
  std::size_t contingency[2][2] = {{0, 0}, {0, 0}};
  std::size_t flagged = 0;
};

inline constexpr const char* kEvidenceLabel =
    "finite-algebra-level evidence only; the varietal question is not decided by "
    "this search";

ProbeRecord probe_algebra(const FiniteAlgebra& a, std::size_t index,
                          const ProbeOptions& options);

SearchReport problem8_probe(const std::vector<FiniteAlgebra>& pool, const ProbeOptions& options);
SearchReport problem8_probe(AlgebraEnumerator& pool, const ProbeOptions& options);

/// One JSON object per line per record.
std::string record_to_json_line(const ProbeRecord& r, const ProbeOptions& options);
std::string report_to_json_lines(const SearchReport& report);
std::string report_summary(const SearchReport& report);

/// Re-runs a record from its JSON line; true iff every verdict and count is
/// reproduced exactly and stored certificates still fail.
bool replay_record(const std::string& json_line);

}  // namespace conglab
