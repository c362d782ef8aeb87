#include "conglab/harness.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "conglab/congruence.hpp"
#include "conglab/error.hpp"
#include "conglab/identities.hpp"
#include "conglab/text_format.hpp"

namespace conglab {

using nlohmann::json;

SignatureSpec parse_signature(const std::string& text) {
  std::istringstream in(text);
  SignatureSpec spec;
  std::string tok;
  if (!(in >> tok)) throw InvalidArgument("signature: empty");
  try {
    spec.size = std::stoul(tok);
  } catch (const std::exception&) {
    throw InvalidArgument("signature: expected universe size, got '" + tok + "'");
  }
  if (spec.size == 0) throw InvalidArgument("signature: universe size must be positive");
  while (in >> tok) {
    auto slash = tok.rfind('/');
    if (slash == std::string::npos || slash == 0 || slash + 1 == tok.size()) {
      throw InvalidArgument("signature: expected symbol/arity, got '" + tok + "'");
    }
    unsigned arity = 0;
    try {
      arity = static_cast<unsigned>(std::stoul(tok.substr(slash + 1)));
    } catch (const std::exception&) {
      throw InvalidArgument("signature: bad arity in '" + tok + "'");
    }
    spec.ops.emplace_back(tok.substr(0, slash), arity);
  }
  return spec;
}

namespace {

std::size_t table_length(std::size_t n, unsigned arity) {
  std::size_t len = 1;
  for (unsigned i = 0; i < arity; ++i) len *= n;
  return len;
}

FiniteAlgebra build_algebra(const SignatureSpec& spec, const std::vector<Element>& digits,
                            std::size_t index) {
  std::vector<OperationTable> ops;
  std::size_t pos = 0;
  for (const auto& [sym, arity] : spec.ops) {
    const std::size_t len = table_length(spec.size, arity);
    ops.push_back({sym, arity, std::vector<Element>(digits.begin() + pos,
                                                     digits.begin() + pos + len)});
    pos += len;
  }
  return FiniteAlgebra("a" + std::to_string(spec.size) + "_" + std::to_string(index),
                       spec.size, std::move(ops));
}

}  // namespace

AlgebraEnumerator::AlgebraEnumerator(SignatureSpec spec, std::size_t limit, bool iso_filter)
    : spec_(std::move(spec)), limit_(limit), iso_filter_(iso_filter) {
  std::size_t total = 0;
  for (const auto& op : spec_.ops) total += table_length(spec_.size, op.second);
  digits_.assign(total, 0);
}

bool AlgebraEnumerator::advance() {
  if (!started_) {
    started_ = true;
    return true;
  }
  std::size_t pos = digits_.size();
  while (pos > 0 && digits_[pos - 1] + 1 == spec_.size) {
    digits_[pos - 1] = 0;
    --pos;
  }
  if (pos == 0) return false;
  ++digits_[pos - 1];
  return true;
}

std::optional<FiniteAlgebra> AlgebraEnumerator::next() {
  while (!exhausted_ && emitted_ < limit_) {
    if (!advance()) {
      exhausted_ = true;
      break;
    }
    const std::size_t index = visited_++;
    FiniteAlgebra a = build_algebra(spec_, digits_, index);
    if (iso_filter_ && canonical_tables(a) != digits_) continue;
    ++emitted_;
    return a;
  }
  return std::nullopt;
}

std::vector<FiniteAlgebra> enumerate_algebras(const SignatureSpec& spec, std::size_t limit,
                                              bool iso_filter) {
  AlgebraEnumerator e(spec, limit, iso_filter);
  std::vector<FiniteAlgebra> out;
  while (auto a = e.next()) out.push_back(std::move(*a));
  return out;
}

std::vector<Element> relabeled_tables(const FiniteAlgebra& a,
                                      const std::vector<Element>& perm) {
  const std::size_t n = a.size();
  std::vector<Element> out;
  for (std::size_t o = 0; o < a.ops().size(); ++o) {
    const auto& op = a.op(o);
    std::vector<Element> t(op.table.size());
    std::vector<Element> args(op.arity);
    std::vector<Element> image(op.arity);
    for (std::size_t idx = 0; idx < op.table.size(); ++idx) {
      std::size_t rest = idx;
      for (unsigned j = op.arity; j > 0; --j) {
        args[j - 1] = static_cast<Element>(rest % n);
        rest /= n;
      }
      for (unsigned j = 0; j < op.arity; ++j) image[j] = perm[args[j]];
      t[table_index(image, n)] = perm[op.table[idx]];
    }
    out.insert(out.end(), t.begin(), t.end());
  }
  return out;
}

std::vector<Element> canonical_tables(const FiniteAlgebra& a) {
  std::vector<Element> perm(a.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Element> best = relabeled_tables(a, perm);
  while (std::next_permutation(perm.begin(), perm.end())) {
    auto t = relabeled_tables(a, perm);
    if (t < best) best = std::move(t);
  }
  return best;
}

std::uint64_t algebra_hash(const FiniteAlgebra& a) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : serialize_algebra(a)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

ProbeRecord probe_algebra(const FiniteAlgebra& a, std::size_t index,
                          const ProbeOptions& options) {
  ProbeRecord r;
  r.index = index;
  r.algebra_text = serialize_algebra(a);
  r.hash = algebra_hash(a);

  std::vector<Congruence> con;
  try {
    con = enumerate_con(a);
  } catch (const CapExceeded& e) {
    r.skipped = true;
    r.skip_reason = e.what();
    return r;
  }
  r.con_size = con.size();

  try {
    HMResult hm = hm_search(a, options.max_m, options.free_cap);
    if (auto* chain = std::get_if<HMChain>(&hm)) {
      r.hm_status = "found";
      r.hm_m = chain->m();
    } else if (std::holds_alternative<NotFound>(hm)) {
      r.hm_status = "not_found";
    } else {
      r.hm_status = "inconclusive";
    }
  } catch (const CapExceeded&) {
    r.hm_status = "inconclusive";
  }

  for (const auto& alpha : con) {
    for (const auto& beta : con) {
      for (const auto& gamma : con) {
        ++r.abh_instances;
        AbhVerdict v = check_abh(a, alpha, beta, gamma, options.h);
        if (!v.holds) {
          ++r.abh_failures;
          if (!r.first_abh_failure) {
            r.first_abh_failure =
                ProbeFailure{{alpha.partition(), beta.partition(), gamma.partition()},
                             std::nullopt, std::nullopt, std::nullopt};
          }
        }
        for (const auto& delta : con) {
          IdentityInstance inst;
          inst.m = options.m;
          inst.alpha = alpha.relation();
          inst.beta = beta.relation();
          inst.gamma = gamma.relation();
          inst.delta = delta.relation();
          inst.starred = true;
          ++r.xm_instances;
          IdentityVerdict xv = check_identity(a, inst);
          if (!xv.holds) {
            ++r.xm_failures;
            if (!r.first_xm_failure) {
              const auto& ce = *xv.counterexample;
              r.first_xm_failure = ProbeFailure{
                  {alpha.partition(), beta.partition(), gamma.partition(),
                   delta.partition()},
                  std::make_pair(ce.a0, ce.b0), ce.chain.a, ce.chain.b};
            }
          }
        }
      }
    }
  }
  r.flagged = r.abh_failures == 0 && r.xm_failures > 0;
  return r;
}

namespace {

void tally(SearchReport& report, ProbeRecord record) {
  if (record.skipped) {
    ++report.skipped;
  } else {
    if (record.hm_status == "inconclusive") ++report.inconclusive;
    ++report.contingency[record.abh_failures == 0][record.xm_failures == 0];
    if (record.flagged) ++report.flagged;
  }
  report.records.push_back(std::move(record));
}

}  // namespace

SearchReport problem8_probe(const std::vector<FiniteAlgebra>& pool,
                            const ProbeOptions& options) {
  SearchReport report;
  report.options = options;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    tally(report, probe_algebra(pool[i], i, options));
  }
  return report;
}

SearchReport problem8_probe(AlgebraEnumerator& pool, const ProbeOptions& options) {
  SearchReport report;
  report.options = options;
  std::size_t i = 0;
  while (auto a = pool.next()) tally(report, probe_algebra(*a, i++, options));
  return report;
}

namespace {

json failure_to_json(const ProbeFailure& f) {
  json j;
  j["congruences"] = f.congruences;
  if (f.pair) j["pair"] = {f.pair->first, f.pair->second};
  if (f.chain_a) j["chain_a"] = *f.chain_a;
  if (f.chain_b) j["chain_b"] = *f.chain_b;
  return j;
}

json record_json(const ProbeRecord& r, const ProbeOptions& o) {
  json j;
  j["index"] = r.index;
  j["hash"] = r.hash;
  j["algebra"] = r.algebra_text;
  j["h"] = o.h;
  j["m"] = o.m;
  j["max_m"] = o.max_m;
  j["free_cap"] = o.free_cap;
  j["skipped"] = r.skipped;
  if (r.skipped) {
    j["skip_reason"] = r.skip_reason;
    return j;
  }
  j["con_size"] = r.con_size;
  j["hm_status"] = r.hm_status;
  if (r.hm_status == "found") j["hm_m"] = r.hm_m;
  j["abh_instances"] = r.abh_instances;
  j["abh_failures"] = r.abh_failures;
  j["xm_star_instances"] = r.xm_instances;
  j["xm_star_failures"] = r.xm_failures;
  if (r.first_abh_failure) j["abh_certificate"] = failure_to_json(*r.first_abh_failure);
  if (r.first_xm_failure) j["xm_star_certificate"] = failure_to_json(*r.first_xm_failure);
  j["flagged"] = r.flagged;
  j["evidence"] = kEvidenceLabel;
  return j;
}

}  // namespace

std::string record_to_json_line(const ProbeRecord& r, const ProbeOptions& options) {
  return record_json(r, options).dump();
}

std::string report_to_json_lines(const SearchReport& report) {
  std::string out;
  for (const auto& r : report.records) out += record_to_json_line(r, report.options) + "\n";
  return out;
}

std::string report_summary(const SearchReport& report) {
  std::ostringstream out;
  const auto& o = report.options;
  out << "probe: h = " << o.h << ", m = " << o.m << ", algebras = " << report.records.size()
      << ", skipped = " << report.skipped << ", hm inconclusive = " << report.inconclusive
      << "\n";
  out << "                   X_m* all hold   X_m* some fail\n";
  out << "  abh all hold     " << report.contingency[1][1] << "\t\t " << report.contingency[1][0]
      << "\n";
  out << "  abh some fail    " << report.contingency[0][1] << "\t\t " << report.contingency[0][0]
      << "\n";
  out << "flagged (abh holds everywhere, some X_m* instance fails): " << report.flagged << "\n";
  for (const auto& r : report.records) {
    if (r.flagged) out << "  flagged record " << r.index << " hash " << r.hash << "\n";
  }
  out << "note: " << kEvidenceLabel << "\n";
  return out.str();
}

bool replay_record(const std::string& json_line) {
  json stored = json::parse(json_line);
  FiniteAlgebra a = parse_algebra(stored.at("algebra").get<std::string>(), "<record>");
  ProbeOptions o;
  o.h = stored.at("h").get<std::size_t>();
  o.m = stored.at("m").get<unsigned>();
  o.max_m = stored.at("max_m").get<unsigned>();
  o.free_cap = stored.at("free_cap").get<std::size_t>();
  ProbeRecord again = probe_algebra(a, stored.at("index").get<std::size_t>(), o);
  if (record_json(again, o) != stored) return false;

  // Certificates must still fail on their own.
  auto congruences = [&](const json& cert) {
    std::vector<Congruence> out;
    for (const auto& p : cert.at("congruences")) {
      out.push_back(as_congruence(
          a, Congruence::from_partition(p.get<std::vector<std::size_t>>()).relation()));
    }
    return out;
  };
  if (stored.contains("abh_certificate")) {
    auto c = congruences(stored["abh_certificate"]);
    if (check_abh(a, c[0], c[1], c[2], o.h).holds) return false;
  }
  if (stored.contains("xm_star_certificate")) {
    const auto& cert = stored["xm_star_certificate"];
    auto c = congruences(cert);
    IdentityInstance inst;
    inst.m = o.m;
    inst.alpha = c[0].relation();
    inst.beta = c[1].relation();
    inst.gamma = c[2].relation();
    inst.delta = c[3].relation();
    inst.starred = true;
    IdentityVerdict v = check_identity(a, inst);
    if (v.holds) return false;
    const auto pair = cert.at("pair").get<std::vector<Element>>();
    if (v.right.test(pair[0], pair[1]) || !v.left.test(pair[0], pair[1])) return false;
    WitnessChain chain{cert.at("chain_a").get<std::vector<Element>>(),
                       cert.at("chain_b").get<std::vector<Element>>()};
    if (!validate_chain(inst, Side::Left, chain)) return false;
  }
  return true;
}

}  // namespace conglab
