#include "conglab/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "conglab/congruence.hpp"
#include "conglab/error.hpp"
#include "conglab/harness.hpp"
#include "conglab/identities.hpp"
#include "conglab/malcev.hpp"
#include "conglab/prop4.hpp"
#include "conglab/text_format.hpp"

namespace conglab {

namespace {

using nlohmann::json;

class UsageError : public Error {
 public:
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_artifact(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write file '" + path + "'");
  f << text;
}

std::size_t env_or(const char* name, std::size_t fallback) {
  const char* v = std::getenv(name);
  if (v == nullptr || *v == '\0') return fallback;
  try {
    return std::stoul(v);
  } catch (const std::exception&) {
    throw UsageError(std::string("environment variable ") + name + " is not a number");
  }
}

BinRelation load_relation(const std::string& path) {
  return parse_relation(read_file(path), path).relation;
}

std::string chain_text(const std::vector<Element>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? " " : "") + std::to_string(xs[i]);
  return s;
}

std::string side_name(Side s) { return s == Side::Left ? "left" : "right"; }

struct Options {
  bool machine = false;
  std::string out_path;

  std::string algebra_path;
  unsigned m = 0;
  unsigned max_m = kDefaultMaxM;
  std::size_t cap = 0;
  std::string alpha, beta, gamma, delta, instance;
  bool starred = false;
  std::string family = "X";
  bool generalized = false;
  std::size_t h = 0;
  unsigned from_m = 0;
  std::string spec;
  std::string chain;
  std::size_t limit = 1000000;
  bool iso = false;
  std::string replay;
};

// In machine mode without --out the artifact rides along in the JSON record so
// stdout stays one record per line.
void emit(const Options& o, json record, const std::string& artifact, std::ostream& out) {
  if (o.out_path.empty() && !artifact.empty()) record["artifact"] = artifact;
  out << record.dump() << "\n";
  if (!o.out_path.empty() && !artifact.empty()) write_artifact(o.out_path, artifact, out);
}

int cmd_con(const Options& o, std::ostream& out) {
  FiniteAlgebra a = parse_algebra(read_file(o.algebra_path), o.algebra_path);
  auto con = enumerate_con(a);
  if (o.machine) {
    for (std::size_t i = 0; i < con.size(); ++i) {
      out << json{{"index", i}, {"partition", con[i].partition()}}.dump() << "\n";
    }
    return kExitOk;
  }
  out << "# " << con.size() << " congruences of " << a.name() << "\n";
  for (std::size_t i = 0; i < con.size(); ++i) {
    out << serialize_congruence(con[i], "c" + std::to_string(i));
  }
  return kExitOk;
}

int cmd_permutable(const Options& o, std::ostream& out) {
  FiniteAlgebra a = parse_algebra(read_file(o.algebra_path), o.algebra_path);
  auto v = is_m_permutable(a, o.m);
  std::string artifact;
  if (v.violation) {
    const auto& w = *v.violation;
    artifact = "# (" + std::to_string(w.a) + ", " + std::to_string(w.b) + ") is in " +
               (w.in_theta_first ? "theta o_m psi only" : "psi o_m theta only") + "\ntheta " +
               serialize_congruence(w.theta, "theta") + "psi " +
               serialize_congruence(w.psi, "psi");
  }
  if (o.machine) {
    json j{{"algebra", a.name()}, {"m", o.m}, {"holds", v.holds}, {"con_size", v.con_size}};
    if (v.violation) {
      j["theta"] = v.violation->theta.partition();
      j["psi"] = v.violation->psi.partition();
      j["pair"] = {v.violation->a, v.violation->b};
    }
    emit(o, j, artifact, out);
  } else {
    out << "algebra " << a.name() << ": " << o.m << "-permutable: "
        << (v.holds ? "HOLDS" : "FAILS") << " (" << v.con_size << " congruences)\n";
    if (!v.holds) write_artifact(o.out_path, artifact, out);
  }
  return v.holds ? kExitOk : kExitFails;
}

int cmd_hm(const Options& o, std::ostream& out) {
  FiniteAlgebra a = parse_algebra(read_file(o.algebra_path), o.algebra_path);
  const std::size_t cap = o.cap ? o.cap : env_or("CONGLAB_FREE_CAP", kDefaultFreeCap);
  HMResult r = hm_search(a, o.max_m, cap);
  if (auto* chain = std::get_if<HMChain>(&r)) {
    if (!hm_verify(a, *chain)) throw std::logic_error("hm_search returned an invalid chain");
    if (o.machine) {
      json terms = json::array();
      for (const auto& t : chain->terms) terms.push_back(to_sexpr(t));
      out << json{{"algebra", a.name()}, {"status", "found"}, {"m", chain->m()},
                  {"terms", terms}}.dump()
          << "\n";
    } else {
      out << "# " << a.name() << ": Hagemann-Mitschke chain with m = " << chain->m() << "\n";
    }
    std::string cert = "# certificate for " + a.name() + ", m = " + std::to_string(chain->m()) +
                       "\n" + serialize_hm_certificate(*chain);
    if (!o.out_path.empty() || !o.machine) write_artifact(o.out_path, cert, out);
    return kExitOk;
  }
  if (auto* nf = std::get_if<NotFound>(&r)) {
    if (o.machine) {
      out << json{{"algebra", a.name()}, {"status", "not_found"}, {"max_m", nf->max_m}}.dump()
          << "\n";
    } else {
      out << a.name() << ": no chain with m <= " << nf->max_m
          << " (the free algebra on three generators was built completely)\n";
    }
    return kExitFails;
  }
  const auto& inc = std::get<Inconclusive>(r);
  if (o.machine) {
    out << json{{"algebra", a.name()}, {"status", "inconclusive"},
                {"partial_count", inc.partial_count}, {"cap", inc.cap}}.dump()
        << "\n";
  } else {
    out << a.name() << ": inconclusive, free algebra exceeded cap " << inc.cap << "\n";
  }
  return kExitInconclusive;
}

IdentityInstance load_identity_instance(const Options& o) {
  IdentityInstance inst;
  inst.m = o.m;
  inst.starred = o.starred;
  inst.generalized = o.generalized;
  if (o.family == "X") {
    inst.family = Family::X;
  } else if (o.family == "Y") {
    inst.family = Family::Y;
  } else {
    throw UsageError("--family must be X or Y");
  }
  std::map<std::string, BinRelation> roles;
  if (!o.instance.empty()) roles = parse_role_relations(read_file(o.instance), o.instance);
  auto pick = [&](const std::string& path, const char* role, bool required) {
    if (!path.empty()) return load_relation(path);
    auto it = roles.find(role);
    if (it != roles.end()) return it->second;
    if (required) throw UsageError(std::string("missing --") + role);
    return BinRelation();
  };
  inst.alpha = pick(o.alpha, "alpha", true);
  inst.beta = pick(o.beta, "beta", true);
  inst.gamma = pick(o.gamma, "gamma", true);
  inst.delta = pick(o.delta, "delta", inst.family == Family::X);
  return inst;
}

std::string instance_roles(const IdentityInstance& inst) {
  std::string s = "alpha " + serialize_relation(inst.alpha, "alpha") + "beta " +
                  serialize_relation(inst.beta, "beta") + "gamma " +
                  serialize_relation(inst.gamma, "gamma");
  if (inst.family == Family::X) s += "delta " + serialize_relation(inst.delta, "delta");
  return s;
}

int cmd_check_xm(const Options& o, std::ostream& out) {
  FiniteAlgebra a = parse_algebra(read_file(o.algebra_path), o.algebra_path);
  IdentityInstance inst = load_identity_instance(o);
  IdentityVerdict v = check_identity(a, inst);
  const std::string fam = o.family + "_" + std::to_string(inst.m) + (inst.starred ? "*" : "");

  // The weaker Y_{m-1} reading with delta = 0 is reported alongside X_m.
  std::optional<bool> y_holds;
  if (inst.family == Family::X && inst.m >= 2) {
    IdentityInstance y = inst;
    y.family = Family::Y;
    y.m = inst.m - 1;
    y_holds = check_identity(a, y).holds;
  }

  std::string report;
  if (v.counterexample) {
    const auto& ce = *v.counterexample;
    report = "# check-xm counterexample: " + a.name() + " " + fam + "\n" + "# pair (" +
             std::to_string(ce.a0) + ", " + std::to_string(ce.b0) + ") is in the " +
             side_name(ce.side) + " side only\n" + "# chain a: " + chain_text(ce.chain.a) +
             "\n" + "# chain b: " + chain_text(ce.chain.b) + "\n" +
             "# replay: check-xm <algebra> --instance <this file> --m " +
             std::to_string(inst.m) + " --family " + o.family +
             (inst.starred ? " --starred" : "") + (inst.generalized ? " --generalized" : "") +
             "\n" + instance_roles(inst);
  }
  if (o.machine) {
    json j{{"algebra", a.name()}, {"identity", fam}, {"holds", v.holds},
           {"left_size", v.left.count()}, {"right_size", v.right.count()}};
    if (y_holds) j["y_m_minus_1_holds"] = *y_holds;
    if (v.counterexample) {
      j["side"] = side_name(v.counterexample->side);
      j["pair"] = {v.counterexample->a0, v.counterexample->b0};
      j["chain_a"] = v.counterexample->chain.a;
      j["chain_b"] = v.counterexample->chain.b;
    }
    emit(o, j, report, out);
  } else {
    out << "algebra " << a.name() << ", " << fam << (inst.generalized ? " (generalized)" : "")
        << ": " << (v.holds ? "HOLDS" : "FAILS") << "\n";
    out << "  left side: " << v.left.count() << " pairs, right side"
        << (inst.starred ? " (closed)" : "") << ": " << v.right.count() << " pairs\n";
    if (y_holds) {
      out << "  Y_" << inst.m - 1 << (inst.starred ? "*" : "") << " (delta = 0): "
          << (*y_holds ? "HOLDS" : "FAILS") << "\n";
    }
    if (!v.holds) write_artifact(o.out_path, report, out);
  }
  return v.holds ? kExitOk : kExitFails;
}

int cmd_check_abh(const Options& o, std::ostream& out) {
  FiniteAlgebra a = parse_algebra(read_file(o.algebra_path), o.algebra_path);
  std::size_t h = o.h;
  if (o.from_m != 0) h = h_from_m(o.from_m);
  auto cong = [&](const std::string& path, const char* role) {
    if (path.empty()) throw UsageError(std::string("missing --") + role);
    return as_congruence(a, load_relation(path));
  };
  Congruence alpha = cong(o.alpha, "alpha");
  Congruence beta = cong(o.beta, "beta");
  Congruence gamma = cong(o.gamma, "gamma");
  AbhVerdict v = check_abh(a, alpha, beta, gamma, h);
  std::string report;
  if (!v.holds) {
    report = "# check-abh counterexample, h = " + std::to_string(h) + "\n" +
             "# alpha beta_h:  " + serialize_congruence(v.left, "alpha_beta_h") +
             "# alpha gamma_h: " + serialize_congruence(v.right, "alpha_gamma_h") + "alpha " +
             serialize_congruence(alpha, "alpha") + "beta " + serialize_congruence(beta, "beta") +
             "gamma " + serialize_congruence(gamma, "gamma");
  }
  if (o.machine) {
    emit(o,
         json{{"algebra", a.name()}, {"h", h}, {"holds", v.holds},
              {"alpha_beta_h", v.left.partition()}, {"alpha_gamma_h", v.right.partition()}},
         report, out);
  } else {
    out << "algebra " << a.name() << ", alpha beta_h = alpha gamma_h with h = " << h << ": "
        << (v.holds ? "HOLDS" : "FAILS") << "\n";
    if (!v.holds) write_artifact(o.out_path, report, out);
  }
  return v.holds ? kExitOk : kExitFails;
}

int cmd_prop4(const Options& o, std::ostream& out) {
  if (o.spec.empty()) throw UsageError("missing --spec");
  NestedSpec spec = parse_nested_spec(read_file(o.spec), o.spec);
  const FiniteAlgebra& a = spec.algebra;
  Prop4Verdict v = prop4_check(a, spec.instance);

  std::size_t replayed = 0;
  std::size_t replay_failures = 0;
  if (v.holds && !o.chain.empty()) {
    HMChain chain = parse_hm_certificate(read_file(o.chain), o.chain);
    if (auto why = hm_violation(a, chain)) throw UsageError("certificate rejected: " + *why);
    chain = pad_chain(chain, spec.instance.m());
    for (auto [x, y] : v.left.pairs()) {
      NestedChain left = extract_nested_witness(spec.instance, x, y);
      NestedChain right = construct_witnesses_prop4(a, chain, left, spec.instance);
      ++replayed;
      if (nested_chain_violation(v.derived, right)) ++replay_failures;
    }
  }
  std::string report;
  if (!v.holds) {
    report = "# nested inclusion counterexample: pair (" +
             std::to_string(v.counterexample->first) + ", " +
             std::to_string(v.counterexample->second) + ")\n# chain a: " +
             chain_text(v.left_chain->a) + "\n# chain b: " + chain_text(v.left_chain->b) +
             "\n" + serialize_nested_spec(a, spec.instance);
  }
  if (o.machine) {
    json j{{"algebra", a.name()}, {"m", spec.instance.m()}, {"holds", v.holds},
           {"left_size", v.left.count()}, {"right_size", v.right.count()}};
    if (!o.chain.empty()) {
      j["replayed"] = replayed;
      j["replay_failures"] = replay_failures;
    }
    if (v.counterexample) {
      j["pair"] = {v.counterexample->first, v.counterexample->second};
      j["chain_a"] = v.left_chain->a;
      j["chain_b"] = v.left_chain->b;
    }
    emit(o, j, report, out);
  } else {
    out << "algebra " << a.name() << ", nested inclusion with m = " << spec.instance.m()
        << ": " << (v.holds ? "HOLDS" : "FAILS") << " (left " << v.left.count()
        << " pairs, right " << v.right.count() << " pairs)\n";
    if (!o.chain.empty()) {
      out << "  witness replay: " << replayed << " pairs, " << replay_failures
          << " failures\n";
    }
    if (!v.holds) write_artifact(o.out_path, report, out);
  }
  if (!v.holds) return kExitFails;
  return replay_failures == 0 ? kExitOk : kExitFails;
}

int cmd_witness_replay(const Options& o, std::ostream& out) {
  FiniteAlgebra a = parse_algebra(read_file(o.algebra_path), o.algebra_path);
  HMChain chain = parse_hm_certificate(read_file(o.chain), o.chain);
  auto violation = hm_violation(a, chain);
  const bool has_instance = !o.alpha.empty() || !o.instance.empty();
  std::size_t pairs = 0;
  std::size_t failures = 0;
  std::string first_failure;
  if (!violation && has_instance) {
    Options io = o;
    if (io.m == 0) io.m = chain.m();
    IdentityInstance inst = load_identity_instance(io);
    HMChain padded = pad_chain(chain, inst.m);
    validate_instance(a, inst);
    const auto left = side_layers(inst, Side::Left).back();
    for (auto [x, y] : left.pairs()) {
      WitnessChain lw = extract_witness(inst, Side::Left, x, y);
      WitnessChain rw = construct_witnesses_xm(a, padded, lw, inst);
      ++pairs;
      if (auto why = chain_violation(inst, Side::Right, rw)) {
        if (failures++ == 0) {
          first_failure = "pair (" + std::to_string(x) + ", " + std::to_string(y) + "): " + *why;
        }
      }
    }
  }
  if (o.machine) {
    json j{{"algebra", a.name()}, {"m", chain.m()}, {"certificate_valid", !violation}};
    if (violation) j["violation"] = *violation;
    if (has_instance) {
      j["pairs"] = pairs;
      j["failures"] = failures;
    }
    out << j.dump() << "\n";
  } else {
    out << "certificate (m = " << chain.m() << ") on " << a.name() << ": "
        << (violation ? "REJECTED (" + *violation + ")" : std::string("VALID")) << "\n";
    if (has_instance && !violation) {
      out << "  replayed " << pairs << " left-side pairs, " << failures << " failures\n";
      if (failures) out << "  first failure: " << first_failure << "\n";
    }
  }
  return violation || failures ? kExitFails : kExitOk;
}

int cmd_probe(const Options& o, std::ostream& out, std::ostream& err) {
  if (!o.replay.empty()) {
    std::istringstream lines(read_file(o.replay));
    std::string line;
    std::size_t total = 0;
    std::size_t bad = 0;
    while (std::getline(lines, line)) {
      if (line.empty()) continue;
      ++total;
      if (!replay_record(line)) ++bad;
    }
    out << "replayed " << total << " records, " << bad << " mismatches\n";
    return bad == 0 ? kExitOk : kExitFails;
  }
  if (o.spec.empty()) throw UsageError("missing --spec");
  if (o.m == 0) throw UsageError("missing --m");
  ProbeOptions po;
  po.h = o.from_m ? h_from_m(o.from_m) : o.h;
  po.m = o.m;
  po.max_m = o.max_m;
  po.free_cap = o.cap ? o.cap : env_or("CONGLAB_FREE_CAP", kDefaultFreeCap);
  AlgebraEnumerator pool(parse_signature(o.spec), o.limit, o.iso);
  SearchReport report = problem8_probe(pool, po);
  const std::string lines = report_to_json_lines(report);
  if (!o.out_path.empty()) {
    write_artifact(o.out_path, lines, out);
  } else if (o.machine) {
    out << lines;
  }
  (o.machine && o.out_path.empty() ? err : out) << report_summary(report);
  return report.inconclusive || report.skipped ? kExitInconclusive : kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"conglab: congruence identities, Mal'cev terms and witness replay on finite "
               "algebras"};
  app.require_subcommand(1);
  // -h would collide with the --h option of check-abh and probe.
  app.set_help_flag("--help", "print this help and exit");
  Options o;
  app.add_flag("--machine", o.machine, "line-delimited JSON output");
  app.add_option("--out", o.out_path, "write the certificate/report/counterexample here");

  auto add_algebra = [&](CLI::App* sub) {
    sub->add_option("algebra", o.algebra_path, "algebra file")->required();
  };
  auto add_relations = [&](CLI::App* sub) {
    sub->add_option("--alpha", o.alpha, "relation file");
    sub->add_option("--beta", o.beta, "relation file");
    sub->add_option("--gamma", o.gamma, "relation file");
    sub->add_option("--delta", o.delta, "relation file");
    sub->add_option("--instance", o.instance, "file of alpha/beta/gamma/delta roles");
  };

  auto* con = app.add_subcommand("con", "enumerate the congruence lattice");
  add_algebra(con);

  auto* perm = app.add_subcommand("permutable", "decide m-permutability of the algebra");
  add_algebra(perm);
  perm->add_option("--m", o.m, "m >= 2")->required();

  auto* hm = app.add_subcommand("hm", "search Hagemann-Mitschke terms");
  add_algebra(hm);
  hm->add_option("--max-m", o.max_m, "longest chain to look for");
  hm->add_option("--cap", o.cap, "free algebra element cap");

  auto* xm = app.add_subcommand("check-xm", "check an X_m / Y_m instance");
  add_algebra(xm);
  xm->add_option("--m", o.m, "number of brackets")->required();
  add_relations(xm);
  xm->add_flag("--starred", o.starred, "inclusion into the transitive closure");
  xm->add_option("--family", o.family, "X or Y");
  xm->add_flag("--generalized", o.generalized, "alpha compatible, delta arbitrary");

  auto* abh = app.add_subcommand("check-abh", "check alpha beta_h = alpha gamma_h");
  add_algebra(abh);
  add_relations(abh);
  auto* h_opt = abh->add_option("--h", o.h, "h");
  auto* from_m_opt = abh->add_option("--from-m", o.from_m, "use h = m[(m+1)/2] - 1");
  h_opt->excludes(from_m_opt);

  auto* p4 = app.add_subcommand("prop4", "check the nested inclusion of a spec file");
  p4->add_option("--spec", o.spec, "nested instance file")->required();
  p4->add_option("--chain", o.chain, "HM certificate to replay the witness construction");

  auto* wr = app.add_subcommand("witness-replay", "verify a certificate and replay witnesses");
  add_algebra(wr);
  wr->add_option("--chain", o.chain, "HM certificate")->required();
  wr->add_option("--m", o.m, "instance m (defaults to the chain's)");
  add_relations(wr);
  wr->add_option("--family", o.family, "X or Y");

  auto* probe = app.add_subcommand("probe", "batch probe of enumerated algebras");
  probe->add_option("--spec", o.spec, "signature, e.g. \"2 */2\"");
  probe->add_option("--h", o.h, "h");
  probe->add_option("--from-m", o.from_m, "use h = m[(m+1)/2] - 1");
  probe->add_option("--m", o.m, "X_m* bracket count");
  probe->add_option("--limit", o.limit, "maximum number of algebras");
  probe->add_flag("--iso", o.iso, "one algebra per isomorphism class");
  probe->add_option("--max-m", o.max_m, "longest HM chain to look for");
  probe->add_option("--cap", o.cap, "free algebra element cap");
  probe->add_option("--replay", o.replay, "re-run a report file and compare");

  // Options of the main app may follow the subcommand.
  for (auto* sub : {con, perm, hm, xm, abh, p4, wr, probe}) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    set_size_cap(env_or("CONGLAB_SIZE_CAP", size_cap()));
    if (con->parsed()) return cmd_con(o, out);
    if (perm->parsed()) return cmd_permutable(o, out);
    if (hm->parsed()) return cmd_hm(o, out);
    if (xm->parsed()) return cmd_check_xm(o, out);
    if (abh->parsed()) return cmd_check_abh(o, out);
    if (p4->parsed()) return cmd_prop4(o, out);
    if (wr->parsed()) return cmd_witness_replay(o, out);
    if (probe->parsed()) return cmd_probe(o, out, err);
  } catch (const CapExceeded& e) {
    err << "inconclusive: " << e.what() << "\n";
    return kExitInconclusive;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const json::exception& e) {
    err << "malformed report record: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace conglab
