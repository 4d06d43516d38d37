// holocirc: command-line front end.
//
//   holocirc claims
//   holocirc verify <claim|all> [--n A..B] [--modulus m[,m...]] [--samples k] [--seed s]
//   holocirc classify --n N
//   holocirc scan --modulus n [--shard i/k] [--connected-only] [--out path]
//   holocirc inspect --modulus n --set 1,3,13,15
//   holocirc graph --modulus n --set 1,7
//   holocirc element --n N --expr "a^3*x*y^2" [--power r]
//
// Exit codes: 0 pass, 1 verification failure, 2 usage, 3 resource bound.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "holocirc/circulant.hpp"
#include "holocirc/error.hpp"
#include "holocirc/notation.hpp"
#include "holocirc/parallel.hpp"
#include "holocirc/regular_classify.hpp"
#include "holocirc/verify.hpp"

using namespace holocirc;
using json = nlohmann::json;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBound = 3;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json big_json(const BigInt& v) {
  if (v <= std::numeric_limits<std::uint64_t>::max()) return v.convert_to<std::uint64_t>();
  return v.str();
}

json witness_json(const ThetaWitness& w) {
  return {{"kind", w.kind},
          {"prime", w.prime},
          {"multiplier", w.multiplier},
          {"edge_preserving", w.check.edge_preserving},
          {"fixes_zero", w.check.fixes_zero},
          {"outside_aut_gs", w.check.outside_aut_gs},
          {"ok", w.check.ok()}};
}

json scan_json(const ScanRecord& r) {
  json ws = json::array();
  for (const auto& w : r.witnesses) ws.push_back(witness_json(w));
  return {{"n", r.n},
          {"mask", r.mask},
          {"S", r.S},
          {"aut_order", big_json(r.aut_order)},
          {"normal", r.normal},
          {"w_subgroups", r.w_subgroups},
          {"nnn", r.nnn},
          {"nnn_nonconjugate", r.nnn_nonconjugate},
          {"degenerate", r.degenerate},
          {"connected", r.connected},
          {"witnesses", ws}};
}

std::vector<std::string> element_list(const std::vector<HolElem2>& gs) {
  std::vector<std::string> out;
  for (const auto& g : gs) out.push_back(format_element(g));
  return out;
}

// Output sink: stdout or a file.
struct Sink {
  std::ofstream file;
  std::ostream* os = &std::cout;
  explicit Sink(const std::string& path) {
    if (path.empty() || path == "-") return;
    file.open(path, std::ios::binary);
    if (!file) throw IoError("cannot open '" + path + "' for writing");
    os = &file;
  }
  std::ostream& operator*() { return *os; }
  void close() {
    os->flush();
    if (!*os) throw IoError("write failed");
  }
};

Bounds g_bounds;

void check_graph_modulus(u64 n, bool force) {
  if (n < 2 || n > kMaxCirculantOrder) throw RangeError("modulus must lie in 2..64");
  const u64 soft = std::min<u64>(g_bounds.graph_max, graph_bound());
  if (n > soft) {
    if (!force)
      throw ResourceBoundError("modulus " + std::to_string(n) + " exceeds the graph bound " +
                               std::to_string(soft) + " (use --force)");
    set_graph_bound(n);
  }
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::string claim;
  std::string n;
  std::vector<u64> moduli;
  std::uint64_t samples = 0;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  bool force = false;
  std::string format = "json";
  std::string out;
};

int run_verify(const VerifyArgs& a) {
  VerifyOptions o;
  if (!a.n.empty()) o.n = parse_range(a.n);
  o.moduli = a.moduli;
  o.samples = a.samples;
  o.seed = a.seed;
  o.jobs = a.jobs;
  o.force = a.force;
  o.bounds = g_bounds;

  std::vector<std::string> ids;
  if (a.claim == "all") {
    if (o.n || !o.moduli.empty()) throw ContractError("'verify all' runs default ranges only");
    for (const auto& c : claim_registry()) ids.push_back(c.id);
  } else {
    find_claim(a.claim);
    ids.push_back(a.claim);
  }

  Sink sink(a.out);
  bool failed = false;
  json all = json::array();
  for (const auto& id : ids) {
    auto rep = verify_claim(id, o);
    failed |= rep.status == Status::Fail;
    auto j = rep.to_json();
    if (a.format == "ndjson") {
      *sink << j.dump() << '\n';
    } else if (a.format == "text") {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.3f", rep.runtime);
      *sink << (rep.status == Status::Pass ? "PASS" : rep.status == Status::Fail ? "FAIL" : "SKIP")
            << "  " << id << "  (" << buf << " s)";
      if (rep.status == Status::Fail) *sink << "  replay: " << rep.replay;
      *sink << '\n';
    } else if (ids.size() == 1) {
      *sink << j.dump(2) << '\n';
    } else {
      all.push_back(std::move(j));
    }
    sink.os->flush();
  }
  if (a.format == "json" && ids.size() > 1) *sink << all.dump(2) << '\n';
  sink.close();
  return failed ? kExitFail : 0;
}

// ---------------------------------------------------------------------------

int run_classify(int n, unsigned jobs, const std::string& format, const std::string& out) {
  if (n < 3 || n > 8) throw RangeError("classify needs 3 <= n <= 8");
  if (n > g_bounds.hol_max_n)
    throw ResourceBoundError("n exceeds the configured holomorph bound");

  json reps = json::array();
  std::vector<Representative> built;
  for (const auto& rt : all_regular_types(n)) {
    auto r = representative(rt, n);
    json j{{"type", rt.tag()},
           {"generators", element_list(r.generators)},
           {"regular", r.regular},
           {"iso", to_string(r.iso)},
           {"expected_iso", to_string(r.expect.iso)},
           {"intersection", "a^" + std::to_string(r.intersection_d)},
           {"expected_intersection", "a^" + std::to_string(r.expect.intersection_d)}};
    for (const auto& prev : built)
      if (prev.group == r.group) {
        j["coincides_with"] = prev.rtype.tag();
        break;
      }
    if (!r.regular) j["note"] = "not regular at this n";
    built.push_back(std::move(r));
    reps.push_back(std::move(j));
  }
  json doc{{"n", n}, {"representatives", reps}};

  if (n <= 5) {
    auto res = enumerate_regular_subgroups(n, jobs);
    json recs = json::array();
    for (const auto& rec : res.records) {
      json j{{"type", rec.rtype.tag()},
             {"generators", element_list(rec.generators)},
             {"iso", to_string(rec.iso)},
             {"intersection", "a^" + std::to_string(rec.intersection_d)}};
      j["conjugator"] = rec.conjugator ? json(format_element(*rec.conjugator)) : json(nullptr);
      recs.push_back(std::move(j));
    }
    doc["enumeration"] = {{"regular_subgroups", res.records.size()},
                          {"classes", res.classes_found()},
                          {"class_sizes", res.class_sizes},
                          {"unmatched", res.unmatched},
                          {"records", recs},
                          {"notes", res.notes}};
  }

  Sink sink(out);
  if (format == "text") {
    for (const auto& r : doc["representatives"]) {
      *sink << r["type"].get<std::string>() << "  <";
      bool first = true;
      for (const auto& g : r["generators"]) {
        *sink << (first ? "" : ", ") << g.get<std::string>();
        first = false;
      }
      *sink << ">  " << r["iso"].get<std::string>() << "  cap G_R = <"
            << r["intersection"].get<std::string>() << ">";
      if (r.contains("coincides_with")) *sink << "  (= " << r["coincides_with"].get<std::string>() << ")";
      if (r.contains("note")) *sink << "  [" << r["note"].get<std::string>() << "]";
      *sink << '\n';
    }
    if (doc.contains("enumeration"))
      *sink << "regular subgroups: " << doc["enumeration"]["regular_subgroups"]
            << ", classes: " << doc["enumeration"]["classes"] << '\n';
  } else {
    *sink << doc.dump(2) << '\n';
  }
  sink.close();
  return 0;
}

// ---------------------------------------------------------------------------

struct ScanArgs {
  u64 modulus = 0;
  std::string shard;
  bool connected_only = false;
  std::string out;
  unsigned jobs = 1;
  std::string format = "ndjson";
  bool force = false;
};

int run_scan(const ScanArgs& a) {
  check_graph_modulus(a.modulus, a.force);
  Shard sh = a.shard.empty() ? Shard{} : parse_shard(a.shard);
  auto [lo, hi] = sh.slice(census_size(a.modulus));
  Sink sink(a.out);

  const auto start = std::chrono::steady_clock::now();
  std::vector<std::optional<ScanRecord>> recs(hi - lo);
  parallel_for(recs.size(), a.jobs, [&](std::size_t i) {
    const std::uint64_t mask = lo + i;
    if (a.connected_only && !Circulant::from_pair_mask(a.modulus, mask).connected()) return;
    recs[i] = scan_one(a.modulus, mask);
  });

  std::size_t emitted = 0, normal = 0, nnn = 0;
  json arr = json::array();
  for (const auto& r : recs) {
    if (!r) continue;
    ++emitted;
    normal += r->normal;
    nnn += r->nnn;
    if (a.format == "ndjson") {
      *sink << scan_json(*r).dump() << '\n';
    } else if (a.format == "json") {
      arr.push_back(scan_json(*r));
    } else {
      *sink << "mask=" << r->mask << " S={" << format_residue_set(r->S) << "} |Aut|="
            << r->aut_order << (r->normal ? " normal" : " non-normal") << (r->nnn ? " NNN" : "")
            << '\n';
    }
  }
  if (a.format == "json") *sink << arr.dump(2) << '\n';
  sink.close();
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cerr << "scan n=" << a.modulus << " masks [" << lo << ", " << hi << "): " << emitted
            << " records, " << normal << " normal, " << nnn << " NNN, " << secs << " s\n";
  return 0;
}

Circulant parse_circulant(u64 n, const std::string& set, bool force) {
  check_graph_modulus(n, force);
  return Circulant::build(n, parse_residue_set(set, n));
}

int run_inspect(u64 n, const std::string& set, bool force) {
  auto g = parse_circulant(n, set, force);
  auto aut = automorphism_group(g);
  auto v = nnn_verdict(g, aut);
  json ws = json::array();
  for (const auto& w : theta_witnesses(g)) ws.push_back(witness_json(w));
  json copies = json::array();
  for (const auto& c : v.regular_cyclic_subgroups)
    copies.push_back({{"generator", format_affine(c.generator)},
                      {"is_gr", c.is_gr},
                      {"normal", c.normal},
                      {"conjugate_to_gr", c.conjugate_to_gr}});
  json doc{{"n", n},
           {"S", g.connection_set()},
           {"valency", g.valency()},
           {"connected", g.connected()},
           {"degenerate", g.degenerate()},
           {"aut_order", big_json(aut.order)},
           {"aut_within_holomorph", aut.within_holomorph},
           {"aut_G_S", aut_G_S(g)},
           {"normal", v.is_normal_for_GR},
           {"regular_cyclic_subgroups", copies},
           {"nnn", v.nnn},
           {"nnn_nonconjugate", v.nnn_nonconjugate},
           {"w_subgroups", w_subgroups(g).divisors},
           {"witnesses", ws}};
  std::cout << doc.dump(2) << '\n';
  return 0;
}

int run_graph(u64 n, const std::string& set, bool force, const std::string& out) {
  auto g = parse_circulant(n, set, force);
  Sink sink(out);
  for (auto [u, v] : g.edges()) *sink << u << ' ' << v << '\n';
  sink.close();
  return 0;
}

int run_element(int n, const std::string& expr, std::optional<std::int64_t> pw) {
  if (n < 3 || n > 62) throw RangeError("element needs 3 <= n <= 62");
  HolElem2 h = parse_element(expr, n);
  if (pw) h = power(h, *pw);
  json doc{{"n", n},
           {"element", format_element(h)},
           {"alpha", h.alpha},
           {"beta", h.beta},
           {"gamma", h.gamma},
           {"multiplier", h.multiplier()},
           {"order", order(h)},
           {"semiregular", is_semiregular_closed_form(h)},
           {"normal_form", format_element(conj_normal_form(h).form)}};
  std::cout << doc.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"holocirc: holomorphs of cyclic 2-groups and circulant normality"};
  app.require_subcommand(1);
  std::string config;
  app.add_option("--config", config, "JSON file with hol_max_n / graph_max bounds");

  auto* claims = app.add_subcommand("claims", "list registered claims");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "check a claim against brute force");
  verify->add_option("claim", va.claim, "claim id, or 'all'")->required();
  verify->add_option("--n", va.n, "parameter range A..B");
  verify->add_option("--modulus", va.moduli, "graph orders (primes for lem-2.1)")->delimiter(',');
  verify->add_option("--samples", va.samples, "random samples where applicable");
  verify->add_option("--seed", va.seed, "random seed");
  verify->add_option("--jobs", va.jobs, "worker threads")->check(CLI::Range(1u, 256u));
  verify->add_flag("--force", va.force, "lift soft bounds");
  verify->add_option("--format", va.format)->check(CLI::IsMember({"json", "ndjson", "text"}));
  verify->add_option("--out", va.out, "output file");

  int cn = 0;
  unsigned cjobs = 1;
  std::string cformat = "json", cout_path;
  auto* classify = app.add_subcommand("classify", "regular subgroups of Hol(Z_2^n)");
  classify->add_option("--n", cn, "exponent, 3..8")->required();
  classify->add_option("--jobs", cjobs)->check(CLI::Range(1u, 256u));
  classify->add_option("--format", cformat)->check(CLI::IsMember({"json", "text"}));
  classify->add_option("--out", cout_path);

  ScanArgs sa;
  auto* scan = app.add_subcommand("scan", "every inverse-closed S on Z_n, one record per line");
  scan->add_option("--modulus", sa.modulus, "graph order")->required();
  scan->add_option("--shard", sa.shard, "slice i/k of the mask range");
  scan->add_flag("--connected-only", sa.connected_only);
  scan->add_option("--out", sa.out, "output file");
  scan->add_option("--jobs", sa.jobs)->check(CLI::Range(1u, 256u));
  scan->add_option("--format", sa.format)->check(CLI::IsMember({"json", "ndjson", "text"}));
  scan->add_flag("--force", sa.force);

  u64 in_n = 0;
  std::string in_set;
  bool in_force = false;
  auto* inspect = app.add_subcommand("inspect", "automorphisms and normality of one circulant");
  inspect->add_option("--modulus", in_n)->required();
  inspect->add_option("--set", in_set, "connection set, e.g. 1,3,13,15")->required();
  inspect->add_flag("--force", in_force);

  u64 gr_n = 0;
  std::string gr_set, gr_out;
  bool gr_force = false;
  auto* graph = app.add_subcommand("graph", "edge list of a circulant, one 'u v' per line");
  graph->add_option("--modulus", gr_n)->required();
  graph->add_option("--set", gr_set)->required();
  graph->add_option("--out", gr_out);
  graph->add_flag("--force", gr_force);

  int el_n = 0;
  std::string el_expr;
  std::optional<std::int64_t> el_pow;
  auto* element = app.add_subcommand("element", "normal form, order and semiregularity of h");
  element->add_option("--n", el_n)->required();
  element->add_option("--expr", el_expr, "e.g. a^3*x*y^2")->required();
  element->add_option("--power", el_pow);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (!config.empty()) g_bounds = load_bounds(config);
    if (*claims) {
      for (const auto& c : claim_registry()) std::cout << c.id << "  " << c.anchor << '\n';
      return 0;
    }
    if (*verify) return run_verify(va);
    if (*classify) return run_classify(cn, cjobs, cformat, cout_path);
    if (*scan) return run_scan(sa);
    if (*inspect) return run_inspect(in_n, in_set, in_force);
    if (*graph) return run_graph(gr_n, gr_set, gr_force, gr_out);
    if (*element) return run_element(el_n, el_expr, el_pow);
  } catch (const ResourceBoundError& e) {
    std::cerr << "holocirc: resource bound: " << e.what() << '\n';
    return kExitBound;
  } catch (const std::invalid_argument& e) {  // contract, parse, unknown claim
    std::cerr << "holocirc: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "holocirc: range: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "holocirc: i/o: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
