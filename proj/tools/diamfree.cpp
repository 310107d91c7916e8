// diamfree: exact search and classification of diameter-avoiding subsets of
// the signed ternary point sets L_mkl, plus the four-distance verification
// suites. Commands: gen, solve, canon, verify, johnson-verify.

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "diamfree/canon.hpp"
#include "diamfree/families.hpp"
#include "diamfree/graph.hpp"
#include "diamfree/johnson.hpp"
#include "diamfree/report.hpp"
#include "diamfree/solver.hpp"
#include "diamfree/verify.hpp"
#include "diamfree/version.hpp"

using nlohmann::json;
using namespace diamfree;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitCapacity = 2;
constexpr int kExitTimeout = 3;
constexpr int kExitUsage = 64;

struct CommonOpts {
  int threads = 0;
  double time_limit = 300.0;
  std::uint64_t enum_limit = 1'000'000;
  std::string format = "json";
  std::string out_path;
  std::string cache_dir;
  bool slow = false;
  bool force = false;
};

SolveOptions solve_options(const CommonOpts& c) {
  SolveOptions o;
  o.threads = c.threads;
  o.time_limit_s = c.time_limit;
  o.enum_limit = c.enum_limit;
  return o;
}

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--threads", c.threads, "Worker threads (0 = all cores)");
  cmd->add_option("--time-limit", c.time_limit, "Solver time limit in seconds");
  cmd->add_option("--enum-limit", c.enum_limit, "Enumeration result limit");
  cmd->add_option("--format", c.format, "Output format: json, csv or text")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  cmd->add_option("--out", c.out_path, "Write the report to this path");
  cmd->add_option("--cache-dir", c.cache_dir,
                  "Report cache directory (default .diamfree-cache, or "
                  "DIAMFREE_CACHE_DIR)");
  cmd->add_flag("--slow", c.slow, "Enable the long-running checks");
  cmd->add_flag("--force", c.force, "Recompute even when a cached report exists");
}

void emit(const CommonOpts& c, const std::string& text) {
  if (!c.out_path.empty()) {
    std::ofstream out(c.out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output path " + c.out_path);
    out << text;
  } else {
    std::cout << text;
  }
}

json config_json(const std::string& command, const CommonOpts& c, const json& extra) {
  json cfg;
  cfg["command"] = command;
  cfg["threads"] = c.threads;
  cfg["time_limit_s"] = c.time_limit;
  cfg["enum_limit"] = c.enum_limit;
  cfg["format"] = c.format;
  cfg["slow"] = c.slow;
  cfg["args"] = extra;
  return cfg;
}

/// Wraps a computation in the content-hash cache: identical config and
/// inputs short-circuit to the stored report unless --force is given.
int cached_report(const std::string& command, const CommonOpts& c, const json& extra,
                  const std::function<std::pair<json, int>()>& compute) {
  const json cfg = config_json(command, c, extra);
  const std::string key = report::fnv1a_hex(cfg.dump());
  const std::string dir =
      c.cache_dir.empty() ? report::resolve_cache_dir(".diamfree-cache") : c.cache_dir;

  if (!c.force) {
    if (auto cached = report::cache_lookup(dir, key)) {
      emit(c, *cached);
      const json env = json::parse(*cached, nullptr, false);
      if (!env.is_discarded() && env.contains("exit_code"))
        return env["exit_code"].get<int>();
      return kExitOk;
    }
  }

  auto [body, exit_code] = compute();
  json envelope;
  envelope["version"] = kVersion;
  envelope["command"] = command;
  envelope["config"] = cfg;
  envelope["input_hash"] = key;
  envelope["report"] = body;
  envelope["exit_code"] = exit_code;
  const std::string text = envelope.dump(2) + "\n";
  report::cache_store(dir, key, text, c.force);
  emit(c, text);
  return exit_code;
}

std::string checks_csv(const verify::SuiteResult& r) {
  std::ostringstream ss;
  ss << "suite,check,expected,observed,pass\n";
  for (const auto& chk : r.checks) {
    ss << r.suite << ",\"" << chk.name << "\",\"" << chk.expected << "\",\""
       << chk.observed << "\"," << (chk.pass ? 1 : 0) << "\n";
  }
  return ss.str();
}

std::string checks_text(const verify::SuiteResult& r) {
  std::ostringstream ss;
  ss << "suite " << r.suite << "\n";
  for (const auto& chk : r.checks)
    ss << (chk.pass ? "  pass  " : chk.timed_out ? "  TIME  " : "  FAIL  ") << chk.name
       << "  [expected " << chk.expected << ", observed " << chk.observed << "]\n";
  ss << (r.all_pass() ? "all checks passed" : std::to_string(r.failed()) + " check(s) failed")
     << "\n";
  return ss.str();
}

json checks_json(const verify::SuiteResult& r) {
  json arr = json::array();
  for (const auto& chk : r.checks) {
    json c;
    c["name"] = chk.name;
    c["expected"] = chk.expected;
    c["observed"] = chk.observed;
    c["pass"] = chk.pass;
    if (chk.timed_out) c["timed_out"] = true;
    arr.push_back(c);
  }
  json body;
  body["suite"] = r.suite;
  body["checks"] = arr;
  body["passed"] = r.checks.size() - r.failed();
  body["failed"] = r.failed();
  return body;
}

int suite_exit(const verify::SuiteResult& r) {
  if (r.any_timeout()) return kExitTimeout;
  return r.all_pass() ? kExitOk : kExitVerifyFail;
}

int run_suite(const CommonOpts& c, const verify::SuiteResult& r, const json& extra) {
  if (c.format == "csv") {
    emit(c, checks_csv(r));
    return suite_exit(r);
  }
  if (c.format == "text") {
    emit(c, checks_text(r));
    return suite_exit(r);
  }
  return cached_report("verify-" + r.suite, c, extra, [&]() -> std::pair<json, int> {
    return {checks_json(r), suite_exit(r)};
  });
}

bool parse_k_range(const std::string& text, int& lo, int& hi) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      lo = hi = std::stoi(text);
    } else {
      lo = std::stoi(text.substr(0, dots));
      hi = std::stoi(text.substr(dots + 2));
    }
  } catch (...) {
    return false;
  }
  return lo >= 1 && hi >= lo;
}

int cmd_gen(const CommonOpts& c, int m, int k, int l, std::uint64_t cap) {
  try {
    const auto pts = generate(Signature{m, k, l}, cap);
    std::ostringstream ss;
    for (const TritVector& v : pts) ss << to_trit_string(v) << "\n";
    emit(c, ss.str());
    return kExitOk;
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCapacity;
  }
}

int cmd_solve(const CommonOpts& c, int m, int k, int l, int threshold, bool do_enumerate,
              bool do_classify, const std::string& graph_out) {
  json extra;
  extra["signature"] = {m, k, l};
  extra["threshold"] = threshold;
  extra["enumerate"] = do_enumerate;
  extra["classify"] = do_classify;
  return cached_report("solve", c, extra, [&]() -> std::pair<json, int> {
    const Signature sig{m, k, l};
    const auto pts = generate(sig);
    const DiameterGraph g =
        threshold > 0 ? build_graph(pts, threshold) : diameter_graph(pts);
    if (!graph_out.empty()) {
      std::ofstream gout(graph_out, std::ios::binary | std::ios::trunc);
      export_graph(g, gout);
    }
    const SolveOptions opts = solve_options(c);
    MisResult res;
    bool enum_timeout = false;
    if (do_enumerate || do_classify) {
      res = enumerate_maximum(g, opts);
      enum_timeout = res.timed_out && !res.enumerated.has_value();
    } else {
      res = independence_number(g, opts);
    }

    json body;
    body["signature"] = {m, k, l};
    body["threshold_sq"] = g.threshold_sq;
    body["ground_diameter_sq"] = g.ground_diameter_sq;
    body["vertices"] = g.order();
    if (res.timed_out && !res.enumerated) {
      body["status"] = "timeout";
      body["lower_bound"] = res.lower_bound;
      body["upper_bound"] = res.upper_bound;
      (void)enum_timeout;
      return {body, kExitTimeout};
    }
    body["status"] = "ok";
    body["alpha"] = res.alpha;
    std::vector<std::string> witness;
    for (std::uint32_t v : res.witness) witness.push_back(to_trit_string(g.vertices[v]));
    body["witness"] = witness;
    if (res.enumerated) {
      body["enumerated_count"] = res.enumerated->size();
      if (do_classify) {
        std::vector<Family> fams;
        for (const auto& s : *res.enumerated) {
          std::vector<TritVector> members;
          for (std::uint32_t v : s) members.push_back(g.vertices[v]);
          fams.push_back(make_family(sig, "max", std::move(members)));
        }
        const Classification cls = classify(fams);
        json classes = json::array();
        for (const auto& cl : cls.classes) {
          json jc;
          jc["size"] = cl.members.size();
          std::vector<std::string> rep;
          for (const TritVector& v : fams[cl.representative].members)
            rep.push_back(to_trit_string(v));
          jc["representative"] = rep;
          classes.push_back(jc);
        }
        body["classes"] = classes;
      } else if (res.enumerated->size() <= 64) {
        json families = json::array();
        for (const auto& s : *res.enumerated) {
          std::vector<std::string> rows;
          for (std::uint32_t v : s) rows.push_back(to_trit_string(g.vertices[v]));
          families.push_back(rows);
        }
        body["families"] = families;
      }
    }
    return {body, kExitOk};
  });
}

int cmd_canon(const CommonOpts& c, const std::vector<std::string>& paths) {
  json extra;
  std::vector<Family> fams;
  json inputs = json::array();
  for (const std::string& path : paths) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open family file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    fams.push_back(family_from_json(ss.str()));
    inputs.push_back(report::fnv1a_hex(ss.str()));
  }
  extra["inputs"] = inputs;
  return cached_report("canon", c, extra, [&]() -> std::pair<json, int> {
    json body;
    json certs = json::array();
    for (const Family& f : fams) {
      const CanonicalForm form = canonical_form(f);
      json cert;
      cert["name"] = f.name;
      std::vector<std::string> rows;
      {
        std::istringstream ss(form.bytes);
        std::string row;
        while (std::getline(ss, row)) rows.push_back(row);
      }
      cert["canonical"] = rows;
      cert["permutation"] = cycle_notation(form.perm);
      cert["stabilizer_order"] = stabilizer_order(f);
      certs.push_back(cert);
    }
    body["certificates"] = certs;
    if (fams.size() >= 2) {
      bool same_sig = true;
      for (const Family& f : fams) same_sig = same_sig && f.sig == fams.front().sig;
      if (same_sig) {
        const Classification cls = classify(fams);
        json classes = json::array();
        for (const auto& cl : cls.classes) {
          json jc;
          std::vector<std::string> names;
          for (std::size_t i : cl.members) names.push_back(fams[i].name);
          jc["members"] = names;
          jc["representative"] = fams[cl.representative].name;
          classes.push_back(jc);
        }
        body["classes"] = classes;
      }
    }
    return {body, kExitOk};
  });
}

int cmd_johnson_verify(const CommonOpts& c) {
  json extra;
  return cached_report("johnson-verify", c, extra, [&]() -> std::pair<json, int> {
    namespace jn = diamfree::johnson;
    json body;
    json variants = json::array();
    bool ok = true;
    for (const jn::Variant v : {jn::Variant::X6, jn::Variant::Y6, jn::Variant::Z6}) {
      const jn::Report rep = jn::verify_extremal(v);
      json jv;
      jv["variant"] = rep.variant;
      jv["size"] = rep.size;
      jv["distance_set"] = rep.distance_set;
      jv["maximal"] = rep.maximal;
      jv["violations"] = rep.violations;
      ok = ok && rep.size == 258 && rep.four_distance && rep.maximal;
      variants.push_back(jv);
    }
    body["variants"] = variants;
    json bounds;
    for (int t = 1; t <= 6; ++t) bounds["t" + std::to_string(t)] = jn::t_bound(t);
    for (int t = 7; t <= 9; ++t) {
      const jn::TailCapacity cap = jn::tail_capacity(t);
      json jc;
      jc["survivors"] = cap.survivors;
      jc["alpha"] = cap.alpha;
      jc["total"] = cap.total;
      bounds["t" + std::to_string(t)] = jc;
    }
    body["bounds"] = bounds;
    return {body, ok ? kExitOk : kExitVerifyFail};
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"diamfree: exact diameter-avoiding subset search over L_mkl"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  // gen
  auto* gen = app.add_subcommand("gen", "Emit all points of L_mkl as trit strings");
  CommonOpts gen_opts;
  int gm = 0, gk = 0, gl = 0;
  gen->add_option("m", gm, "count of -1 entries")->required();
  gen->add_option("k", gk, "count of 0 entries")->required();
  gen->add_option("l", gl, "count of +1 entries")->required();
  add_common(gen, gen_opts);

  // solve
  auto* solve = app.add_subcommand("solve", "Independence number of the diameter graph");
  CommonOpts solve_opts_cli;
  int sm = 0, sk = 0, sl = 0, threshold = 0;
  bool do_enum = false, do_classify = false;
  std::string graph_out;
  solve->add_option("m", sm)->required();
  solve->add_option("k", sk)->required();
  solve->add_option("l", sl)->required();
  solve->add_option("--threshold", threshold,
                    "Edge threshold on the squared distance (default: the diameter)");
  solve->add_flag("--enumerate", do_enum, "Enumerate all maximum independent sets");
  solve->add_flag("--classify", do_classify, "Classify enumerated sets up to isomorphism");
  solve->add_option("--graph-out", graph_out, "Export the graph (header + edge list)");
  add_common(solve, solve_opts_cli);

  // canon
  auto* canon = app.add_subcommand("canon", "Canonical certificates for family files");
  CommonOpts canon_opts;
  std::vector<std::string> canon_files;
  canon->add_option("files", canon_files, "Family JSON files")->required();
  add_common(canon, canon_opts);

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
  CommonOpts verify_opts;
  std::string suite;
  std::string k_range = "1..5";
  verify_cmd->add_option("suite", suite, "main-theorem, props, johnson or section4")
      ->required()
      ->check(CLI::IsMember({"main-theorem", "props", "johnson", "section4"}));
  verify_cmd->add_option("--k", k_range, "k range for main-theorem, e.g. 1..4");
  add_common(verify_cmd, verify_opts);

  // johnson-verify
  auto* jv = app.add_subcommand("johnson-verify",
                                "Verify the three 258-point extremal sets");
  CommonOpts jv_opts;
  add_common(jv, jv_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      const std::uint64_t cap =
          gen->count("--enum-limit") ? gen_opts.enum_limit : kDefaultEnumCap;
      return cmd_gen(gen_opts, gm, gk, gl, cap);
    }
    if (solve->parsed())
      return cmd_solve(solve_opts_cli, sm, sk, sl, threshold, do_enum, do_classify,
                       graph_out);
    if (canon->parsed()) return cmd_canon(canon_opts, canon_files);
    if (verify_cmd->parsed()) {
      const SolveOptions opts = solve_options(verify_opts);
      json extra;
      extra["suite"] = suite;
      verify::SuiteResult result;
      if (suite == "props") {
        result = verify::props_suite(opts);
      } else if (suite == "main-theorem") {
        int lo = 1, hi = 5;
        if (!parse_k_range(k_range, lo, hi)) {
          std::cerr << "error: bad --k range '" << k_range << "'\n";
          return kExitUsage;
        }
        extra["k"] = {lo, hi};
        extra["slow"] = verify_opts.slow;
        result = verify::main_theorem_suite(lo, hi, verify_opts.slow, opts);
      } else if (suite == "johnson") {
        result = verify::johnson_suite(opts);
      } else {
        result = verify::section4_suite(opts);
      }
      return run_suite(verify_opts, result, extra);
    }
    if (jv->parsed()) return cmd_johnson_verify(jv_opts);
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const LimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const TimeoutError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitTimeout;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
