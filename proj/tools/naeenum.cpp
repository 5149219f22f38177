// naeenum command-line front end.
//
// Exit codes: 0 ok, 1 internal error, 2 precondition violated (a lighter
// solution exists), 3 unreadable or too-wide input, 4 refused parameters,
// 5 verification mismatch.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "naeenum/analysis.hpp"
#include "naeenum/cnf.hpp"
#include "naeenum/errors.hpp"
#include "naeenum/generators.hpp"
#include "naeenum/oracle.hpp"
#include "naeenum/stats_json.hpp"
#include "naeenum/treesearch.hpp"

using namespace naeenum;
using nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kInternal = 1, kPrecondition = 2, kInput = 3, kRefused = 4, kMismatch = 5 };

struct Config {
  std::string input;
  std::string t = "";
  std::uint64_t seed = 0;
  bool seeded = false;
  std::string mode = "enumerate";
  bool exhaustive = false;
  std::string debug_tree;
  std::string out;
  std::string solutions;
  bool bitstring = false;
  bool nae = false;
  int parallel = 1;
  std::uint64_t samples = 10000;
  std::uint64_t budget = 1'000'000;

  // gen
  GenSpec gen{"maj", 4, 3, 0, 0, 0.0};

  // bound
  std::vector<int> f_large_args, f_small_args;
  bool verify_claims = false;
  int grid = -1;
  int n = -1;
  std::string profile;
  bool global = false;
  std::string dump_csv;
};

void print(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

struct Instance {
  Formula original;
  Formula closed;
  int t = 0;
};

Instance load(const Config& c) {
  Instance in;
  in.original = read_dimacs_file(c.input);
  in.closed = negation_closure(in.original);
  if (c.t == "auto") {
    if (in.closed.num_vars() > kMaxOracleVars)
      throw RefusedParameters("--t auto needs n <= " + std::to_string(kMaxOracleVars));
    const OracleReport rep = brute_force(in.closed);
    if (!rep.tau) throw RefusedParameters("formula has no NAE solution; --t auto is undefined");
    in.t = *rep.tau;
    std::cerr << "t = tau = " << in.t << "\n";
  } else if (c.t.empty()) {
    throw RefusedParameters("--t is required (a number or auto)");
  } else {
    try {
      std::size_t pos = 0;
      in.t = std::stoi(c.t, &pos);
      if (pos != c.t.size()) throw std::invalid_argument(c.t);
    } catch (const std::logic_error&) {
      throw RefusedParameters("--t expects an integer or auto, got '" + c.t + "'");
    }
  }
  if (in.t < 0 || in.t > in.closed.num_vars()) throw RefusedParameters("t must lie in 0..n");
  return in;
}

std::string solution_line(const Assignment& a, int n, bool bitstring) {
  std::string s;
  if (bitstring) {
    s.assign(static_cast<std::size_t>(n), '0');
    for (int v : a.ones) s[static_cast<std::size_t>(v - 1)] = '1';
    return s;
  }
  for (std::size_t i = 0; i < a.ones.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(a.ones[i]);
  }
  return s;
}

std::vector<Assignment> read_solutions(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open " + path);
  std::vector<Assignment> out;
  std::string line;
  std::size_t ln = 0;
  while (std::getline(in, line)) {
    ++ln;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      out.push_back({});  // weight-0 solution
      continue;
    }
    Assignment a;
    if (line.find_first_not_of("01\r") == std::string::npos && static_cast<int>(line.size()) >= n && n > 0) {
      for (int v = 1; v <= n; ++v)
        if (line[static_cast<std::size_t>(v - 1)] == '1') a.ones.push_back(v);
    } else {
      std::istringstream ls(line);
      int v;
      while (ls >> v) {
        if (v < 1 || v > n) throw ParseError(ln, "variable out of range");
        a.ones.push_back(v);
      }
      if (!ls.eof()) throw ParseError(ln, "expected variable indices");
      std::sort(a.ones.begin(), a.ones.end());
    }
    out.push_back(a);
  }
  return out;
}

OrderingSource ordering(const Config& c) { return c.seeded ? OrderingSource::seeded(c.seed) : OrderingSource(); }

int cmd_gen(const Config& c) {
  Formula f;
  if (c.gen.family == "maj") {
    f = maj(c.gen.n, c.gen.k);
  } else if (c.gen.family == "random_closed") {
    f = random_negation_closed(c.gen.n, c.gen.m, c.gen.seed, c.gen.negate_probability);
  } else if (c.gen.family == "reduction") {
    f = ksat_to_naesat(random_negation_closed(c.gen.n, c.gen.m, c.gen.seed, c.gen.negate_probability));
  } else {
    throw RefusedParameters("unknown family '" + c.gen.family + "'");
  }
  const std::vector<std::string> comments{c.gen.describe()};
  const std::string text = write_dimacs(f, comments);
  if (c.out.empty() || c.out == "-") {
    std::cout << text;
  } else {
    std::ofstream o(c.out);
    if (!o) throw RefusedParameters("cannot write " + c.out);
    o << text;
  }
  return kOk;
}

int cmd_psi(const Config& c, const Instance& in) {
  const PsiEstimate est = estimate_psi(in.closed, in.t, c.samples, c.seed, c.parallel);
  ordered_json j = {{"n", in.closed.num_vars()}, {"t", in.t}, {"seed", c.seed}, {"psi", psi_to_json(est)}};
  print(j);
  return kOk;
}

int cmd_enumerate(const Config& c, bool count_only) {
  const Instance in = load(c);
  const int n = in.closed.num_vars();

  if (c.mode == "psi") return cmd_psi(c, in);

  if (c.exhaustive) {
    const ExhaustiveReport rep = enumerate_all_orderings(in.closed, in.t, c.budget);
    print({{"n", n}, {"t", in.t}, {"exhaustive", exhaustive_to_json(rep)}});
    return kOk;
  }

  if (!c.debug_tree.empty()) {
    Engine eng(in.closed, in.t);
    const TransversalTree tree = materialize(eng);
    std::ofstream o(c.debug_tree);
    if (!o) throw RefusedParameters("cannot write " + c.debug_tree);
    o << export_tree(tree);
    const InvariantReport inv = check_invariants(tree, eng.selector().route() == Route::controlled);
    std::cerr << "debug tree: " << tree.size() << " nodes written to " << c.debug_tree << "\n";
    if (inv.total()) std::cerr << "invariant violations: " << inv.total() << "\n";
    // the search below reuses the stabilized engine
    std::vector<Assignment> sols;
    SearchStats s = eng.run(ordering(c), [&](const Assignment& a) { sols.push_back(a); });
    ordered_json j = stats_to_json(s);
    j["invariants"] = invariants_to_json(inv);
    print(j);
    return kOk;
  }

  std::vector<Assignment> sols;
  SearchStats stats;
  if (count_only || c.mode == "count") {
    auto [k, s] = count(in.closed, in.t, ordering(c));
    stats = s;
    ordered_json j = {{"count", k}, {"stats", stats_to_json(stats)}};
    print(j);
    return kOk;
  }
  stats = enumerate(in.closed, in.t, ordering(c), [&](const Assignment& a) { sols.push_back(a); });
  ordered_json j = stats_to_json(stats);
  if (!c.out.empty()) {
    std::ofstream o(c.out);
    if (!o) throw RefusedParameters("cannot write " + c.out);
    for (const Assignment& a : sols) o << solution_line(a, n, c.bitstring) << "\n";
    std::cerr << sols.size() << " solutions written to " << c.out << "\n";
  } else {
    ordered_json arr = ordered_json::array();
    for (const Assignment& a : sols) {
      if (c.bitstring) arr.push_back(solution_line(a, n, true));
      else arr.push_back(a.ones);
    }
    j["solutions"] = arr;
  }
  print(j);
  return kOk;
}

int cmd_verify(const Config& c) {
  const Instance in = load(c);
  const int n = in.closed.num_vars();
  if (n > kMaxOracleVars) throw RefusedParameters("verify needs n <= " + std::to_string(kMaxOracleVars));

  std::vector<Assignment> output;
  std::string source;
  if (!c.solutions.empty()) {
    output = read_solutions(c.solutions, n);
    source = c.solutions;
  } else {
    enumerate(in.closed, in.t, ordering(c), [&](const Assignment& a) { output.push_back(a); });
    source = "engine";
  }
  const VerifyReport rep = verify_enumeration(in.closed, in.t, output);
  ordered_json j = {{"n", n},
                    {"t", in.t},
                    {"source", source},
                    {"pass", rep.pass},
                    {"expected", rep.expected},
                    {"received", rep.received}};
  if (!rep.pass) {
    j["mismatch"] = rep.mismatch;
    if (rep.witness) j["witness"] = rep.witness->ones;
  }
  bool ok = rep.pass;
  if (c.nae) {
    // NAE solutions of the input as given must be the SAT solutions of its closure
    std::vector<Assignment> direct = nae_solutions_direct(in.original, in.t);
    std::sort(direct.begin(), direct.end());
    const VerifyReport nae = verify_enumeration(in.closed, in.t, direct);
    j["nae_semantics"] = {{"pass", nae.pass}, {"direct", direct.size()}, {"closure", nae.expected}};
    ok = ok && nae.pass;
  }
  print(j);
  std::cerr << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? kOk : kMismatch;
}

void dump_tables(const std::string& path, const ClaimGrid& g) {
  std::ofstream o(path);
  if (!o) throw RefusedParameters("cannot write " + path);
  o << "table,w,d,h,M,F\n";
  const BoundTable ml = dp_m_large(g.large_wmax, g.large_dmax, g.large_wmin);
  for (int d = 0; d <= g.large_dmax; ++d)
    for (int w = g.large_wmin; w <= g.large_wmax; ++w)
      o << "large," << w << "," << d << ",," << ml.m(w, d) << "," << f_large(w, d) << "\n";
  const BoundTable ms = dp_m_small(g.small_wmax, g.small_dmax, g.small_hmax, g.small_wmin);
  for (int d = 0; d <= g.small_dmax; ++d)
    for (int h = 0; h <= g.small_hmax; ++h)
      for (int w = g.small_wmin; w <= g.small_wmax; ++w)
        o << "small," << w << "," << d << "," << h << "," << ms.m(w, d, h) << "," << f_small(w, d, h).str() << "\n";
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      v.push_back(std::stoi(item));
    } catch (const std::logic_error&) {
      throw RefusedParameters("bad integer list '" + s + "'");
    }
  }
  return v;
}

int cmd_bound(const Config& c) {
  ordered_json j = ordered_json::object();
  bool ok = true;
  if (!c.f_large_args.empty()) j["f_large"] = f_large(c.f_large_args[0], c.f_large_args[1]).get_str();
  if (!c.f_small_args.empty()) {
    const auto& a = c.f_small_args;
    const Surd6 v = f_small(a[0], a[1], a[2]);
    j["f_small"] = {{"exact", v.str()}, {"approx", v.to_double()}, {"case", f_small_case(a[0], a[1], a[2])}};
  }
  ClaimGrid grid;
  if (c.grid >= 0) {
    grid.large_dmax = c.grid;
    grid.large_wmax = 2 * c.grid;
    grid.small_dmax = c.grid;
    grid.small_wmax = 2 * c.grid;
    grid.small_hmax = c.grid;
  }
  if (c.verify_claims) {
    const ClaimReport rep = verify_bound_claims(grid);
    j["claims"] = claims_to_json(rep);
    ok = ok && rep.pass();
  }
  if (!c.dump_csv.empty()) {
    dump_tables(c.dump_csv, grid);
    j["csv"] = c.dump_csv;
  }
  if (!c.profile.empty()) {
    if (c.n < 0) throw RefusedParameters("--profile needs --n");
    const std::vector<int> p = parse_ints(c.profile);
    if (p.size() != 4) throw RefusedParameters("--profile expects t0,t1,mR',mB");
    j["certificate"] = certificate_to_json(n_of_u0(c.n, p[0], p[1], p[2], p[3]));
  } else if (c.global || c.n >= 0) {
    if (c.n < 0) throw RefusedParameters("--global needs --n");
    const GlobalCheck g = global_bound_check(c.n);
    j["global"] = global_to_json(g);
    ok = ok && g.pass();
  }
  if (j.empty()) throw RefusedParameters("bound: nothing requested");
  print(j);
  return ok ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Enumerate weight-t NAE solutions of 3-CNF formulas"};
  app.require_subcommand(1);
  Config c;

  auto add_input = [&](CLI::App* sub) {
    sub->add_option("input", c.input, "DIMACS file")->required()->check(CLI::ExistingFile);
    sub->add_option("--t", c.t, "target weight, or auto (oracle tau, n <= 24)");
    sub->add_option("--seed", c.seed, "child-ordering seed (canonical order when absent)")
        ->each([&](const std::string&) { c.seeded = true; });
  };

  auto* gen = app.add_subcommand("gen", "write a generated instance as DIMACS");
  gen->add_option("--family", c.gen.family, "maj | random_closed | reduction")->capture_default_str();
  gen->add_option("--n", c.gen.n, "variables")->capture_default_str();
  gen->add_option("--k", c.gen.k, "clause width for maj")->capture_default_str();
  gen->add_option("--m", c.gen.m, "clause draws for random_closed");
  gen->add_option("--seed", c.gen.seed, "generator seed");
  gen->add_option("--negate-p", c.gen.negate_probability, "per-literal flip probability");
  gen->add_option("-o,--out", c.out, "output path (stdout when absent)");

  auto* en = app.add_subcommand("enumerate", "enumerate weight-t solutions");
  add_input(en);
  en->add_option("--mode", c.mode, "enumerate | count | psi")
      ->check(CLI::IsMember({"enumerate", "count", "psi"}))
      ->capture_default_str();
  en->add_flag("--exhaustive-orderings", c.exhaustive, "run under every joint child ordering");
  en->add_option("--budget", c.budget, "ordering budget for --exhaustive-orderings")->capture_default_str();
  en->add_option("--debug-tree", c.debug_tree, "materialize the full tree and write it here");
  en->add_option("-o,--out", c.out, "solution file (embedded in the stats JSON when absent)");
  en->add_flag("--bitstring", c.bitstring, "write solutions as 0/1 strings");
  en->add_option("--samples", c.samples, "samples for --mode psi")->capture_default_str();
  en->add_option("--parallel", c.parallel, "workers for --mode psi")->capture_default_str();

  auto* cnt = app.add_subcommand("count", "count weight-t solutions");
  add_input(cnt);

  auto* ver = app.add_subcommand("verify", "compare against the brute-force oracle");
  add_input(ver);
  ver->add_option("--solutions", c.solutions, "solution file to check (runs the engine when absent)");
  ver->add_flag("--nae", c.nae, "also check NAE semantics of the input before closure");

  auto* bnd = app.add_subcommand("bound", "evaluate and check the analytic bounds");
  bnd->add_option("--f-large", c.f_large_args, "w d")->expected(2);
  bnd->add_option("--f-small", c.f_small_args, "w d h")->expected(3);
  bnd->add_flag("--verify-claims", c.verify_claims, "check every recurrence and crossover claim on a grid");
  bnd->add_option("--grid", c.grid, "grid size G: d <= G, w <= 2G, h <= G");
  bnd->add_option("--n", c.n, "variable count for --profile or the global sweep");
  bnd->add_option("--profile", c.profile, "t0,t1,mR',mB");
  bnd->add_flag("--global", c.global, "sweep every route and profile at --n");
  bnd->add_option("--dump-csv", c.dump_csv, "write the DP tables as CSV");

  auto* est = app.add_subcommand("estimate", "Monte Carlo estimate of the expected surviving-leaf count");
  add_input(est);
  est->add_option("--samples", c.samples, "independent seeded runs")->capture_default_str();
  est->add_option("--parallel", c.parallel, "worker threads")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return cmd_gen(c);
    if (*en) return cmd_enumerate(c, false);
    if (*cnt) return cmd_enumerate(c, true);
    if (*ver) return cmd_verify(c);
    if (*bnd) return cmd_bound(c);
    if (*est) {
      const Instance in = load(c);
      return cmd_psi(c, in);
    }
  } catch (const PreconditionViolated& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return kPrecondition;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kInput;
  } catch (const WidthError& e) {
    std::cerr << "unsupported input: " << e.what() << "\n";
    return kInput;
  } catch (const InputNotClosed& e) {
    std::cerr << "input not closed: " << e.what() << "\n";
    return kInput;
  } catch (const RefusedParameters& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kRefused;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kRefused;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
