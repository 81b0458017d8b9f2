#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qmitm/brute.hpp"
#include "qmitm/claw.hpp"
#include "qmitm/cnfsat.hpp"
#include "qmitm/genbench.hpp"
#include "qmitm/instances.hpp"
#include "qmitm/mitm_ilp.hpp"

using nlohmann::json;
using namespace qmitm;

namespace {

constexpr int kExitSolved = 0;
constexpr int kExitNotFound = 1;
constexpr int kExitInputError = 2;

std::string fnv1a_digest(const std::string& text) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string witness_string(const Assignment& a) {
  std::string s;
  for (uint8_t b : a.bits) s += b ? '1' : '0';
  return s;
}

struct SolveOpts {
  std::string kind;
  std::string file;
  int gen_n = 0;
  int gen_d = 1;
  double density = 0.0;  // 0 = derive from the formula
  bool plant = true;
  uint64_t seed = 1;
  int retries = 5;
  bool verify = false;
  uint64_t subset_size = 0;
  double alpha_override = 0.0;
  std::string family = "sym";
  bool timing = false;
};

template <typename Inst>
Inst load_or_throw(const std::string& path, Inst (*parse)(std::istream&)) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse(in);
}

json base_report(const std::string& command, const std::string& digest, uint64_t seed) {
  json j;
  j["command"] = command;
  j["instance_digest"] = digest;
  j["seed"] = seed;
  j["result"] = {{"status", "unknown"}};
  j["quantum_queries"] = 0;
  j["classical_setup_evals"] = 0;
  j["tree_visits"] = 0;
  j["retries_used"] = 0;
  j["wall_ms"] = 0.0;
  return j;
}

int run_solve(const SolveOpts& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  json report;
  int exit_code = kExitNotFound;

  if (opt.kind == "knapsack" || opt.kind == "ilp" || opt.kind == "exact1") {
    IlpInstance inst;
    std::string text;
    int brute_guard = 0;
    std::optional<BruteResult> truth;
    if (opt.kind == "knapsack") {
      KnapsackInstance k =
          opt.file.empty() ? gen_knapsack(opt.gen_n, opt.plant, opt.seed)
                           : load_or_throw<KnapsackInstance>(opt.file, &KnapsackInstance::parse);
      std::ostringstream os;
      k.write(os);
      text = os.str();
      inst = knapsack_to_ilp(k);
      brute_guard = k.n;
    } else if (opt.kind == "ilp") {
      inst = opt.file.empty() ? gen_ilp(opt.gen_n, opt.gen_d, opt.plant, opt.seed)
                              : load_or_throw<IlpInstance>(opt.file, &IlpInstance::parse);
      std::ostringstream os;
      inst.write(os);
      text = os.str();
      brute_guard = inst.n;
    } else {
      CnfFormula f = opt.file.empty()
                         ? gen_cnf(opt.gen_n, opt.density > 0 ? opt.density : 1.0, opt.plant,
                                   opt.seed)
                         : load_or_throw<CnfFormula>(opt.file, &CnfFormula::parse_dimacs);
      std::ostringstream os;
      f.write_dimacs(os);
      text = os.str();
      inst = exactly_one_sat_to_group_ilp(f);
      brute_guard = f.n;
      if (opt.verify && f.n <= 20) truth = brute_exactly_one(f);
    }
    report = base_report("solve " + opt.kind, fnv1a_digest(text), opt.seed);

    SolveStats stats;
    auto res = solve_ilp(inst, opt.seed, opt.retries, &stats);
    report["quantum_queries"] = stats.quantum_queries;
    report["classical_setup_evals"] = stats.classical_setup_evals;
    report["tree_visits"] = stats.tree_visits;
    report["retries_used"] = stats.retries_used;
    if (res) {
      report["result"] = {{"status", "feasible"}, {"witness", witness_string(*res)}};
      exit_code = kExitSolved;
    }
    if (opt.verify && brute_guard <= 20) {
      if (opt.kind != "exact1") truth = brute_ilp(inst);
      const bool agree = truth->feasible == res.has_value();
      report["verify"] = {{"brute_feasible", truth->feasible}, {"agrees", agree}};
      if (!agree && res.has_value())
        throw std::logic_error("emitted witness disagrees with the brute oracle");
    }
  } else if (opt.kind == "cnf") {
    CnfFormula f = opt.file.empty()
                       ? gen_cnf(opt.gen_n, opt.density > 0 ? opt.density : 1.0, opt.plant,
                                 opt.seed)
                       : load_or_throw<CnfFormula>(opt.file, &CnfFormula::parse_dimacs);
    std::ostringstream os;
    f.write_dimacs(os);
    report = base_report("solve cnf", fnv1a_digest(os.str()), opt.seed);
    const double c = opt.density > 0 ? opt.density
                                     : static_cast<double>(f.m) / std::max(1, f.n);
    CnfSolveStats stats;
    std::optional<double> alpha =
        opt.alpha_override > 0 ? std::optional<double>(opt.alpha_override) : std::nullopt;
    auto res = solve_cnf(f, c, opt.seed, opt.retries, &stats, alpha);
    report["quantum_queries"] = stats.quantum_queries;
    report["classical_setup_evals"] = stats.classical_setup_evals;
    report["retries_used"] = stats.retries_used;
    report["table_pairs"] = stats.table_pairs;
    report["blocks_tried"] = stats.blocks_tried;
    report["per_block_table_sizes"] = stats.per_block_table_sizes;
    report["predicted_build_cost"] = stats.predicted_build_cost;
    if (res) {
      report["result"] = {{"status", "feasible"}, {"witness", witness_string(*res)}};
      exit_code = kExitSolved;
    }
    if (opt.verify && f.n <= 20) {
      auto truth = brute_cnf(f);
      report["verify"] = {{"brute_feasible", truth.feasible},
                          {"agrees", truth.feasible == res.has_value()}};
    }
  } else if (opt.kind == "claw") {
    if (opt.family == "sym") {
      auto planted = gen_symmetric_claw(opt.gen_n, opt.seed);
      auto oracle = knapsack_claw(planted.coefficients, planted.target);
      std::ostringstream os;
      os << "symclaw " << opt.gen_n << " " << planted.target;
      report = base_report("solve claw sym", fnv1a_digest(os.str()), opt.seed);
      ClawStats stats;
      auto res = solve_symmetric_claw(oracle, opt.seed, opt.retries, &stats);
      report["quantum_queries"] = stats.quantum_queries;
      report["classical_setup_evals"] = stats.setup_evals;
      report["sort_queries"] = stats.sort_queries;
      report["total_queries"] = stats.total_queries;
      report["retries_used"] = stats.retries_used;
      if (res) {
        report["result"] = {{"status", "feasible"},
                            {"witness", witness_string(Assignment::from_index(*res, opt.gen_n))}};
        exit_code = kExitSolved;
      }
    } else if (opt.family == "pair") {
      const uint64_t domain = uint64_t{1} << opt.gen_n;
      auto fam = gen_claw_family(domain, opt.gen_d, FamilyKind::PairClaw, opt.plant, opt.seed);
      std::ostringstream os;
      os << "pairclaw " << domain << " " << opt.gen_d;
      report = base_report("solve claw pair", fnv1a_digest(os.str()), opt.seed);
      ClawStats stats;
      auto res = solve_simultaneous_claw(fam, opt.seed, opt.subset_size, &stats);
      report["quantum_queries"] = stats.quantum_queries;
      report["classical_setup_evals"] = stats.setup_evals;
      report["total_queries"] = stats.total_queries;
      report["outer_rounds"] = stats.outer_rounds;
      if (res) {
        report["result"] = {{"status", "feasible"},
                            {"witness", {{"x", res->x}, {"y", res->y}}}};
        exit_code = kExitSolved;
      }
    } else {
      throw std::runtime_error("unknown claw family: " + opt.family);
    }
  } else {
    throw std::runtime_error("unknown kind: " + opt.kind);
  }

  if (opt.timing)
    report["wall_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  std::cout << report.dump(2) << "\n";
  if (exit_code == kExitSolved) {
    std::cerr << "solved: witness verified, " << report["quantum_queries"]
              << " simulated quantum queries\n";
  } else {
    std::cerr << "no solution found within " << opt.retries
              << " retries (probabilistic search; this is not a proof of infeasibility)\n";
  }
  return exit_code;
}

int run_bench(const std::string& problem, std::vector<int> sizes, int trials, uint64_t seed,
              const std::string& out, bool baseline, bool timing) {
  if (sizes.empty()) throw std::runtime_error("--sizes must be non-empty");
  auto report = run_scaling(problem, sizes, trials, seed, baseline, timing);
  if (!out.empty()) {
    std::ofstream csv(out + ".csv");
    if (!csv) throw std::runtime_error("cannot write " + out + ".csv");
    write_csv(csv, report);
    std::ofstream js(out + ".json");
    if (!js) throw std::runtime_error("cannot write " + out + ".json");
    write_json_summary(js, report);
  }
  write_json_summary(std::cout, report);
  std::cerr << "bench " << problem << ": solver exponent " << report.solver_fit.beta;
  if (report.baseline_ran) std::cerr << ", baseline exponent " << report.baseline_fit.beta;
  std::cerr << "\n";
  return kExitSolved;
}

int run_validate(const std::string& kind, int n, double density, int count, uint64_t seed) {
  json report;
  report["command"] = "validate " + kind;
  report["seed"] = seed;
  bool ok = true;

  if (kind == "claw") {
    if (n < 3 || n > 8) throw std::runtime_error("claw validation is exhaustive; need 3 <= n <= 8");
    uint64_t violations = 0;
    std::vector<std::string> examples;
    for (int i = 0; i < count; ++i) {
      auto planted = gen_symmetric_claw(n, seed + i);
      auto oracle = knapsack_claw(planted.coefficients, planted.target);
      auto rep = validate_promise(oracle);
      violations += rep.condition1_violations + rep.condition2_violations;
      for (const auto& e : rep.counterexamples)
        if (examples.size() < 8) examples.push_back(e);
    }
    report["instances"] = count;
    report["violations"] = violations;
    report["counterexamples"] = examples;
    ok = violations == 0;
  } else if (kind == "cnf-claim") {
    if (n < 2 || n > 20) throw std::runtime_error("need 2 <= n <= 20");
    const auto params = choose_alpha(density);
    int checked = 0, passed = 0;
    for (int i = 0; i < count; ++i) {
      auto f = gen_cnf(n, density, true, seed + i);
      auto truth = brute_cnf(f);
      if (!truth.feasible) continue;  // planted, so this should not happen
      ++checked;
      const Assignment star = Assignment::from_index(truth.witnesses.front(), n);
      verify_claim(f, star, params);  // throws on failure
      ++passed;
    }
    report["instances"] = checked;
    report["passed"] = passed;
    report["alpha"] = params.alpha;
    ok = checked == passed && checked == count;
  } else if (kind == "family") {
    if (n < 2 || n > 256) throw std::runtime_error("exhaustive family check needs N <= 256");
    if (n % 2 != 0) throw std::runtime_error("2-to-1 families need even N");
    int passed = 0;
    for (int i = 0; i < count; ++i)
      if (check_family_promise(gen_claw_family(n, 2, FamilyKind::TwoToOne, false, seed + i)))
        ++passed;
    report["instances"] = count;
    report["passed"] = passed;
    ok = passed == count;
  } else {
    throw std::runtime_error("unknown validation kind: " + kind);
  }

  report["ok"] = ok;
  std::cout << report.dump(2) << "\n";
  std::cerr << (ok ? "validation passed\n" : "validation FAILED\n");
  return ok ? kExitSolved : kExitNotFound;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"meet-in-the-middle + simulated quantum search solvers"};
  app.require_subcommand(1);

  SolveOpts sopt;
  auto* solve = app.add_subcommand("solve", "solve one instance and print a JSON report");
  solve->add_option("kind", sopt.kind, "knapsack|ilp|cnf|exact1|claw")->required();
  solve->add_option("--file", sopt.file, "instance file (omit to generate from the seed)");
  solve->add_option("--n", sopt.gen_n, "generator: variable count / log2 domain");
  solve->add_option("--d", sopt.gen_d, "generator: row / function count");
  solve->add_option("--density", sopt.density, "cnf clause density c (default m/n)");
  solve->add_flag("--plant,!--no-plant", sopt.plant, "generator: plant a solution (default on)");
  solve->add_option("--seed", sopt.seed, "master seed");
  solve->add_option("--retries", sopt.retries, "search retries")->default_val(5);
  solve->add_flag("--verify", sopt.verify, "cross-check against the brute oracle (n <= 20)");
  solve->add_option("--subset-size", sopt.subset_size, "claw: classical subset size s");
  solve->add_option("--alpha-override", sopt.alpha_override, "cnf: expert alpha override");
  solve->add_option("--family", sopt.family, "claw family: sym|pair")->default_val("sym");
  solve->add_flag("--timing", sopt.timing, "report wall time (breaks byte-determinism)");

  std::string bproblem, bout;
  std::vector<int> bsizes;
  int btrials = 20;
  uint64_t bseed = 1;
  bool bbaseline = true, btiming = false;
  auto* bench = app.add_subcommand("bench", "scaling benchmark; writes CSV + JSON summary");
  bench->add_option("problem", bproblem, "ilp|symclaw|claw|cnf")->required();
  bench->add_option("--sizes", bsizes, "comma-separated size list")->required()->delimiter(',');
  bench->add_option("--trials", btrials, "trials per size");
  bench->add_option("--seed", bseed, "master seed");
  bench->add_option("--out", bout, "output path prefix (<out>.csv, <out>.json)");
  bench->add_flag("--baseline,!--no-baseline", bbaseline, "also run the naive baseline (default on)");
  bench->add_flag("--timing", btiming, "record wall times in the CSV");

  std::string vkind;
  int vn = 6, vcount = 100;
  double vdensity = 1.0;
  uint64_t vseed = 1;
  auto* validate = app.add_subcommand("validate", "promise / reduction validation suites");
  validate->add_option("kind", vkind, "claw|cnf-claim|family")->required();
  validate->add_option("--n", vn, "instance size (claw: n <= 8; family: N <= 256)");
  validate->add_option("--density", vdensity, "cnf clause density");
  validate->add_option("--count", vcount, "instances to check");
  validate->add_option("--seed", vseed, "master seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return run_solve(sopt);
    if (bench->parsed()) return run_bench(bproblem, bsizes, btrials, bseed, bout, bbaseline, btiming);
    return run_validate(vkind, vn, vdensity, vcount, vseed);
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}
