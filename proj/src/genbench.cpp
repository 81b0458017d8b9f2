#include "qmitm/genbench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "json.hpp"
#include "qmitm/brute.hpp"
#include "qmitm/cnfsat.hpp"
#include "qmitm/mitm_ilp.hpp"
#include "qmitm/qsearch.hpp"

namespace qmitm {

namespace {

std::vector<int> shuffled_range(SplitMix64& rng, int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  for (int i = n - 1; i > 0; --i)
    std::swap(v[i], v[rng.next_below(static_cast<uint64_t>(i) + 1)]);
  return v;
}

uint64_t trial_seed(uint64_t seed, int size, int trial) {
  SplitMix64 rng(seed ^ (static_cast<uint64_t>(size) * 0x100000001b3ULL) ^
                 (static_cast<uint64_t>(trial) * 0x9e3779b97f4a7c15ULL));
  return rng.next();
}

}  // namespace

KnapsackInstance gen_knapsack(int n, bool plant, uint64_t seed) {
  if (n < 1 || n > 30) throw std::invalid_argument("need 1 <= n <= 30");
  SplitMix64 rng(seed);
  std::vector<int64_t> coeffs(n);
  for (auto& c : coeffs) c = 1 + static_cast<int64_t>(rng.next_below(1000));
  int64_t target;
  if (plant) {
    uint64_t subset = 0;
    while (subset == 0) subset = rng.next() & ((uint64_t{1} << n) - 1);
    target = 0;
    for (int j = 0; j < n; ++j)
      if ((subset >> j) & 1) target += coeffs[j];
  } else {
    target = std::accumulate(coeffs.begin(), coeffs.end(), int64_t{0}) + 1;
  }
  return KnapsackInstance(std::move(coeffs), target);
}

IlpInstance gen_ilp(int n, int d, bool plant, uint64_t seed) {
  if (n < 1 || d < 1) throw std::invalid_argument("need n, d >= 1");
  SplitMix64 rng(seed);
  std::vector<std::vector<int64_t>> a(d, std::vector<int64_t>(n));
  for (auto& row : a)
    for (auto& v : row) v = static_cast<int64_t>(rng.next_below(101)) - 50;
  std::vector<uint8_t> star(n);
  for (auto& b : star) b = rng.next() & 1;
  std::vector<int64_t> b(d);
  for (int i = 0; i < d; ++i) {
    int64_t planted_sum = 0, abs_sum = 0;
    for (int j = 0; j < n; ++j) {
      if (star[j]) planted_sum += a[i][j];
      abs_sum += std::abs(a[i][j]);
    }
    if (plant) {
      b[i] = planted_sum;
    } else {
      const int64_t span = std::max<int64_t>(1, abs_sum / 2);
      b[i] = static_cast<int64_t>(rng.next_below(2 * span + 1)) - span;
    }
  }
  return IlpInstance(std::move(a), std::move(b));
}

PlantedIlp gen_ilp_unique(int n, uint64_t seed) {
  if (n < 3 || n > 35) throw std::invalid_argument("need 3 <= n <= 35");
  SplitMix64 rng(seed);
  const auto perm = shuffled_range(rng, n);
  std::vector<int64_t> w(n), neg(n);
  for (int j = 0; j < n; ++j) w[j] = int64_t{1} << perm[j];
  std::vector<uint8_t> star(n);
  bool any = false;
  while (!any) {
    for (auto& bit : star) {
      bit = rng.next() & 1;
      any |= bit != 0;
    }
  }
  int64_t target = 0;
  for (int j = 0; j < n; ++j) {
    neg[j] = -w[j];
    if (star[j]) target += w[j];
  }
  PlantedIlp out{IlpInstance({w, neg}, {target, -target}), Assignment(star)};
  return out;
}

CnfFormula gen_cnf(int n, double c, bool plant, uint64_t seed) {
  if (n < 1) throw std::invalid_argument("need n >= 1");
  const int m = std::max(1, static_cast<int>(std::floor(c * n)));
  if (m > 64) throw std::invalid_argument("generator limited to m <= 64");
  SplitMix64 rng(seed);
  std::vector<uint8_t> star(n);
  for (auto& b : star) b = rng.next() & 1;
  std::vector<std::vector<int>> clauses;
  clauses.reserve(m);
  for (int j = 0; j < m; ++j) {
    const int width = 1 + static_cast<int>(rng.next_below(std::min(n, 4)));
    std::vector<int> vars;
    while (static_cast<int>(vars.size()) < width) {
      const int v = static_cast<int>(rng.next_below(n));
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    }
    std::vector<int> clause;
    for (int v : vars) clause.push_back((rng.next() & 1) ? v + 1 : -(v + 1));
    if (plant) {
      bool sat = false;
      for (int lit : clause)
        if ((lit > 0) == (star[std::abs(lit) - 1] != 0)) sat = true;
      if (!sat) {
        const size_t pos = rng.next_below(clause.size());
        const int v = std::abs(clause[pos]);
        clause[pos] = star[v - 1] ? v : -v;
      }
    }
    clauses.push_back(std::move(clause));
  }
  return CnfFormula(n, std::move(clauses));
}

PlantedClaw gen_symmetric_claw(int n, uint64_t seed) {
  if (n < 3 || n > 35) throw std::invalid_argument("need 3 <= n <= 35");
  SplitMix64 rng(seed);
  const auto perm = shuffled_range(rng, n);
  PlantedClaw out;
  out.coefficients.resize(n);
  for (int j = 0; j < n; ++j) out.coefficients[j] = int64_t{1} << perm[j];
  while (out.solution == 0) out.solution = rng.next() & ((uint64_t{1} << n) - 1);
  for (int j = 0; j < n; ++j)
    if ((out.solution >> j) & 1) out.target += out.coefficients[j];
  return out;
}

FunctionFamilyOracle gen_claw_family(uint64_t n, int d, FamilyKind kind, bool plant,
                                     uint64_t seed) {
  if (n < 2 || d < 1) throw std::invalid_argument("need N >= 2 and d >= 1");
  SplitMix64 rng(seed);
  const int ni = static_cast<int>(n);

  if (kind == FamilyKind::PairClaw) {
    std::vector<std::vector<int64_t>> f(d), g(d);
    for (int i = 0; i < d; ++i) {
      const auto pf = shuffled_range(rng, ni);
      const auto pg = shuffled_range(rng, ni);
      f[i].resize(n);
      g[i].resize(n);
      for (uint64_t x = 0; x < n; ++x) {
        f[i][x] = 2 * static_cast<int64_t>(pf[x]);      // even values
        g[i][x] = 2 * static_cast<int64_t>(pg[x]) + 1;  // odd values: no claw
      }
    }
    if (plant) {
      const uint64_t x_star = rng.next_below(n);
      const uint64_t y_star = rng.next_below(n);
      for (int i = 0; i < d; ++i) g[i][y_star] = f[i][x_star];
    }
    return FunctionFamilyOracle(std::move(f), std::move(g), FunctionFamilyOracle::Promise::None);
  }

  if (kind == FamilyKind::TwoToOne) {
    if (n % 2 != 0) throw std::invalid_argument("2-to-1 family needs even N");
    // one random matching shared by every function, so collisions align
    const auto order = shuffled_range(rng, ni);
    std::vector<int> pair_of(n);
    for (uint64_t p = 0; p < n / 2; ++p) {
      pair_of[order[2 * p]] = static_cast<int>(p);
      pair_of[order[2 * p + 1]] = static_cast<int>(p);
    }
    std::vector<std::vector<int64_t>> f(d);
    for (int i = 0; i < d; ++i) {
      const auto vals = shuffled_range(rng, ni / 2);
      f[i].resize(n);
      for (uint64_t x = 0; x < n; ++x) f[i][x] = vals[pair_of[x]];
    }
    return FunctionFamilyOracle(std::move(f), {}, FunctionFamilyOracle::Promise::TwoToOne);
  }

  std::vector<std::vector<int64_t>> f(d);
  for (int i = 0; i < d; ++i) {
    const auto vals = shuffled_range(rng, ni);
    f[i].assign(vals.begin(), vals.end());
  }
  return FunctionFamilyOracle(std::move(f), {}, FunctionFamilyOracle::Promise::OneToOne);
}

bool check_family_promise(const FunctionFamilyOracle& fam) {
  if (fam.domain() > 256) throw std::invalid_argument("exhaustive check limited to N <= 256");
  int expected = 0;
  switch (fam.promise()) {
    case FunctionFamilyOracle::Promise::OneToOne: expected = 1; break;
    case FunctionFamilyOracle::Promise::TwoToOne: expected = 2; break;
    case FunctionFamilyOracle::Promise::None: return true;
  }
  for (int i = 0; i < fam.d(); ++i) {
    std::map<int64_t, int> preimages;
    for (uint64_t x = 0; x < fam.domain(); ++x) ++preimages[fam.peek_f(i, x)];
    for (const auto& [value, count] : preimages) {
      (void)value;
      if (count != expected) return false;
    }
  }
  return true;
}

namespace {

ExponentFit fit_exponent(const std::vector<int>& sizes, const std::vector<double>& medians) {
  ExponentFit fit;
  if (sizes.size() < 2) return fit;
  const size_t k = sizes.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::vector<double> ys(k);
  for (size_t i = 0; i < k; ++i) {
    ys[i] = std::log2(std::max(1.0, medians[i]));
    sx += sizes[i];
    sy += ys[i];
    sxx += static_cast<double>(sizes[i]) * sizes[i];
    sxy += sizes[i] * ys[i];
  }
  const double denom = k * sxx - sx * sx;
  if (denom == 0) return fit;
  fit.beta = (k * sxy - sx * sy) / denom;
  const double intercept = (sy - fit.beta * sx) / k;
  double ss = 0;
  for (size_t i = 0; i < k; ++i) {
    const double e = ys[i] - (fit.beta * sizes[i] + intercept);
    ss += e * e;
  }
  fit.residual = std::sqrt(ss / k);
  fit.valid = true;
  return fit;
}

double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const size_t k = v.size();
  return k % 2 ? v[k / 2] : 0.5 * (v[k / 2 - 1] + v[k / 2]);
}

struct TrialResult {
  uint64_t queries = 0;
  uint64_t setup = 0;
  bool success = false;
};

// plain BBHT over the whole space with the known marked set
TrialResult naive_baseline(uint64_t domain, std::vector<uint64_t> marked, uint64_t seed) {
  MarkedSetSummary summary;
  summary.domain_size = domain;
  summary.marked = std::move(marked);
  TrialResult r;
  for (int attempt = 0; attempt <= 5; ++attempt) {
    auto outcome = bbht_search(summary, seed + attempt);
    r.queries += outcome.quantum_queries;
    if (outcome.found) {
      r.success = true;
      break;
    }
  }
  return r;
}

}  // namespace

ScalingReport run_scaling(const std::string& problem, const std::vector<int>& sizes, int trials,
                          uint64_t seed, bool with_baseline, bool timing) {
  ScalingReport report;
  report.problem = problem;
  report.sizes = sizes;
  report.trials = trials;

  std::vector<TrialRow> baseline_rows;
  for (int size : sizes) {
    std::vector<double> qs, bqs;
    for (int trial = 0; trial < trials; ++trial) {
      const uint64_t s = trial_seed(seed, size, trial);
      const auto t0 = std::chrono::steady_clock::now();
      TrialResult solver;
      TrialResult baseline;
      bool have_baseline = false;

      if (problem == "ilp") {
        auto planted = gen_ilp_unique(size, s);
        SolveStats stats;
        auto res = solve_ilp(planted.instance, s + 1, 5, &stats);
        solver = {stats.quantum_queries, stats.classical_setup_evals, res.has_value()};
        if (with_baseline) {
          baseline = naive_baseline(uint64_t{1} << size, {planted.solution.to_index()}, s + 2);
          have_baseline = true;
        }
      } else if (problem == "symclaw") {
        auto planted = gen_symmetric_claw(size, s);
        auto oracle = knapsack_claw(planted.coefficients, planted.target);
        ClawStats stats;
        auto res = solve_symmetric_claw(oracle, s + 1, 5, &stats);
        solver = {stats.total_queries, stats.setup_evals, res.has_value()};
        if (with_baseline) {
          baseline = naive_baseline(uint64_t{1} << size, {planted.solution}, s + 2);
          have_baseline = true;
        }
      } else if (problem == "claw") {
        const uint64_t domain = uint64_t{1} << size;
        auto fam = gen_claw_family(domain, 1, FamilyKind::PairClaw, true, s);
        ClawStats stats;
        auto res = solve_pair_claw(fam, 0, s + 1, &stats);
        solver = {stats.total_queries, stats.setup_evals, res.has_value()};
        if (with_baseline) {
          // naive search over all (x, y) pairs; hash-join the value tables
          std::map<int64_t, uint64_t> by_value;
          for (uint64_t x = 0; x < domain; ++x) by_value[fam.peek_f(0, x)] = x;
          std::vector<uint64_t> marked;
          for (uint64_t y = 0; y < domain; ++y) {
            auto it = by_value.find(fam.peek_g(0, y));
            if (it != by_value.end()) marked.push_back(it->second * domain + y);
          }
          std::sort(marked.begin(), marked.end());
          baseline = naive_baseline(domain * domain, std::move(marked), s + 2);
          have_baseline = true;
        }
      } else if (problem == "cnf") {
        auto f = gen_cnf(size, 1.0, true, s);
        CnfSolveStats stats;
        auto res = solve_cnf(f, 1.0, s + 1, 5, &stats);
        solver = {stats.quantum_queries, stats.classical_setup_evals, res.has_value()};
        if (with_baseline && size <= 24) {
          auto truth = brute_cnf(f);
          baseline = naive_baseline(uint64_t{1} << size, truth.witnesses, s + 2);
          have_baseline = true;
        }
      } else {
        throw std::invalid_argument("unknown problem: " + problem);
      }

      const double ms =
          timing
              ? std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count()
              : 0.0;
      report.rows.push_back({problem, size, s, solver.queries, solver.setup, solver.success, ms});
      qs.push_back(static_cast<double>(solver.queries));
      if (have_baseline) {
        baseline_rows.push_back({problem + "-baseline", size, s, baseline.queries, baseline.setup,
                                 baseline.success, 0.0});
        bqs.push_back(static_cast<double>(baseline.queries));
        report.baseline_ran = true;
      }
    }
    report.median_queries.push_back(median_of(qs));
    if (!bqs.empty()) report.median_baseline_queries.push_back(median_of(bqs));
  }

  report.rows.insert(report.rows.end(), baseline_rows.begin(), baseline_rows.end());
  report.solver_fit = fit_exponent(sizes, report.median_queries);
  if (report.baseline_ran && report.median_baseline_queries.size() == sizes.size())
    report.baseline_fit = fit_exponent(sizes, report.median_baseline_queries);
  return report;
}

void write_csv(std::ostream& out, const ScalingReport& report) {
  out << "problem,size,seed,queries,setup_evals,success,ms\n";
  for (const auto& r : report.rows)
    out << r.problem << ',' << r.size << ',' << r.seed << ',' << r.queries << ','
        << r.setup_evals << ',' << (r.success ? 1 : 0) << ',' << r.ms << '\n';
}

void write_json_summary(std::ostream& out, const ScalingReport& report) {
  nlohmann::json j;
  j["problem"] = report.problem;
  j["sizes"] = report.sizes;
  j["trials"] = report.trials;
  j["median_queries"] = report.median_queries;
  j["solver_beta"] = report.solver_fit.beta;
  j["solver_residual"] = report.solver_fit.residual;
  j["fit_valid"] = report.solver_fit.valid;
  if (!report.solver_fit.valid) j["note"] = "insufficient points for an exponent fit";
  if (report.baseline_ran) {
    j["median_baseline_queries"] = report.median_baseline_queries;
    j["baseline_beta"] = report.baseline_fit.beta;
    j["baseline_residual"] = report.baseline_fit.residual;
  }
  out << j.dump(2) << '\n';
}

}  // namespace qmitm
