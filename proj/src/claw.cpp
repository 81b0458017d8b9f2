#include "qmitm/claw.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_set>

#include "qmitm/qsearch.hpp"

namespace qmitm {

namespace {

// bits of x at positions where mask is 1, packed low
uint64_t project(uint64_t x, uint64_t mask, int n) {
  uint64_t out = 0;
  int k = 0;
  for (int i = 0; i < n; ++i)
    if ((mask >> i) & 1) {
      out |= ((x >> i) & 1) << k;
      ++k;
    }
  return out;
}

}  // namespace

SymmetricClawOracle knapsack_claw(std::vector<int64_t> a, int64_t target) {
  const int n = static_cast<int>(a.size());
  if (n < 1 || n > 63) throw std::invalid_argument("need 1 <= n <= 63");
  auto fn = [a = std::move(a), target, n](uint64_t x, uint64_t y) {
    int64_t p1 = 0, p2 = 0;
    for (int i = 0; i < n; ++i)
      if ((x >> i) & 1) {
        if ((y >> i) & 1)
          p1 += a[i];
        else
          p2 += a[i];
      }
    return std::make_pair(p1, target - p2);
  };
  return SymmetricClawOracle(n, std::move(fn));
}

PromiseReport validate_promise(const SymmetricClawOracle& oracle) {
  const int n = oracle.n();
  if (n > 8) throw std::invalid_argument("exhaustive validation limited to n <= 8");
  const uint64_t total = uint64_t{1} << n;
  PromiseReport report;
  auto note = [&](const std::string& s) {
    if (report.counterexamples.size() < 8) report.counterexamples.push_back(s);
  };

  // condition 1: claw at x for some y implies claw for every y
  for (uint64_t x = 0; x < total; ++x) {
    uint64_t claws = 0;
    for (uint64_t y = 0; y < total; ++y) {
      auto [p1, p2] = oracle.peek(x, y);
      if (p1 == p2) ++claws;
    }
    if (claws != 0 && claws != total) {
      ++report.condition1_violations;
      note("condition 1 at x=" + std::to_string(x) + " (" + std::to_string(claws) + "/" +
           std::to_string(total) + " claw y's)");
    }
  }

  // condition 2: P1 depends only on x|_y, P2 only on x|_~y
  for (uint64_t y = 0; y < total; ++y) {
    std::map<uint64_t, int64_t> p1_by_proj, p2_by_proj;
    for (uint64_t x = 0; x < total; ++x) {
      auto [p1, p2] = oracle.peek(x, y);
      const uint64_t proj1 = project(x, y, n);
      const uint64_t proj2 = project(x, ~y, n);
      if (auto it = p1_by_proj.find(proj1); it == p1_by_proj.end()) {
        p1_by_proj.emplace(proj1, p1);
      } else if (it->second != p1) {
        ++report.condition2_violations;
        note("condition 2 (P1) at y=" + std::to_string(y) + ", x=" + std::to_string(x));
      }
      if (auto it = p2_by_proj.find(proj2); it == p2_by_proj.end()) {
        p2_by_proj.emplace(proj2, p2);
      } else if (it->second != p2) {
        ++report.condition2_violations;
        note("condition 2 (P2) at y=" + std::to_string(y) + ", x=" + std::to_string(x));
      }
    }
  }
  return report;
}

std::optional<uint64_t> solve_symmetric_claw(const SymmetricClawOracle& oracle, uint64_t seed,
                                             int retries, ClawStats* stats) {
  const int n = oracle.n();
  if (n < 3) throw std::invalid_argument("need n >= 3");
  const int n_a = n / 3;
  const int n_b = n - n_a;
  const uint64_t y = (uint64_t{1} << n_a) - 1;

  // preprocessing: sorted (P1 value, A-part) pairs, 2^(n/3) counted queries
  std::vector<std::pair<int64_t, uint64_t>> sorted;
  sorted.reserve(uint64_t{1} << n_a);
  for (uint64_t a = 0; a < (uint64_t{1} << n_a); ++a)
    sorted.emplace_back(oracle.evaluate(a, y).first, a);
  std::sort(sorted.begin(), sorted.end());

  const uint64_t domain = uint64_t{1} << n_b;
  auto p2_of = [&](uint64_t b) { return oracle.peek(b << n_a, y).second; };
  auto summary = enumerate_marked(
      [&](uint64_t b) {
        return std::binary_search(
            sorted.begin(), sorted.end(), std::make_pair(p2_of(b), uint64_t{0}),
            [](const auto& l, const auto& r) { return l.first < r.first; });
      },
      domain);

  ClawStats local;
  local.sort_queries = uint64_t{1} << n_a;
  local.setup_evals = summary.classical_setup_evals;

  std::optional<uint64_t> result;
  for (int attempt = 0; attempt <= retries; ++attempt) {
    auto outcome = bbht_search(summary, seed + attempt);
    local.quantum_queries += outcome.quantum_queries;
    if (outcome.found) {
      local.retries_used = attempt;
      const int64_t p2 = p2_of(*outcome.found);
      auto it = std::lower_bound(sorted.begin(), sorted.end(), std::make_pair(p2, uint64_t{0}));
      assert(it != sorted.end() && it->first == p2);
      const uint64_t full = it->second | (*outcome.found << n_a);
      auto [v1, v2] = oracle.evaluate(full, y);  // one verification query
      if (v1 != v2) throw std::logic_error("recombined claw fails verification");
      result = full;
      break;
    }
  }
  oracle.charge(local.quantum_queries);
  local.total_queries = oracle.query_count();
  if (stats) *stats = local;
  return result;
}

FunctionFamilyOracle::FunctionFamilyOracle(std::vector<std::vector<int64_t>> f,
                                           std::vector<std::vector<int64_t>> g, Promise promise)
    : f_(std::move(f)), g_(std::move(g)), promise_(promise) {
  if (f_.empty()) throw std::invalid_argument("empty family");
  const size_t n = f_[0].size();
  if (n == 0) throw std::invalid_argument("empty domain");
  for (const auto& t : f_)
    if (t.size() != n) throw std::invalid_argument("ragged family");
  if (!g_.empty()) {
    if (g_.size() != f_.size()) throw std::invalid_argument("f/g size mismatch");
    for (const auto& t : g_)
      if (t.size() != n) throw std::invalid_argument("ragged family");
  }
  counts_.assign(f_.size(), 0);
}

uint64_t FunctionFamilyOracle::total_query_count() const {
  uint64_t total = charged_;
  for (uint64_t c : counts_) total += c;
  return total;
}

namespace {

std::vector<int64_t> tuple_at(const std::vector<std::vector<int64_t>>& tables, uint64_t x) {
  std::vector<int64_t> t(tables.size());
  for (size_t i = 0; i < tables.size(); ++i) t[i] = tables[i][x];
  return t;
}

// s distinct samples from [n], `forced` always included when sentinel off
std::vector<uint64_t> sample_subset(SplitMix64& rng, uint64_t n, uint64_t s,
                                    std::optional<uint64_t> forced) {
  std::unordered_set<uint64_t> chosen;
  std::vector<uint64_t> out;
  if (forced) {
    chosen.insert(*forced);
    out.push_back(*forced);
  }
  while (out.size() < s) {
    const uint64_t v = rng.next_below(n);
    if (chosen.insert(v).second) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::optional<PairClawResult> solve_simultaneous_claw(const FunctionFamilyOracle& fam,
                                                      uint64_t seed, uint64_t subset_size,
                                                      ClawStats* stats) {
  if (!fam.has_g()) throw std::invalid_argument("pair claw requires g functions");
  const uint64_t n = fam.domain();
  const int d = fam.d();
  const uint64_t s =
      subset_size ? std::min(subset_size, n)
                  : static_cast<uint64_t>(std::ceil(std::sqrt(static_cast<double>(n))));

  // setup pass (simulation only): the claw-participating x's
  std::map<std::vector<int64_t>, std::vector<uint64_t>> g_by_tuple;
  for (uint64_t yv = 0; yv < n; ++yv) g_by_tuple[tuple_at(fam.g_tables(), yv)].push_back(yv);
  std::vector<uint64_t> claw_x;
  for (uint64_t xv = 0; xv < n; ++xv)
    if (g_by_tuple.count(tuple_at(fam.f_tables(), xv))) claw_x.push_back(xv);

  ClawStats local;
  local.setup_evals = 2 * static_cast<uint64_t>(d) * n;
  local.sort_queries = static_cast<uint64_t>(d) * s;
  const uint64_t inner_grover =
      static_cast<uint64_t>(std::floor((M_PI / 4.0) * std::sqrt(static_cast<double>(n)))) + 1;
  const uint64_t inner_cost = static_cast<uint64_t>(d) * (s + inner_grover);

  // inner success = the claw's x landed in the sampled subset
  double p = 0.0;
  if (!claw_x.empty()) {
    double miss = 1.0;
    for (uint64_t j = 0; j < s && j < n; ++j) {
      const double miss_num = static_cast<double>(n - claw_x.size()) - static_cast<double>(j);
      if (miss_num <= 0.0) {
        miss = 0.0;  // more claw points than non-subset slots: a hit is certain
        break;
      }
      miss *= miss_num / static_cast<double>(n - j);
    }
    p = 1.0 - miss;
  }

  std::optional<PairClawResult> result;
  auto sampler = [&](SplitMix64& rng) -> uint64_t {
    const uint64_t x_star = claw_x[rng.next_below(claw_x.size())];
    auto subset = sample_subset(rng, n, s, x_star);
    std::vector<uint64_t> marked;
    std::map<std::vector<int64_t>, uint64_t> subset_tuples;  // tuple -> smallest x
    for (uint64_t xv : subset) {
      auto t = tuple_at(fam.f_tables(), xv);
      auto [it, fresh] = subset_tuples.emplace(std::move(t), xv);
      if (!fresh && xv < it->second) it->second = xv;
    }
    for (const auto& [tuple, ys] : g_by_tuple)
      if (subset_tuples.count(tuple)) marked.insert(marked.end(), ys.begin(), ys.end());
    const uint64_t yv = marked[rng.next_below(marked.size())];
    const uint64_t xv = subset_tuples.at(tuple_at(fam.g_tables(), yv));
    return xv * n + yv;
  };

  const double p_min = static_cast<double>(s) / static_cast<double>(n);
  auto amp = amplitude_amplify(p, inner_cost, sampler, seed, p_min);
  fam.charge(amp.total_queries);
  local.quantum_queries = amp.total_queries;
  local.outer_rounds = amp.outer_rounds;
  local.total_queries = amp.total_queries;

  if (amp.success) {
    const uint64_t xv = amp.witness / n;
    const uint64_t yv = amp.witness % n;
    for (int i = 0; i < d; ++i)  // verification, 2d counted queries
      if (fam.eval_f(i, xv) != fam.eval_g(i, yv))
        throw std::logic_error("claw witness fails verification");
    local.total_queries += 2 * static_cast<uint64_t>(d);
    result = PairClawResult{xv, yv};
  }
  if (stats) *stats = local;
  return result;
}

std::optional<PairClawResult> solve_simultaneous_collision(const FunctionFamilyOracle& fam,
                                                           uint64_t subset_size, uint64_t seed,
                                                           ClawStats* stats) {
  const uint64_t n = fam.domain();
  const int d = fam.d();
  const uint64_t s =
      subset_size ? std::min(subset_size, n)
                  : static_cast<uint64_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  SplitMix64 rng(seed);
  ClawStats local;

  auto subset = sample_subset(rng, n, s, std::nullopt);
  std::map<std::vector<int64_t>, uint64_t> by_tuple;  // tuple -> smallest member
  std::optional<PairClawResult> internal;
  for (uint64_t xv : subset) {
    std::vector<int64_t> t(d);
    for (int i = 0; i < d; ++i) t[i] = fam.eval_f(i, xv);  // d*s counted queries
    auto [it, fresh] = by_tuple.emplace(std::move(t), xv);
    if (!fresh && !internal)
      internal = PairClawResult{std::min(it->second, xv), std::max(it->second, xv)};
  }
  local.sort_queries = static_cast<uint64_t>(d) * s;
  if (internal) {
    local.total_queries = local.sort_queries;
    if (stats) *stats = local;
    return internal;
  }

  auto summary = enumerate_marked(
      [&](uint64_t yv) {
        if (std::binary_search(subset.begin(), subset.end(), yv)) return false;
        return by_tuple.count(tuple_at(fam.f_tables(), yv)) > 0;
      },
      n);
  local.setup_evals = static_cast<uint64_t>(d) * summary.classical_setup_evals;

  std::optional<PairClawResult> result;
  constexpr int kAttempts = 3;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    auto outcome = bbht_search(summary, seed + 1 + attempt);
    local.quantum_queries += static_cast<uint64_t>(d) * outcome.quantum_queries;
    if (outcome.found) {
      local.retries_used = attempt;
      std::vector<int64_t> t(d);
      for (int i = 0; i < d; ++i) t[i] = fam.eval_f(i, *outcome.found);  // verification
      auto it = by_tuple.find(t);
      if (it == by_tuple.end()) throw std::logic_error("collision witness fails verification");
      result = PairClawResult{std::min(it->second, *outcome.found),
                              std::max(it->second, *outcome.found)};
      break;
    }
  }
  fam.charge(local.quantum_queries);
  local.total_queries = local.sort_queries + local.quantum_queries +
                        (result ? static_cast<uint64_t>(d) : 0);
  if (stats) *stats = local;
  return result;
}

std::optional<uint64_t> solve_samepoint_claw(const FunctionFamilyOracle& fam, uint64_t seed,
                                             ClawStats* stats) {
  if (!fam.has_g()) throw std::invalid_argument("same-point claw requires g functions");
  const uint64_t n = fam.domain();
  const int d = fam.d();
  auto summary = enumerate_marked(
      [&](uint64_t xv) {
        for (int i = 0; i < d; ++i)
          if (fam.peek_f(i, xv) != fam.peek_g(i, xv)) return false;
        return true;
      },
      n);
  ClawStats local;
  local.setup_evals = 2 * static_cast<uint64_t>(d) * n;
  std::optional<uint64_t> result;
  auto outcome = bbht_search(summary, seed);
  local.quantum_queries = static_cast<uint64_t>(d) * outcome.quantum_queries;
  fam.charge(local.quantum_queries);
  if (outcome.found) {
    for (int i = 0; i < d; ++i)
      if (fam.eval_f(i, *outcome.found) != fam.eval_g(i, *outcome.found))
        throw std::logic_error("same-point witness fails verification");
    result = outcome.found;
  }
  local.total_queries = local.quantum_queries + (result ? 2 * static_cast<uint64_t>(d) : 0);
  if (stats) *stats = local;
  return result;
}

}  // namespace qmitm
