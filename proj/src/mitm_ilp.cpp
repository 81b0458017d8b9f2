#include "qmitm/mitm_ilp.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <stdexcept>

#include "qmitm/qsearch.hpp"

namespace qmitm {

namespace {

constexpr int kEnumGuard = 24;  // memory/time guard on 2^k enumerations

// Gray-code-free direct evaluation is fine at these sizes: row sums for an
// index are accumulated bit by bit.
std::vector<int64_t> row_sums(const IlpInstance& inst, const std::vector<int>& vars,
                              uint64_t index) {
  std::vector<int64_t> z(inst.d, 0);
  for (size_t j = 0; j < vars.size(); ++j)
    if ((index >> j) & 1)
      for (int i = 0; i < inst.d; ++i) z[i] += inst.a[i][vars[j]];
  return z;
}

std::vector<int> a_vars(const SplitPlan& plan) {
  std::vector<int> v(plan.a_size);
  for (int j = 0; j < plan.a_size; ++j) v[j] = j;
  return v;
}

std::vector<int> b_vars(const SplitPlan& plan) {
  std::vector<int> v(plan.b_size);
  for (int j = 0; j < plan.b_size; ++j) v[j] = plan.a_size + j;
  return v;
}

// Expand each equality row into (row <= b) and (-row <= -b) for the range
// tree path; inequality rows pass through.
std::vector<int64_t> expand_tuple(const IlpInstance& inst, const std::vector<int64_t>& z) {
  std::vector<int64_t> out;
  for (int i = 0; i < inst.d; ++i) {
    out.push_back(z[i]);
    if (inst.is_equality[i]) out.push_back(-z[i]);
  }
  return out;
}

}  // namespace

SplitPlan split_variables(int n) {
  if (n < 3) throw std::invalid_argument("split requires n >= 3");
  SplitPlan p;
  p.n = n;
  p.a_size = n / 3;
  p.b_size = n - p.a_size;
  return p;
}

std::vector<std::pair<std::vector<int64_t>, uint32_t>> enumerate_partial_tuples(
    const IlpInstance& inst, const SplitPlan& plan) {
  if (plan.n != inst.n) throw std::invalid_argument("plan/instance mismatch");
  const auto vars = a_vars(plan);
  const uint64_t count = uint64_t{1} << plan.a_size;
  std::vector<std::pair<std::vector<int64_t>, uint32_t>> out;
  out.reserve(count);
  for (uint64_t idx = 0; idx < count; ++idx)
    out.emplace_back(row_sums(inst, vars, idx), static_cast<uint32_t>(idx));
  return out;
}

PreprocessedIlp preprocess(const IlpInstance& inst, const SplitPlan& plan) {
  if (plan.a_size > kEnumGuard) throw std::invalid_argument("|A| exceeds enumeration guard");
  PreprocessedIlp prep;
  prep.plan = plan;
  prep.build_points = uint64_t{1} << plan.a_size;
  auto tuples = enumerate_partial_tuples(inst, plan);

  if (inst.all_equalities()) {
    prep.equality_path = true;
    std::sort(tuples.begin(), tuples.end());  // ties resolved by payload: smallest index wins
    prep.table.reserve(tuples.size());
    for (auto& t : tuples)
      if (prep.table.empty() || prep.table.back().first != t.first)
        prep.table.push_back(std::move(t));
    return prep;
  }

  std::vector<RangePoint> pts;
  pts.reserve(tuples.size());
  for (auto& t : tuples)
    pts.push_back({expand_tuple(inst, t.first), t.second});
  const int dims = static_cast<int>(pts[0].coords.size());
  prep.tree = RangeTree::build(std::move(pts), dims);
  return prep;
}

std::optional<uint32_t> oracle_f(uint64_t u, const PreprocessedIlp& prep,
                                 const IlpInstance& inst) {
  const auto vars = b_vars(prep.plan);
  auto z = row_sums(inst, vars, u);
  std::vector<int64_t> target(inst.d);
  for (int i = 0; i < inst.d; ++i) target[i] = inst.b[i] - z[i];

  if (prep.equality_path) {
    auto it = std::lower_bound(prep.table.begin(), prep.table.end(), target,
                               [](const auto& e, const std::vector<int64_t>& key) {
                                 return e.first < key;
                               });
    if (it == prep.table.end() || it->first != target) return std::nullopt;
    return it->second;
  }

  auto hit = prep.tree.query_dominated(expand_tuple(inst, target));
  if (!hit) return std::nullopt;
  return static_cast<uint32_t>(hit->payload);
}

Assignment combine_split(const SplitPlan& plan, uint64_t a_index, uint64_t b_index) {
  std::vector<uint8_t> bits(plan.n);
  for (int j = 0; j < plan.a_size; ++j) bits[j] = (a_index >> j) & 1;
  for (int j = 0; j < plan.b_size; ++j) bits[plan.a_size + j] = (b_index >> j) & 1;
  return Assignment(std::move(bits));
}

std::optional<Assignment> solve_ilp(const IlpInstance& inst, uint64_t seed, int retries,
                                    SolveStats* stats) {
  const auto t0 = std::chrono::steady_clock::now();
  const SplitPlan plan = split_variables(inst.n);
  if (plan.b_size > kEnumGuard) throw std::invalid_argument("|B| exceeds enumeration guard");
  auto prep = preprocess(inst, plan);

  const uint64_t domain = uint64_t{1} << plan.b_size;
  auto summary = enumerate_marked(
      [&](uint64_t u) { return oracle_f(u, prep, inst).has_value(); }, domain);

  std::optional<Assignment> result;
  int attempt = 0;
  uint64_t quantum = 0;
  for (; attempt <= retries; ++attempt) {
    auto outcome = bbht_search(summary, seed + attempt);
    quantum += outcome.quantum_queries;
    if (outcome.found) {
      auto witness = oracle_f(*outcome.found, prep, inst);
      assert(witness);
      Assignment full = combine_split(plan, *witness, *outcome.found);
      if (!eval_ilp(inst, full)) throw std::logic_error("recombined assignment not feasible");
      result = std::move(full);
      break;
    }
  }

  if (stats) {
    stats->quantum_queries = quantum;
    stats->classical_setup_evals = summary.classical_setup_evals;
    stats->tree_visits = prep.equality_path ? 0 : prep.tree.visit_count();
    stats->preprocess_points = prep.build_points;
    stats->retries_used = std::min(attempt, retries);
    stats->wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  }
  return result;
}

std::optional<OptimizeResult> solve_group_problem(const IlpInstance& inst,
                                                  const std::vector<int64_t>& objective,
                                                  Sense sense, uint64_t seed, int retries,
                                                  SolveStats* stats) {
  if (!inst.all_equalities()) throw std::invalid_argument("group problem requires equality rows");
  const auto t0 = std::chrono::steady_clock::now();
  const SplitPlan plan = split_variables(inst.n);
  if (plan.b_size > kEnumGuard) throw std::invalid_argument("|B| exceeds enumeration guard");

  // The bisection threshold row is w.x <= tau with w fixed by the sense, so
  // the per-key best witness (minimal w-partial-sum) can be built once.
  std::vector<int64_t> w(objective);
  if (sense == Sense::Maximize)
    for (auto& c : w) c = -c;

  auto tuples = enumerate_partial_tuples(inst, plan);
  auto w_partial = [&](const std::vector<int>& vars, uint64_t idx) {
    int64_t s = 0;
    for (size_t j = 0; j < vars.size(); ++j)
      if ((idx >> j) & 1) s += w[vars[j]];
    return s;
  };
  const auto va = a_vars(plan);
  const auto vb = b_vars(plan);

  struct Entry {
    std::vector<int64_t> key;
    int64_t best_w;
    uint32_t index;
  };
  std::vector<Entry> table;
  table.reserve(tuples.size());
  for (auto& t : tuples)
    table.push_back({std::move(t.first), w_partial(va, t.second), t.second});
  std::sort(table.begin(), table.end(), [](const Entry& l, const Entry& r) {
    if (l.key != r.key) return l.key < r.key;
    if (l.best_w != r.best_w) return l.best_w < r.best_w;
    return l.index < r.index;
  });
  table.erase(std::unique(table.begin(), table.end(),
                          [](const Entry& l, const Entry& r) { return l.key == r.key; }),
              table.end());

  uint64_t quantum = 0, setup = 0;
  int retries_used = 0;

  // Feasibility procedure handed to the bisection: the incoming instance is
  // the group system plus one appended threshold row (w, tau).
  FeasibilitySolver solve = [&](const IlpInstance& with_threshold) -> std::optional<Assignment> {
    const int64_t tau = with_threshold.b.back();
    const uint64_t domain = uint64_t{1} << plan.b_size;
    auto lookup = [&](uint64_t u) -> const Entry* {
      auto z = row_sums(inst, vb, u);
      std::vector<int64_t> target(inst.d);
      for (int i = 0; i < inst.d; ++i) target[i] = inst.b[i] - z[i];
      auto it = std::lower_bound(table.begin(), table.end(), target,
                                 [](const Entry& e, const std::vector<int64_t>& k) {
                                   return e.key < k;
                                 });
      if (it == table.end() || it->key != target) return nullptr;
      return &*it;
    };
    auto summary = enumerate_marked(
        [&](uint64_t u) {
          const Entry* e = lookup(u);
          return e && e->best_w + w_partial(vb, u) <= tau;
        },
        domain);
    setup += summary.classical_setup_evals;
    for (int attempt = 0; attempt <= retries; ++attempt) {
      auto outcome = bbht_search(summary, seed + attempt);
      quantum += outcome.quantum_queries;
      if (outcome.found) {
        retries_used = std::max(retries_used, attempt);
        const Entry* e = lookup(*outcome.found);
        assert(e);
        Assignment full = combine_split(plan, e->index, *outcome.found);
        if (!eval_ilp(with_threshold, full))
          throw std::logic_error("group witness fails verification");
        return full;
      }
    }
    return std::nullopt;
  };

  auto result = optimize_by_bisection(inst, objective, sense, solve);
  if (stats) {
    stats->quantum_queries = quantum;
    stats->classical_setup_evals = setup;
    stats->preprocess_points = uint64_t{1} << plan.a_size;
    stats->retries_used = retries_used;
    stats->wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  }
  return result;
}

}  // namespace qmitm
