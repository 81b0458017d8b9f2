#include "qmitm/cnfsat.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "qmitm/qsearch.hpp"

namespace qmitm {

namespace {

// per-variable clause masks: or-ing pos[v] (bit=1) or neg[v] (bit=0) over the
// assigned variables gives the satisfied-clause mask in O(#vars)
struct ClauseMasks {
  std::vector<uint64_t> pos, neg;

  explicit ClauseMasks(const CnfFormula& f) : pos(f.n, 0), neg(f.n, 0) {
    for (int j = 0; j < f.m; ++j)
      for (int lit : f.clauses[j]) {
        if (lit > 0)
          pos[lit - 1] |= uint64_t{1} << j;
        else
          neg[-lit - 1] |= uint64_t{1} << j;
      }
  }

  uint64_t satisfied(const std::vector<int>& vars, uint64_t bits) const {
    uint64_t mask = 0;
    for (size_t j = 0; j < vars.size(); ++j)
      mask |= ((bits >> j) & 1) ? pos[vars[j]] : neg[vars[j]];
    return mask;
  }
};

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r *= static_cast<double>(n - k + i) / i;
  return r;
}

}  // namespace

double entropy2(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

int AlphaParams::effective_k(int n) const { return std::min(k, n); }

int AlphaParams::budget(int n, int m) const {
  const int ke = effective_k(n);
  const int from_alpha = static_cast<int>(std::ceil(alpha * m - 1e-12));
  const int from_pigeonhole = static_cast<int>(std::ceil(static_cast<double>(m) / ke - 1e-12));
  return std::max(1, std::max(from_alpha, from_pigeonhole));
}

AlphaParams choose_alpha(double c) {
  if (c <= 0.0) throw std::invalid_argument("clause density must be positive");
  auto slack = [&](double a) { return (1.0 - a) / 2.0 - c * entropy2(a) - a; };
  // slack is positive near 0 and negative at 1/6 for every c >= ~0.3; for
  // smaller c the cap at 1/6 binds
  double lo = 1e-12, hi = 1.0 / 6.0 - 1e-12;
  AlphaParams p;
  p.c = c;
  if (slack(hi) >= 0.0) {
    p.alpha = hi;
  } else {
    for (int it = 0; it < 50; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (slack(mid) >= 0.0)
        lo = mid;
      else
        hi = mid;
      if (hi - lo < 1e-9) break;
    }
    p.alpha = lo;  // largest value verified feasible
  }
  p.k = static_cast<int>(std::ceil(1.0 / p.alpha - 1e-12));
  p.entropy = entropy2(p.alpha);
  return p;
}

std::vector<std::pair<int, int>> partition_blocks(int n, int k) {
  if (k < 1 || k > n) throw std::invalid_argument("need 1 <= k <= n");
  std::vector<std::pair<int, int>> blocks;
  int start = 0;
  for (int i = 0; i < k; ++i) {
    const int size = n / k + (i < n % k ? 1 : 0);
    blocks.emplace_back(start, start + size);
    start += size;
  }
  return blocks;
}

const std::pair<uint64_t, uint32_t>* CoverTables::find(int level, uint64_t key) const {
  if (level < 1 || level > static_cast<int>(levels.size())) return nullptr;
  const auto& t = levels[level - 1];
  auto it = std::lower_bound(t.begin(), t.end(), key,
                             [](const auto& e, uint64_t k) { return e.first < k; });
  if (it == t.end() || it->first != key) return nullptr;
  return &*it;
}

CoverTables build_tables(const CnfFormula& f, const std::vector<int>& block_vars, int budget,
                         TableStrategy strategy, uint64_t pair_cap) {
  if (f.m > 64) throw std::invalid_argument("table keys limited to m <= 64");
  if (block_vars.size() > 24) throw std::invalid_argument("block exceeds enumeration guard");
  if (budget < 1 || budget > f.m) throw std::invalid_argument("budget out of range");

  CoverTables tables;
  tables.m = f.m;
  tables.budget = budget;
  tables.block_vars = block_vars;
  tables.levels.resize(budget);

  const ClauseMasks masks(f);
  tables.pos_masks = masks.pos;
  tables.neg_masks = masks.neg;
  const uint64_t assignments = uint64_t{1} << block_vars.size();

  std::vector<uint64_t> covered(assignments);
  uint64_t expand_cost = 0;
  for (uint64_t b = 0; b < assignments; ++b) {
    covered[b] = masks.satisfied(block_vars, b);
    for (int l = 1; l <= std::min<int>(budget, std::popcount(covered[b])); ++l)
      expand_cost += static_cast<uint64_t>(binomial(std::popcount(covered[b]), l));
  }

  const bool pair_filter = strategy == TableStrategy::PairFilter ||
                           (strategy == TableStrategy::Auto && expand_cost > pair_cap);
  tables.used_pair_filter = pair_filter;

  std::vector<std::vector<std::pair<uint64_t, uint32_t>>> raw(budget);

  if (!pair_filter) {
    // enumerate b, then every submask u of its covered set with popcount in
    // [1, budget], by choosing set-bit combinations
    for (uint64_t b = 0; b < assignments; ++b) {
      std::vector<int> ones;
      for (int j = 0; j < f.m; ++j)
        if ((covered[b] >> j) & 1) ones.push_back(j);
      const int p = static_cast<int>(ones.size());
      for (int l = 1; l <= std::min(budget, p); ++l) {
        std::vector<int> pick(l);
        for (int i = 0; i < l; ++i) pick[i] = i;
        while (true) {
          uint64_t u = 0;
          for (int i : pick) u |= uint64_t{1} << ones[i];
          raw[l - 1].emplace_back(u, static_cast<uint32_t>(b));
          int i = l - 1;
          while (i >= 0 && pick[i] == p - l + i) --i;
          if (i < 0) break;
          ++pick[i];
          for (int j2 = i + 1; j2 < l; ++j2) pick[j2] = pick[j2 - 1] + 1;
        }
      }
    }
  } else {
    // enumerate u with popcount l directly, test each b for coverage
    for (int l = 1; l <= budget; ++l) {
      uint64_t u = (uint64_t{1} << l) - 1;
      const uint64_t limit = uint64_t{1} << f.m;
      while (u < limit) {
        for (uint64_t b = 0; b < assignments; ++b)
          if ((u & ~covered[b]) == 0) {
            raw[l - 1].emplace_back(u, static_cast<uint32_t>(b));
            break;  // first b in counting order is the witness
          }
        // next mask with the same popcount (Gosper)
        const uint64_t low = u & (~u + 1);
        const uint64_t ripple = u + low;
        u = ripple | (((u ^ ripple) >> 2) / low);
      }
    }
  }

  for (int l = 0; l < budget; ++l) {
    auto& level = raw[l];
    tables.build_pairs += level.size();
    std::stable_sort(level.begin(), level.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    auto& out = tables.levels[l];
    for (const auto& e : level)
      if (out.empty() || out.back().first != e.first) out.push_back(e);
  }
  return tables;
}

std::optional<uint32_t> cnf_oracle(uint64_t v_bits, const CoverTables& tables,
                                   const CnfFormula& f, const std::vector<int>& comp_vars) {
  uint64_t sat = 0;
  for (size_t j = 0; j < comp_vars.size(); ++j)
    sat |= ((v_bits >> j) & 1) ? tables.pos_masks[comp_vars[j]] : tables.neg_masks[comp_vars[j]];
  const uint64_t all = f.m == 64 ? ~uint64_t{0} : (uint64_t{1} << f.m) - 1;
  const uint64_t unsat = all & ~sat;
  const int l = std::popcount(unsat);
  if (l == 0) return 0;  // v alone satisfies F; any block assignment works
  if (l > tables.budget) return std::nullopt;
  const auto* hit = tables.find(l, unsat);
  if (!hit) return std::nullopt;
  return hit->second;
}

namespace {

Assignment combine_blocks(int n, const std::vector<int>& block_vars, uint32_t b_bits,
                          const std::vector<int>& comp_vars, uint64_t v_bits) {
  std::vector<uint8_t> bits(n);
  for (size_t j = 0; j < block_vars.size(); ++j) bits[block_vars[j]] = (b_bits >> j) & 1;
  for (size_t j = 0; j < comp_vars.size(); ++j) bits[comp_vars[j]] = (v_bits >> j) & 1;
  return Assignment(std::move(bits));
}

bool satisfies(const CnfFormula& f, const Assignment& x) {
  for (const auto& clause : f.clauses) {
    bool clause_sat = false;
    for (int lit : clause) {
      const bool val = x.bits[std::abs(lit) - 1];
      if ((lit > 0) == val) {
        clause_sat = true;
        break;
      }
    }
    if (!clause_sat) return false;
  }
  return true;
}

}  // namespace

std::optional<Assignment> solve_cnf(const CnfFormula& f, double c, uint64_t seed, int retries,
                                    CnfSolveStats* stats, std::optional<double> alpha_override) {
  const auto t0 = std::chrono::steady_clock::now();
  if (f.m > static_cast<int>(std::ceil(c * f.n)) )
    throw std::invalid_argument("formula exceeds declared clause density");
  AlphaParams params = choose_alpha(c);
  if (alpha_override) {
    params.alpha = *alpha_override;
    params.k = static_cast<int>(std::ceil(1.0 / params.alpha - 1e-12));
    params.entropy = entropy2(params.alpha);
  }
  const int k = params.effective_k(f.n);
  const int budget = params.budget(f.n, f.m);
  const auto blocks = partition_blocks(f.n, k);

  CnfSolveStats local;
  std::optional<Assignment> result;

  for (int i = 0; i < k && !result; ++i) {
    std::vector<int> block_vars, comp_vars;
    for (int v = 0; v < f.n; ++v)
      (v >= blocks[i].first && v < blocks[i].second ? block_vars : comp_vars).push_back(v);
    if (comp_vars.size() > 24) throw std::invalid_argument("complement exceeds enumeration guard");

    auto tables = build_tables(f, block_vars, budget);
    local.table_pairs += tables.build_pairs;
    uint64_t level_total = 0;
    for (const auto& lvl : tables.levels) level_total += lvl.size();
    local.per_block_table_sizes.push_back(level_total);
    local.predicted_build_cost +=
        binomial(f.m, budget) * static_cast<double>(uint64_t{1} << block_vars.size());

    const uint64_t domain = uint64_t{1} << comp_vars.size();
    auto summary = enumerate_marked(
        [&](uint64_t v) { return cnf_oracle(v, tables, f, comp_vars).has_value(); }, domain);
    local.classical_setup_evals += summary.classical_setup_evals;
    ++local.blocks_tried;

    for (int attempt = 0; attempt <= retries; ++attempt) {
      auto outcome = bbht_search(summary, seed + uint64_t(i) * (retries + 1) + attempt);
      local.quantum_queries += outcome.quantum_queries;
      if (outcome.found) {
        local.retries_used = std::max(local.retries_used, attempt);
        auto witness = cnf_oracle(*outcome.found, tables, f, comp_vars);
        assert(witness);
        Assignment full = combine_blocks(f.n, block_vars, *witness, comp_vars, *outcome.found);
        if (!satisfies(f, full)) throw std::logic_error("combined assignment fails verification");
        result = std::move(full);
        break;
      }
    }
  }

  local.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  if (stats) *stats = std::move(local);
  return result;
}

int verify_claim(const CnfFormula& f, const Assignment& a_star, const AlphaParams& params) {
  if (!satisfies(f, a_star)) throw std::invalid_argument("a_star does not satisfy the formula");
  const int k = params.effective_k(f.n);
  const int budget = params.budget(f.n, f.m);
  const auto blocks = partition_blocks(f.n, k);
  const ClauseMasks masks(f);
  for (int i = 0; i < k; ++i) {
    std::vector<int> comp_vars;
    uint64_t bits = 0;
    for (int v = 0; v < f.n; ++v)
      if (v < blocks[i].first || v >= blocks[i].second) {
        if (a_star.bits[v]) bits |= uint64_t{1} << comp_vars.size();
        comp_vars.push_back(v);
      }
    const int satisfied = std::popcount(masks.satisfied(comp_vars, bits));
    if (satisfied >= f.m - budget) return i;
  }
  throw std::logic_error("no qualifying block: pigeonhole claim violated");
}

}  // namespace qmitm
