#pragma once
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "qmitm/instances.hpp"

namespace qmitm {

// Block-fraction parameters for the clause-density constant c. alpha is the
// largest value below 1/6 with (1 - alpha)/2 >= c * H2(alpha) + alpha.
struct AlphaParams {
  double c = 0.0;
  double alpha = 0.0;
  int k = 0;            // ceil(1/alpha); callers cap at n for tiny formulas
  double entropy = 0.0; // H2(alpha)

  // Effective block count and unsatisfied-clause budget at a concrete (n, m).
  // The budget is ceil(alpha*m), raised to ceil(m/k_eff) when the block count
  // had to be capped at n so the pigeonhole argument still closes.
  int effective_k(int n) const;
  int budget(int n, int m) const;
};

double entropy2(double x);  // base-2 entropy, 0 at the endpoints
AlphaParams choose_alpha(double c);

// Contiguous near-equal blocks covering [0, n); sizes differ by at most 1.
std::vector<std::pair<int, int>> partition_blocks(int n, int k);  // [begin, end) per block

// Sorted tables T_l, l = popcount level: key = m-bit clause mask u, value =
// block assignment b (bit j = value of j-th block variable) satisfying every
// clause flagged in u. One witness per key, first b in counting order.
struct CoverTables {
  int m = 0;
  int budget = 0;
  std::vector<int> block_vars;                                    // sorted, 0-based
  std::vector<std::vector<std::pair<uint64_t, uint32_t>>> levels; // levels[l-1], sorted by key
  uint64_t build_pairs = 0;                                       // inserted (u, b) pairs
  bool used_pair_filter = false;                                  // fallback strategy taken
  std::vector<uint64_t> pos_masks, neg_masks;                     // per-variable clause masks

  const std::pair<uint64_t, uint32_t>* find(int level, uint64_t key) const;
};

enum class TableStrategy { Auto, SubsetExpand, PairFilter };

CoverTables build_tables(const CnfFormula& f, const std::vector<int>& block_vars, int budget,
                         TableStrategy strategy = TableStrategy::Auto,
                         uint64_t pair_cap = uint64_t{1} << 22);

// f(v) of the search phase. v_bits assigns the complement variables (bit j =
// value of comp_vars[j]). Returns the witnessing block assignment, or 0 when
// v alone satisfies the formula, or nullopt.
std::optional<uint32_t> cnf_oracle(uint64_t v_bits, const CoverTables& tables,
                                   const CnfFormula& f, const std::vector<int>& comp_vars);

struct CnfSolveStats {
  uint64_t quantum_queries = 0;
  uint64_t classical_setup_evals = 0;
  uint64_t table_pairs = 0;
  int blocks_tried = 0;
  int retries_used = 0;
  double wall_ms = 0.0;
  std::vector<uint64_t> per_block_table_sizes;
  double predicted_build_cost = 0.0;  // C(m, budget) * 2^(block size)
};

std::optional<Assignment> solve_cnf(const CnfFormula& f, double c, uint64_t seed, int retries,
                                    CnfSolveStats* stats = nullptr,
                                    std::optional<double> alpha_override = std::nullopt);

// Executable form of the pigeonhole claim: the first block index i whose
// complement partial assignment of a satisfying a_star satisfies at least
// m - budget clauses. Throws if no block qualifies.
int verify_claim(const CnfFormula& f, const Assignment& a_star, const AlphaParams& params);

}  // namespace qmitm
