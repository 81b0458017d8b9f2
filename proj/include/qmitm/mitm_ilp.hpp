#pragma once
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "qmitm/instances.hpp"
#include "qmitm/rangetree.hpp"

namespace qmitm {

// Prefix split: A = variables [0, a_size), B = the rest. |A| = floor(n/3).
struct SplitPlan {
  int n = 0;
  int a_size = 0;
  int b_size = 0;
};

SplitPlan split_variables(int n);  // n >= 3

// One row-sum d-tuple per A-assignment, in binary counting order of the
// assignment index (bit j of the index = variable a_size-local j).
std::vector<std::pair<std::vector<int64_t>, uint32_t>> enumerate_partial_tuples(
    const IlpInstance& inst, const SplitPlan& plan);

// Preprocessing output. Pure-equality systems get a sorted exact-match table
// (one witness per distinct tuple); anything else gets a range tree whose
// dimensions are the inequality rows plus each equality row expanded into
// two opposed inequalities.
struct PreprocessedIlp {
  SplitPlan plan;
  bool equality_path = false;
  RangeTree tree;
  std::vector<std::pair<std::vector<int64_t>, uint32_t>> table;  // sorted by tuple
  uint64_t build_points = 0;                                     // = 2^|A|
};

PreprocessedIlp preprocess(const IlpInstance& inst, const SplitPlan& plan);  // |A| <= 24

// The subroutine f of the search phase: returns the witnessing A-assignment
// index for B-assignment u, or nullopt when no completion is feasible.
std::optional<uint32_t> oracle_f(uint64_t u, const PreprocessedIlp& prep, const IlpInstance& inst);

struct SolveStats {
  uint64_t quantum_queries = 0;
  uint64_t classical_setup_evals = 0;
  uint64_t tree_visits = 0;
  uint64_t preprocess_points = 0;
  int retries_used = 0;
  double wall_ms = 0.0;
};

// Full solve pipeline: split, preprocess, enumerate the marked set over
// the 2^|B| B-assignments, simulated search, recombine and verify. Failure
// after `retries` extra attempts (derived seeds seed+1, ...) returns nullopt,
// which means "no solution found", not proven infeasibility.
std::optional<Assignment> solve_ilp(const IlpInstance& inst, uint64_t seed, int retries,
                                    SolveStats* stats = nullptr);

// Group problem (all rows equality) with a linear objective: exact-match
// table keyed by A-tuple with a per-key best-objective witness, outer
// bisection over the objective threshold.
std::optional<OptimizeResult> solve_group_problem(const IlpInstance& inst,
                                                  const std::vector<int64_t>& objective,
                                                  Sense sense, uint64_t seed, int retries,
                                                  SolveStats* stats = nullptr);

// Recombines an A-assignment index and a B-assignment index into a full
// assignment under the prefix split.
Assignment combine_split(const SplitPlan& plan, uint64_t a_index, uint64_t b_index);

}  // namespace qmitm
