#pragma once
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qmitm/claw.hpp"
#include "qmitm/instances.hpp"

namespace qmitm {

// Seeded generators. Identical parameters give bit-identical instances;
// planted instances are feasible by construction.

KnapsackInstance gen_knapsack(int n, bool plant, uint64_t seed);  // n <= 30

// Random rows; planted instances are feasible at a hidden random assignment.
IlpInstance gen_ilp(int n, int d, bool plant, uint64_t seed);

// Two-row instance whose unique feasible assignment is a hidden random one
// (coefficients are shuffled powers of two, so subset sums are distinct).
struct PlantedIlp {
  IlpInstance instance;
  Assignment solution;
};
PlantedIlp gen_ilp_unique(int n, uint64_t seed);

CnfFormula gen_cnf(int n, double c, bool plant, uint64_t seed);

// Planted-unique symmetric-claw oracle (subset-sum form); `target` is the
// planted sum, solution the planted subset.
struct PlantedClaw {
  std::vector<int64_t> coefficients;
  int64_t target = 0;
  uint64_t solution = 0;
};
PlantedClaw gen_symmetric_claw(int n, uint64_t seed);

enum class FamilyKind { PairClaw, TwoToOne, OneToOne };

// PairClaw: injective f/g with disjoint ranges; plant splices one claw.
// TwoToOne: one random perfect matching shared by all d functions.
// OneToOne: random injective values (no collision exists).
FunctionFamilyOracle gen_claw_family(uint64_t n, int d, FamilyKind kind, bool plant,
                                     uint64_t seed);

// Exhaustive promise check for generated families (counts preimages per
// value for every function); intended for N <= 256.
bool check_family_promise(const FunctionFamilyOracle& fam);

struct TrialRow {
  std::string problem;
  int size = 0;
  uint64_t seed = 0;
  uint64_t queries = 0;
  uint64_t setup_evals = 0;
  bool success = false;
  double ms = 0.0;
};

struct ExponentFit {
  double beta = 0.0;
  double residual = 0.0;  // RMS of least-squares fit on (size, log2 median)
  bool valid = false;     // needs >= 2 sizes
};

struct ScalingReport {
  std::string problem;
  std::vector<int> sizes;
  int trials = 0;
  std::vector<TrialRow> rows;  // solver rows then baseline rows
  std::vector<double> median_queries;           // per size, solver
  std::vector<double> median_baseline_queries;  // per size, baseline (if run)
  ExponentFit solver_fit;
  ExponentFit baseline_fit;
  bool baseline_ran = false;
};

// problem: "ilp" (size = n), "symclaw" (size = n), "claw" (size = log2 N),
// "cnf" (size = n, density 1). The baseline is plain BBHT search over the
// full assignment/pair space with the same feasibility predicate.
ScalingReport run_scaling(const std::string& problem, const std::vector<int>& sizes, int trials,
                          uint64_t seed, bool with_baseline = true, bool timing = false);

void write_csv(std::ostream& out, const ScalingReport& report);
void write_json_summary(std::ostream& out, const ScalingReport& report);

}  // namespace qmitm
