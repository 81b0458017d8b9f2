#pragma once
#include <cstdint>
#include <utility>
#include <vector>

#include "qmitm/instances.hpp"

namespace qmitm {

// Exhaustive ground-truth results. These solvers deliberately share no
// evaluation helpers with the solver code paths.
struct BruteResult {
  bool feasible = false;
  std::vector<uint64_t> witnesses;  // assignment indices, capped
  uint64_t count = 0;               // exact, even when the list is capped
  uint64_t enumeration_cost = 0;
};

inline constexpr uint64_t kWitnessCap = uint64_t{1} << 16;

BruteResult brute_ilp(const IlpInstance& inst);                       // n <= 24
BruteResult brute_cnf(const CnfFormula& f);                           // n <= 24
BruteResult brute_exactly_one(const CnfFormula& f);                   // n <= 24
BruteResult brute_subset_sum(const std::vector<int64_t>& a, int64_t t);

struct BrutePairs {
  std::vector<std::pair<uint64_t, uint64_t>> pairs;  // capped
  uint64_t count = 0;
  uint64_t enumeration_cost = 0;
};

// All (x, y) with f_i(x) = g_i(y) for every i. Sides <= 2^12.
BrutePairs brute_pair_claw(const std::vector<std::vector<int64_t>>& f,
                           const std::vector<std::vector<int64_t>>& g);

// All x < y with f_i(x) = f_i(y) for every i.
BrutePairs brute_collision(const std::vector<std::vector<int64_t>>& f);

}  // namespace qmitm
