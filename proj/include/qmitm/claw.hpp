#pragma once
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmitm/splitmix64.hpp"

namespace qmitm {

// Counted black box over {0,1}^n x {0,1}^n returning (P1, P2). evaluate()
// counts one query; peek() is reserved for the simulator's setup passes and
// validators and never touches the counter; charge() books simulated quantum
// queries so the counter reflects the algorithm's full query stream.
class SymmetricClawOracle {
 public:
  using Fn = std::function<std::pair<int64_t, int64_t>(uint64_t x, uint64_t y)>;

  SymmetricClawOracle(int n, Fn fn) : n_(n), fn_(std::move(fn)) {}

  std::pair<int64_t, int64_t> evaluate(uint64_t x, uint64_t y) const {
    ++count_;
    return fn_(x, y);
  }
  std::pair<int64_t, int64_t> peek(uint64_t x, uint64_t y) const { return fn_(x, y); }
  void charge(uint64_t queries) const { count_ += queries; }

  int n() const { return n_; }
  uint64_t query_count() const { return count_; }
  void reset_count() const { count_ = 0; }

 private:
  int n_;
  Fn fn_;
  mutable uint64_t count_ = 0;
};

// Subset-sum oracle: P1(x,y) sums a_i x_i where y_i = 1, P2(x,y) = t minus
// the sum where y_i = 0. A claw at x exists iff sum a_i x_i = t; t = 0 gives
// the plain form (with the all-zero x as a trivial witness).
SymmetricClawOracle knapsack_claw(std::vector<int64_t> a, int64_t target);

struct PromiseReport {
  uint64_t condition1_violations = 0;
  uint64_t condition2_violations = 0;
  std::vector<std::string> counterexamples;  // first few, human-readable
  bool ok() const { return condition1_violations == 0 && condition2_violations == 0; }
};

// Exhaustive check of both promise conditions; n <= 8.
PromiseReport validate_promise(const SymmetricClawOracle& oracle);

struct ClawStats {
  uint64_t sort_queries = 0;       // preprocessing queries per (outer) round
  uint64_t quantum_queries = 0;    // simulated search queries, all rounds
  uint64_t setup_evals = 0;        // simulator-only classical evaluations
  uint64_t total_queries = 0;      // sort + quantum + verification
  uint64_t outer_rounds = 0;
  int retries_used = 0;
};

// Symmetric-claw solver: fix y = 1^(n/3) 0^(rest), sort P1 over X_A,
// simulated Grover over X_B, recombine. Returns the full witness x.
std::optional<uint64_t> solve_symmetric_claw(const SymmetricClawOracle& oracle, uint64_t seed,
                                             int retries, ClawStats* stats = nullptr);

// Family of counted functions [N] -> Z. Pair problems use both f and g;
// collision problems use f only (g empty).
class FunctionFamilyOracle {
 public:
  enum class Promise { None, OneToOne, TwoToOne };

  FunctionFamilyOracle(std::vector<std::vector<int64_t>> f, std::vector<std::vector<int64_t>> g,
                       Promise promise = Promise::None);

  int64_t eval_f(int i, uint64_t x) const { ++counts_[i]; return f_[i][x]; }
  int64_t eval_g(int i, uint64_t y) const { ++counts_[i]; return g_[i][y]; }
  int64_t peek_f(int i, uint64_t x) const { return f_[i][x]; }
  int64_t peek_g(int i, uint64_t y) const { return g_[i][y]; }
  void charge(uint64_t queries) const { charged_ += queries; }

  int d() const { return static_cast<int>(f_.size()); }
  uint64_t domain() const { return f_[0].size(); }
  bool has_g() const { return !g_.empty(); }
  Promise promise() const { return promise_; }
  const std::vector<std::vector<int64_t>>& f_tables() const { return f_; }
  const std::vector<std::vector<int64_t>>& g_tables() const { return g_; }

  uint64_t query_count(int i) const { return counts_[i]; }
  uint64_t total_query_count() const;

 private:
  std::vector<std::vector<int64_t>> f_, g_;
  Promise promise_;
  mutable std::vector<uint64_t> counts_;
  mutable uint64_t charged_ = 0;
};

struct PairClawResult {
  uint64_t x = 0;
  uint64_t y = 0;
};

// d-pair simultaneous claw (d = 1 is the plain pair claw): amplitude-
// amplified subset strategy keyed on the full d-tuple. subset_size = 0
// selects the default ceil(sqrt(N)).
std::optional<PairClawResult> solve_simultaneous_claw(const FunctionFamilyOracle& fam,
                                                      uint64_t seed, uint64_t subset_size = 0,
                                                      ClawStats* stats = nullptr);

inline std::optional<PairClawResult> solve_pair_claw(const FunctionFamilyOracle& fam,
                                                     uint64_t subset_size, uint64_t seed,
                                                     ClawStats* stats = nullptr) {
  return solve_simultaneous_claw(fam, seed, subset_size, stats);
}

// Simultaneous collision x != y across all f_i: query a subset, look for an
// internal collision, else one simulated search for a tuple match outside it.
std::optional<PairClawResult> solve_simultaneous_collision(const FunctionFamilyOracle& fam,
                                                           uint64_t subset_size, uint64_t seed,
                                                           ClawStats* stats = nullptr);

// The same-point form f_i(x) = g_i(x): plain simulated Grover over [N].
std::optional<uint64_t> solve_samepoint_claw(const FunctionFamilyOracle& fam, uint64_t seed,
                                             ClawStats* stats = nullptr);

}  // namespace qmitm
