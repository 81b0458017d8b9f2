#pragma once
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "qmitm/splitmix64.hpp"

namespace qmitm {

// Exact marked set of a predicate over [0, N), plus the classical cost the
// simulator spent discovering it. That cost is simulation overhead and is
// never mixed into quantum query counts.
struct MarkedSetSummary {
  uint64_t domain_size = 0;
  std::vector<uint64_t> marked;  // sorted ascending
  uint64_t classical_setup_evals = 0;

  uint64_t marked_count() const { return marked.size(); }
};

MarkedSetSummary enumerate_marked(const std::function<bool(uint64_t)>& predicate, uint64_t n);

// sin^2((2t+1) * arcsin(sqrt(M/N))); 0 when M = 0.
double grover_success_prob(uint64_t n, uint64_t m, uint64_t t);

struct RoundTrace {
  uint64_t iterations;
  double success_prob;
  bool succeeded;
};

struct SearchOutcome {
  std::optional<uint64_t> found;
  uint64_t quantum_queries = 0;  // one per Grover iteration + one verification per round
  uint64_t classical_setup_evals = 0;
  uint64_t seed = 0;
  std::vector<RoundTrace> rounds;
};

// Grover with known marked count, t = floor((pi/4) sqrt(N/M)) iterations.
// Requires M >= 1. quantum_queries = t + 1.
SearchOutcome grover_known_m(const MarkedSetSummary& summary, uint64_t seed);

// BBHT-style search with unknown M: the iteration bound grows by 6/5 per
// round (capped at sqrt(N)) and the run gives up once spending the next
// round would push total queries past 9 sqrt(N).
SearchOutcome bbht_search(const MarkedSetSummary& summary, uint64_t seed);

struct AmplificationOutcome {
  bool success = false;
  uint64_t outer_rounds = 0;
  uint64_t total_queries = 0;  // = outer_rounds * inner_query_cost
  uint64_t witness = 0;        // opaque payload, valid on success
};

// Distribution-level amplitude amplification of a procedure with exact inner
// success probability p: r = ceil((pi/4)/sqrt(p)) rounds, success sampled
// with sin^2((2r+1) arcsin(sqrt(p))) clamped to [p, 1]. p = 0 fails after
// ceil(9/sqrt(p_min)) rounds.
AmplificationOutcome amplitude_amplify(double p, uint64_t inner_query_cost,
                                       const std::function<uint64_t(SplitMix64&)>& witness_sampler,
                                       uint64_t seed, double p_min = 1e-9);

}  // namespace qmitm
