#include "qmitm/qsearch.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qmitm {

MarkedSetSummary enumerate_marked(const std::function<bool(uint64_t)>& predicate, uint64_t n) {
  if (n < 1) throw std::invalid_argument("domain must be nonempty");
  MarkedSetSummary s;
  s.domain_size = n;
  s.classical_setup_evals = n;
  for (uint64_t i = 0; i < n; ++i)
    if (predicate(i)) s.marked.push_back(i);
  return s;
}

double grover_success_prob(uint64_t n, uint64_t m, uint64_t t) {
  if (n < 1) throw std::invalid_argument("N must be >= 1");
  if (m > n) throw std::invalid_argument("M must be <= N");
  if (m == 0) return 0.0;
  const double theta = std::asin(std::sqrt(static_cast<double>(m) / static_cast<double>(n)));
  const double s = std::sin(static_cast<double>(2 * t + 1) * theta);
  return s * s;
}

SearchOutcome grover_known_m(const MarkedSetSummary& summary, uint64_t seed) {
  const uint64_t n = summary.domain_size;
  const uint64_t m = summary.marked_count();
  if (m == 0) throw std::invalid_argument("grover_known_m requires M >= 1");
  const uint64_t t = static_cast<uint64_t>(
      std::floor((M_PI / 4.0) * std::sqrt(static_cast<double>(n) / static_cast<double>(m))));
  SplitMix64 rng(seed);
  SearchOutcome out;
  out.seed = seed;
  out.quantum_queries = t + 1;
  const double p = grover_success_prob(n, m, t);
  const bool hit = rng.next_double() < p;
  out.rounds.push_back({t, p, hit});
  if (hit) out.found = summary.marked[rng.next_below(m)];
  return out;
}

SearchOutcome bbht_search(const MarkedSetSummary& summary, uint64_t seed) {
  const uint64_t n = summary.domain_size;
  const uint64_t m_marked = summary.marked_count();
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  const double cutoff = 9.0 * sqrt_n;

  SplitMix64 rng(seed);
  SearchOutcome out;
  out.seed = seed;

  double bound = 1.0;
  while (true) {
    const uint64_t t = rng.next_below(std::max<uint64_t>(1, static_cast<uint64_t>(bound)));
    if (static_cast<double>(out.quantum_queries + t + 1) > cutoff) break;
    out.quantum_queries += t + 1;
    const double p = grover_success_prob(n, m_marked, t);
    const bool hit = m_marked > 0 && rng.next_double() < p;
    out.rounds.push_back({t, p, hit});
    if (hit) {
      out.found = summary.marked[rng.next_below(m_marked)];
      break;
    }
    bound = std::min(bound * 1.2, sqrt_n);
  }
  return out;
}

AmplificationOutcome amplitude_amplify(double p, uint64_t inner_query_cost,
                                       const std::function<uint64_t(SplitMix64&)>& witness_sampler,
                                       uint64_t seed, double p_min) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("p must lie in [0, 1]");
  if (p_min <= 0.0) throw std::invalid_argument("p_min must be positive");
  AmplificationOutcome out;
  if (p == 0.0) {
    out.outer_rounds = static_cast<uint64_t>(std::ceil(9.0 / std::sqrt(p_min)));
    out.total_queries = out.outer_rounds * inner_query_cost;
    return out;
  }
  out.outer_rounds = static_cast<uint64_t>(std::ceil((M_PI / 4.0) / std::sqrt(p)));
  out.total_queries = out.outer_rounds * inner_query_cost;
  const double theta = std::asin(std::sqrt(p));
  const double s = std::sin(static_cast<double>(2 * out.outer_rounds + 1) * theta);
  const double amplified = std::clamp(s * s, p, 1.0);
  SplitMix64 rng(seed);
  if (rng.next_double() < amplified) {
    out.success = true;
    out.witness = witness_sampler(rng);
  }
  return out;
}

}  // namespace qmitm
