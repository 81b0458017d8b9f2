#include "qmitm/brute.hpp"

#include <cstdlib>
#include <stdexcept>

namespace qmitm {

namespace {

void record(BruteResult& r, uint64_t witness) {
  r.feasible = true;
  ++r.count;
  if (r.witnesses.size() < kWitnessCap) r.witnesses.push_back(witness);
}

void check_n(int n) {
  if (n < 1 || n > 24) throw std::invalid_argument("brute enumeration limited to 1 <= n <= 24");
}

}  // namespace

BruteResult brute_ilp(const IlpInstance& inst) {
  check_n(inst.n);
  BruteResult r;
  const uint64_t total = uint64_t{1} << inst.n;
  r.enumeration_cost = total;
  for (uint64_t x = 0; x < total; ++x) {
    bool ok = true;
    for (int i = 0; i < inst.d && ok; ++i) {
      int64_t sum = 0;
      for (int j = 0; j < inst.n; ++j)
        if ((x >> j) & 1) sum += inst.a[i][j];
      ok = inst.is_equality[i] ? sum == inst.b[i] : sum <= inst.b[i];
    }
    if (ok) record(r, x);
  }
  return r;
}

BruteResult brute_cnf(const CnfFormula& f) {
  check_n(f.n);
  BruteResult r;
  const uint64_t total = uint64_t{1} << f.n;
  r.enumeration_cost = total;
  for (uint64_t x = 0; x < total; ++x) {
    bool sat = true;
    for (const auto& clause : f.clauses) {
      bool clause_sat = false;
      for (int lit : clause) {
        const int var = std::abs(lit) - 1;
        const bool val = (x >> var) & 1;
        if ((lit > 0) == val) {
          clause_sat = true;
          break;
        }
      }
      if (!clause_sat) {
        sat = false;
        break;
      }
    }
    if (sat) record(r, x);
  }
  return r;
}

BruteResult brute_exactly_one(const CnfFormula& f) {
  check_n(f.n);
  BruteResult r;
  const uint64_t total = uint64_t{1} << f.n;
  r.enumeration_cost = total;
  for (uint64_t x = 0; x < total; ++x) {
    bool ok = true;
    for (const auto& clause : f.clauses) {
      int true_literals = 0;
      for (int lit : clause) {
        const int var = std::abs(lit) - 1;
        const bool val = (x >> var) & 1;
        if ((lit > 0) == val) ++true_literals;
      }
      if (true_literals != 1) {
        ok = false;
        break;
      }
    }
    if (ok) record(r, x);
  }
  return r;
}

BruteResult brute_subset_sum(const std::vector<int64_t>& a, int64_t t) {
  check_n(static_cast<int>(a.size()));
  BruteResult r;
  const uint64_t total = uint64_t{1} << a.size();
  r.enumeration_cost = total;
  for (uint64_t x = 0; x < total; ++x) {
    int64_t sum = 0;
    for (size_t j = 0; j < a.size(); ++j)
      if ((x >> j) & 1) sum += a[j];
    if (sum == t) record(r, x);
  }
  return r;
}

namespace {

void check_sides(size_t n) {
  if (n == 0 || n > (size_t{1} << 12))
    throw std::invalid_argument("pair enumeration limited to sides <= 2^12");
}

}  // namespace

BrutePairs brute_pair_claw(const std::vector<std::vector<int64_t>>& f,
                           const std::vector<std::vector<int64_t>>& g) {
  if (f.empty() || f.size() != g.size()) throw std::invalid_argument("family size mismatch");
  const size_t n = f[0].size();
  check_sides(n);
  BrutePairs r;
  r.enumeration_cost = static_cast<uint64_t>(n) * n;
  for (size_t x = 0; x < n; ++x)
    for (size_t y = 0; y < n; ++y) {
      bool claw = true;
      for (size_t i = 0; i < f.size(); ++i)
        if (f[i][x] != g[i][y]) {
          claw = false;
          break;
        }
      if (claw) {
        ++r.count;
        if (r.pairs.size() < kWitnessCap) r.pairs.emplace_back(x, y);
      }
    }
  return r;
}

BrutePairs brute_collision(const std::vector<std::vector<int64_t>>& f) {
  if (f.empty()) throw std::invalid_argument("empty family");
  const size_t n = f[0].size();
  check_sides(n);
  BrutePairs r;
  r.enumeration_cost = static_cast<uint64_t>(n) * n;
  for (size_t x = 0; x < n; ++x)
    for (size_t y = x + 1; y < n; ++y) {
      bool collide = true;
      for (const auto& fi : f)
        if (fi[x] != fi[y]) {
          collide = false;
          break;
        }
      if (collide) {
        ++r.count;
        if (r.pairs.size() < kWitnessCap) r.pairs.emplace_back(x, y);
      }
    }
  return r;
}

}  // namespace qmitm
