#include "qmitm/instances.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <ostream>
#include <sstream>

namespace qmitm {

Assignment Assignment::from_index(uint64_t value, int n) {
  if (n < 0 || n > 63) throw std::invalid_argument("assignment length out of range");
  std::vector<uint8_t> bits(n);
  for (int j = 0; j < n; ++j) bits[j] = (value >> j) & 1;
  return Assignment(std::move(bits));
}

uint64_t Assignment::to_index() const {
  uint64_t v = 0;
  for (int j = 0; j < n(); ++j)
    if (bits[j]) v |= uint64_t{1} << j;
  return v;
}

PartialAssignment::PartialAssignment(std::vector<int> support_, std::vector<uint8_t> bits_)
    : support(std::move(support_)), bits(std::move(bits_)) {
  if (support.size() != bits.size())
    throw std::invalid_argument("support/bits length mismatch");
  for (size_t i = 0; i < support.size(); ++i) {
    if (support[i] < 0) throw std::invalid_argument("negative variable index");
    if (i > 0 && support[i] <= support[i - 1])
      throw std::invalid_argument("support not strictly increasing");
    if (bits[i] > 1) throw std::invalid_argument("non-binary value");
  }
}

KnapsackInstance::KnapsackInstance(std::vector<int64_t> coeffs, int64_t target_)
    : coefficients(std::move(coeffs)), target(target_), n(static_cast<int>(coefficients.size())) {
  if (n < 1) throw std::invalid_argument("knapsack needs at least one coefficient");
  if (n > 63) throw std::invalid_argument("knapsack limited to n <= 63");
  if (target < 1) throw std::invalid_argument("target must be positive");
  for (int64_t c : coefficients) {
    if (c < 1) throw std::invalid_argument("coefficients must be positive");
    if (c > kCoeffLimit / n) throw std::invalid_argument("coefficient exceeds magnitude cap");
  }
  if (target > kCoeffLimit) throw std::invalid_argument("target exceeds magnitude cap");
}

KnapsackInstance KnapsackInstance::parse(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "missing header \"n K\"");
  std::istringstream h(line);
  long long n = 0, k = 0;
  if (!(h >> n >> k)) throw ParseError(1, "expected \"n K\"");
  if (!std::getline(in, line)) throw ParseError(2, "missing coefficient line");
  std::istringstream c(line);
  std::vector<int64_t> coeffs;
  long long v;
  while (c >> v) coeffs.push_back(v);
  if (static_cast<long long>(coeffs.size()) != n)
    throw ParseError(2, "expected " + std::to_string(n) + " coefficients, got " +
                            std::to_string(coeffs.size()));
  try {
    return KnapsackInstance(std::move(coeffs), k);
  } catch (const std::invalid_argument& e) {
    throw ParseError(2, e.what());
  }
}

void KnapsackInstance::write(std::ostream& out) const {
  out << n << ' ' << target << '\n';
  for (int j = 0; j < n; ++j) out << coefficients[j] << (j + 1 == n ? '\n' : ' ');
}

IlpInstance::IlpInstance(std::vector<std::vector<int64_t>> a_, std::vector<int64_t> b_,
                         std::vector<uint8_t> is_equality_)
    : a(std::move(a_)), b(std::move(b_)), is_equality(std::move(is_equality_)) {
  d = static_cast<int>(a.size());
  if (d < 1) throw std::invalid_argument("ILP needs at least one row");
  n = static_cast<int>(a[0].size());
  if (n < 1) throw std::invalid_argument("ILP needs at least one variable");
  if (static_cast<int>(b.size()) != d) throw std::invalid_argument("b size mismatch");
  if (is_equality.empty()) is_equality.assign(d, 0);
  if (static_cast<int>(is_equality.size()) != d)
    throw std::invalid_argument("equality flag size mismatch");
  const int64_t cap = kCoeffLimit / n;
  for (const auto& row : a) {
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("ragged matrix");
    for (int64_t v : row)
      if (std::llabs(v) > cap) throw std::invalid_argument("coefficient exceeds magnitude cap");
  }
  for (int64_t v : b)
    if (std::llabs(v) > kCoeffLimit) throw std::invalid_argument("bound exceeds magnitude cap");
}

bool IlpInstance::all_equalities() const {
  return std::all_of(is_equality.begin(), is_equality.end(), [](uint8_t e) { return e != 0; });
}

IlpInstance IlpInstance::parse(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "missing header \"d n\"");
  std::istringstream h(line);
  int d = 0, n = 0;
  if (!(h >> d >> n) || d < 1 || n < 1) throw ParseError(1, "expected \"d n\" with d,n >= 1");
  std::vector<std::vector<int64_t>> a;
  std::vector<int64_t> b;
  std::vector<uint8_t> eq;
  for (int i = 0; i < d; ++i) {
    const int lineno = i + 2;
    if (!std::getline(in, line)) throw ParseError(lineno, "missing row");
    std::istringstream r(line);
    std::vector<int64_t> row(n);
    for (int j = 0; j < n; ++j)
      if (!(r >> row[j])) throw ParseError(lineno, "expected " + std::to_string(n) + " coefficients");
    std::string rel;
    long long rhs;
    if (!(r >> rel >> rhs)) throw ParseError(lineno, "expected relation and bound");
    if (rel != "<=" && rel != "=") throw ParseError(lineno, "relation must be \"<=\" or \"=\"");
    a.push_back(std::move(row));
    b.push_back(rhs);
    eq.push_back(rel == "=" ? 1 : 0);
  }
  try {
    return IlpInstance(std::move(a), std::move(b), std::move(eq));
  } catch (const std::invalid_argument& e) {
    throw ParseError(1, e.what());
  }
}

void IlpInstance::write(std::ostream& out) const {
  out << d << ' ' << n << '\n';
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < n; ++j) out << a[i][j] << ' ';
    out << (is_equality[i] ? "=" : "<=") << ' ' << b[i] << '\n';
  }
}

CnfFormula::CnfFormula(int n_, std::vector<std::vector<int>> clauses_)
    : n(n_), m(static_cast<int>(clauses_.size())), clauses(std::move(clauses_)) {
  if (n < 1 || m < 1) throw std::invalid_argument("formula needs n >= 1 and m >= 1");
  for (const auto& cl : clauses) {
    if (cl.empty()) throw std::invalid_argument("empty clause");
    for (int lit : cl) {
      if (lit == 0 || std::abs(lit) > n) throw std::invalid_argument("literal out of range");
      if (std::find(cl.begin(), cl.end(), -lit) != cl.end())
        throw std::invalid_argument("clause contains a literal and its negation");
    }
  }
}

CnfFormula CnfFormula::parse_dimacs(std::istream& in) {
  std::string line;
  int lineno = 0;
  int n = -1;
  long long m = -1;
  std::vector<std::vector<int>> clauses;
  std::vector<int> cur;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == 'c') continue;
    if (line[0] == 'p') {
      if (n >= 0) throw ParseError(lineno, "duplicate problem line");
      std::istringstream p(line);
      std::string tok, fmt;
      if (!(p >> tok >> fmt >> n >> m) || fmt != "cnf" || n < 1 || m < 1)
        throw ParseError(lineno, "malformed problem line, expected \"p cnf n m\"");
      continue;
    }
    if (n < 0) throw ParseError(lineno, "clause before \"p cnf\" header");
    std::istringstream c(line);
    int lit;
    while (c >> lit) {
      if (lit == 0) {
        if (cur.empty()) throw ParseError(lineno, "empty clause");
        clauses.push_back(cur);
        cur.clear();
      } else {
        if (std::abs(lit) > n) throw ParseError(lineno, "literal out of range");
        cur.push_back(lit);
      }
    }
  }
  if (n < 0) throw ParseError(lineno + 1, "missing \"p cnf\" header");
  if (!cur.empty()) throw ParseError(lineno, "clause not zero-terminated");
  if (static_cast<long long>(clauses.size()) != m)
    throw ParseError(lineno, "header declared " + std::to_string(m) + " clauses, got " +
                                 std::to_string(clauses.size()));
  try {
    return CnfFormula(n, std::move(clauses));
  } catch (const std::invalid_argument& e) {
    throw ParseError(lineno, e.what());
  }
}

void CnfFormula::write_dimacs(std::ostream& out) const {
  out << "p cnf " << n << ' ' << m << '\n';
  for (const auto& cl : clauses) {
    for (int lit : cl) out << lit << ' ';
    out << "0\n";
  }
}

IlpInstance knapsack_to_ilp(const KnapsackInstance& k) {
  std::vector<int64_t> neg(k.coefficients.size());
  std::transform(k.coefficients.begin(), k.coefficients.end(), neg.begin(),
                 [](int64_t c) { return -c; });
  return IlpInstance({k.coefficients, std::move(neg)}, {k.target, -k.target});
}

IlpInstance exactly_one_sat_to_group_ilp(const CnfFormula& f) {
  std::vector<std::vector<int64_t>> a(f.m, std::vector<int64_t>(f.n, 0));
  std::vector<int64_t> b(f.m);
  for (int j = 0; j < f.m; ++j) {
    int negatives = 0;
    for (int lit : f.clauses[j]) {
      if (lit > 0) {
        a[j][lit - 1] += 1;
      } else {
        a[j][-lit - 1] -= 1;
        ++negatives;
      }
    }
    b[j] = 1 - negatives;
  }
  return IlpInstance(std::move(a), std::move(b), std::vector<uint8_t>(f.m, 1));
}

bool eval_ilp(const IlpInstance& inst, const Assignment& x) {
  if (x.n() != inst.n) throw std::invalid_argument("assignment length mismatch");
  for (int i = 0; i < inst.d; ++i) {
    int64_t sum = 0;
    for (int j = 0; j < inst.n; ++j)
      if (x.bits[j]) sum += inst.a[i][j];
    if (inst.is_equality[i] ? (sum != inst.b[i]) : (sum > inst.b[i])) return false;
  }
  return true;
}

uint64_t satisfied_clause_mask(const CnfFormula& f, const PartialAssignment& p) {
  if (f.m > 64) throw std::invalid_argument("clause mask limited to m <= 64");
  for (int v : p.support)
    if (v >= f.n) throw std::invalid_argument("support outside formula variables");
  uint64_t mask = 0;
  for (int j = 0; j < f.m; ++j) {
    for (int lit : f.clauses[j]) {
      const int var = std::abs(lit) - 1;
      auto it = std::lower_bound(p.support.begin(), p.support.end(), var);
      if (it == p.support.end() || *it != var) continue;
      const uint8_t val = p.bits[it - p.support.begin()];
      if ((lit > 0 && val) || (lit < 0 && !val)) {
        mask |= uint64_t{1} << j;
        break;
      }
    }
  }
  return mask;
}

std::optional<OptimizeResult> optimize_by_bisection(const IlpInstance& inst,
                                                    const std::vector<int64_t>& objective,
                                                    Sense sense, const FeasibilitySolver& solve) {
  if (static_cast<int>(objective.size()) != inst.n)
    throw std::invalid_argument("objective length mismatch");
  const int64_t cap = kCoeffLimit / inst.n;
  int64_t span = 0;
  for (int64_t c : objective) {
    if (std::llabs(c) > cap) throw std::invalid_argument("objective coefficient exceeds cap");
    span += std::llabs(c);
  }

  // appended row is w.x <= tau with w = obj (min) or -obj (max); tau is the
  // bisected threshold, expressed so smaller tau is always tighter
  std::vector<int64_t> w(objective);
  if (sense == Sense::Maximize)
    for (auto& c : w) c = -c;

  int solve_calls = 0;
  auto feasible_at = [&](int64_t tau) -> std::optional<Assignment> {
    auto a = inst.a;
    auto b = inst.b;
    auto eq = inst.is_equality;
    a.push_back(w);
    b.push_back(tau);
    eq.push_back(0);
    ++solve_calls;
    return solve(IlpInstance(std::move(a), std::move(b), std::move(eq)));
  };

  // tau = span is vacuous, so this is the base feasibility check
  auto base = feasible_at(span);
  if (!base) return std::nullopt;
  Assignment witness = *base;

  int64_t lo = -span, hi = span;  // smallest feasible tau lies in [lo, hi]
  while (lo < hi) {
    const int64_t mid = lo + (hi - lo) / 2;
    if (auto x = feasible_at(mid)) {
      witness = *x;
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }

  int64_t value = 0;
  for (int j = 0; j < inst.n; ++j)
    if (witness.bits[j]) value += objective[j];
  return OptimizeResult{value, std::move(witness), solve_calls};
}

}  // namespace qmitm
