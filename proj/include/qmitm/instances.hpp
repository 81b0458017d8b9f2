#pragma once
#include <cstdint>
#include <functional>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qmitm {

// All coefficient sums must stay exactly representable in int64: we cap
// |a_ij| <= kCoeffLimit / n and |b_i| <= kCoeffLimit at construction.
inline constexpr int64_t kCoeffLimit = int64_t{1} << 40;

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

// Full 0-1 assignment to n variables. Variables are 0-based internally.
struct Assignment {
  std::vector<uint8_t> bits;

  Assignment() = default;
  explicit Assignment(std::vector<uint8_t> b) : bits(std::move(b)) {}
  int n() const { return static_cast<int>(bits.size()); }

  // bit j of `value` becomes variable j
  static Assignment from_index(uint64_t value, int n);
  uint64_t to_index() const;
  bool operator==(const Assignment&) const = default;
};

// Values on a strictly increasing subset of variables.
struct PartialAssignment {
  std::vector<int> support;  // 0-based, strictly increasing
  std::vector<uint8_t> bits;

  PartialAssignment() = default;
  PartialAssignment(std::vector<int> support_, std::vector<uint8_t> bits_);
};

struct KnapsackInstance {
  std::vector<int64_t> coefficients;  // all >= 1
  int64_t target;                     // >= 1
  int n;

  KnapsackInstance(std::vector<int64_t> coeffs, int64_t target_);
  static KnapsackInstance parse(std::istream& in);
  void write(std::ostream& out) const;
};

struct IlpInstance {
  int n = 0;  // variables
  int d = 0;  // rows
  std::vector<std::vector<int64_t>> a;  // d x n
  std::vector<int64_t> b;               // d
  std::vector<uint8_t> is_equality;     // d; 1 = row holds with equality

  IlpInstance() = default;
  IlpInstance(std::vector<std::vector<int64_t>> a_, std::vector<int64_t> b_,
              std::vector<uint8_t> is_equality_ = {});
  bool all_equalities() const;
  static IlpInstance parse(std::istream& in);
  void write(std::ostream& out) const;
};

struct CnfFormula {
  int n = 0;  // variables
  int m = 0;  // clauses
  // DIMACS-style signed literals, 1-based: +v means x_v, -v means !x_v
  std::vector<std::vector<int>> clauses;

  CnfFormula() = default;
  CnfFormula(int n_, std::vector<std::vector<int>> clauses_);
  static CnfFormula parse_dimacs(std::istream& in);
  void write_dimacs(std::ostream& out) const;
};

// Two-row encoding of subset sum: c.x <= K and -c.x <= -K.
IlpInstance knapsack_to_ilp(const KnapsackInstance& k);

// Equality-form instance whose feasible set is exactly the assignments
// satisfying exactly one literal per clause. Row j: +1 on positive
// occurrences, -1 on negative ones, b_j = 1 - (#negative literals).
IlpInstance exactly_one_sat_to_group_ilp(const CnfFormula& f);

bool eval_ilp(const IlpInstance& inst, const Assignment& x);

// m-bit mask, bit j set iff some literal of clause j is made true by p.
// Requires m <= 64.
uint64_t satisfied_clause_mask(const CnfFormula& f, const PartialAssignment& p);

enum class Sense { Minimize, Maximize };

struct OptimizeResult {
  int64_t value = 0;
  Assignment witness;
  int solve_calls = 0;
};

using FeasibilitySolver = std::function<std::optional<Assignment>(const IlpInstance&)>;

// Reduces optimization to feasibility: appends one row "obj.x <= t"
// (negated for Maximize) and bisects t over [-sum|obj|, sum|obj|].
// Returns nullopt when the base instance is infeasible. The solver may be
// probabilistic; callers control retries inside `solve`.
std::optional<OptimizeResult> optimize_by_bisection(const IlpInstance& inst,
                                                    const std::vector<int64_t>& objective,
                                                    Sense sense,
                                                    const FeasibilitySolver& solve);

}  // namespace qmitm
