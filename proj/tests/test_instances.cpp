#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sstream>

#include "doctest.h"
#include "qmitm/brute.hpp"
#include "qmitm/instances.hpp"
#include "qmitm/splitmix64.hpp"

using namespace qmitm;

TEST_CASE("assignment index round trip") {
  auto a = Assignment::from_index(0b1011, 5);
  CHECK(a.bits == std::vector<uint8_t>{1, 1, 0, 1, 0});
  CHECK(a.to_index() == 0b1011);
}

TEST_CASE("knapsack_to_ilp two-row encoding") {
  KnapsackInstance k({1, 2, 3}, 5);
  auto inst = knapsack_to_ilp(k);
  CHECK(inst.d == 2);
  CHECK(inst.a[0] == std::vector<int64_t>{1, 2, 3});
  CHECK(inst.b[0] == 5);
  CHECK(inst.a[1] == std::vector<int64_t>{-1, -2, -3});
  CHECK(inst.b[1] == -5);

  // single-variable identity
  auto one = knapsack_to_ilp(KnapsackInstance({7}, 7));
  CHECK(eval_ilp(one, Assignment({1})));
  CHECK_FALSE(eval_ilp(one, Assignment({0})));

  // c=[2,2], K=3 is infeasible over all four assignments
  auto bad = knapsack_to_ilp(KnapsackInstance({2, 2}, 3));
  for (uint64_t v = 0; v < 4; ++v) CHECK_FALSE(eval_ilp(bad, Assignment::from_index(v, 2)));
}

TEST_CASE("reduction soundness: knapsack feasibility matches subset sums") {
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    SplitMix64 rng(seed);
    const int n = 4 + static_cast<int>(rng.next_below(8));
    std::vector<int64_t> c(n);
    for (auto& v : c) v = 1 + static_cast<int64_t>(rng.next_below(30));
    const int64_t target = 1 + static_cast<int64_t>(rng.next_below(60));
    auto inst = knapsack_to_ilp(KnapsackInstance(c, target));
    for (uint64_t v = 0; v < (uint64_t{1} << n); ++v) {
      Assignment x = Assignment::from_index(v, n);
      int64_t sum = 0;
      for (int j = 0; j < n; ++j)
        if (x.bits[j]) sum += c[j];
      CHECK(eval_ilp(inst, x) == (sum == target));
    }
  }
}

TEST_CASE("exactly_one_sat_to_group_ilp rows") {
  // F = (x1 v x2): row x1 + x2 = 1
  CnfFormula f1(2, {{1, 2}});
  auto g1 = exactly_one_sat_to_group_ilp(f1);
  CHECK(g1.all_equalities());
  CHECK(g1.a[0] == std::vector<int64_t>{1, 1});
  CHECK(g1.b[0] == 1);

  // F = (!x1): row -x1 = 0, i.e. x1 = 0
  CnfFormula f2(1, {{-1}});
  auto g2 = exactly_one_sat_to_group_ilp(f2);
  CHECK(g2.a[0] == std::vector<int64_t>{-1});
  CHECK(g2.b[0] == 0);
  CHECK(eval_ilp(g2, Assignment({0})));
  CHECK_FALSE(eval_ilp(g2, Assignment({1})));

  // F = (x1 v !x2) & (x2): feasible set is exactly {(1,1)}
  CnfFormula f3(2, {{1, -2}, {2}});
  auto g3 = exactly_one_sat_to_group_ilp(f3);
  for (uint64_t v = 0; v < 4; ++v)
    CHECK(eval_ilp(g3, Assignment::from_index(v, 2)) == (v == 0b11));
}

TEST_CASE("exactly-one reduction soundness on random formulas") {
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    SplitMix64 rng(seed);
    const int n = 3 + static_cast<int>(rng.next_below(7));
    const int m = 1 + static_cast<int>(rng.next_below(5));
    std::vector<std::vector<int>> clauses;
    for (int j = 0; j < m; ++j) {
      std::vector<int> cl;
      for (int v = 0; v < n && cl.size() < 3; ++v)
        if (rng.next() % 3 == 0) cl.push_back((rng.next() & 1) ? v + 1 : -(v + 1));
      if (cl.empty()) cl.push_back(1);
      clauses.push_back(cl);
    }
    CnfFormula f(n, clauses);
    auto inst = exactly_one_sat_to_group_ilp(f);
    for (uint64_t v = 0; v < (uint64_t{1} << n); ++v) {
      Assignment x = Assignment::from_index(v, n);
      bool all_exactly_one = true;
      for (const auto& cl : f.clauses) {
        int trues = 0;
        for (int lit : cl)
          if ((lit > 0) == (x.bits[std::abs(lit) - 1] != 0)) ++trues;
        all_exactly_one &= trues == 1;
      }
      CHECK(eval_ilp(inst, x) == all_exactly_one);
    }
  }
}

TEST_CASE("eval_ilp basics") {
  IlpInstance inst({{1, 2, 3}, {-1, -2, -3}}, {5, -5});
  CHECK(eval_ilp(inst, Assignment({0, 1, 1})));
  CHECK_FALSE(eval_ilp(inst, Assignment({1, 1, 1})));

  // all-zero assignment feasible iff b >= 0 on inequality rows, b = 0 on equalities
  IlpInstance nonneg({{3}}, {0});
  CHECK(eval_ilp(nonneg, Assignment({0})));
  IlpInstance neg({{3}}, {-1});
  CHECK_FALSE(eval_ilp(neg, Assignment({0})));
  IlpInstance eq({{3}}, {0}, {1});
  CHECK(eval_ilp(eq, Assignment({0})));

  IlpInstance tight({{1}}, {0});
  CHECK_FALSE(eval_ilp(tight, Assignment({1})));
}

TEST_CASE("satisfied_clause_mask") {
  CnfFormula f(2, {{1, 2}, {-2}});
  CHECK(satisfied_clause_mask(f, PartialAssignment({1}, {1})) == 0b01);  // x2=1
  CHECK(satisfied_clause_mask(f, PartialAssignment({}, {})) == 0);

  CnfFormula g(3, {{-1}, {-1, 3}});
  CHECK(satisfied_clause_mask(g, PartialAssignment({0}, {0})) == 0b11);  // x1=0
}

TEST_CASE("optimize_by_bisection with a brute solver") {
  auto brute_solver = [](const IlpInstance& inst) -> std::optional<Assignment> {
    auto r = brute_ilp(inst);
    if (!r.feasible) return std::nullopt;
    return Assignment::from_index(r.witnesses.front(), inst.n);
  };

  IlpInstance cap({{1, 1}}, {1});
  auto max1 = optimize_by_bisection(cap, {1, 1}, Sense::Maximize, brute_solver);
  REQUIRE(max1.has_value());
  CHECK(max1->value == 1);

  auto max2 = optimize_by_bisection(cap, {2, 3}, Sense::Maximize, brute_solver);
  REQUIRE(max2.has_value());
  CHECK(max2->value == 3);
  CHECK(max2->witness == Assignment({0, 1}));

  IlpInstance infeasible({{1}}, {-1});
  CHECK_FALSE(optimize_by_bisection(infeasible, {1}, Sense::Minimize, brute_solver).has_value());
}

TEST_CASE("optimize_by_bisection matches exhaustive optimization") {
  auto brute_solver = [](const IlpInstance& inst) -> std::optional<Assignment> {
    auto r = brute_ilp(inst);
    if (!r.feasible) return std::nullopt;
    return Assignment::from_index(r.witnesses.front(), inst.n);
  };
  for (uint64_t seed = 1; seed <= 15; ++seed) {
    SplitMix64 rng(seed);
    const int n = 3 + static_cast<int>(rng.next_below(5));
    std::vector<int64_t> row(n), obj(n);
    for (auto& v : row) v = static_cast<int64_t>(rng.next_below(11)) - 5;
    for (auto& v : obj) v = static_cast<int64_t>(rng.next_below(11)) - 5;
    const int64_t b = static_cast<int64_t>(rng.next_below(11)) - 3;
    IlpInstance inst({row}, {b});

    std::optional<int64_t> best;
    for (uint64_t v = 0; v < (uint64_t{1} << n); ++v) {
      Assignment x = Assignment::from_index(v, n);
      if (!eval_ilp(inst, x)) continue;
      int64_t val = 0;
      for (int j = 0; j < n; ++j)
        if (x.bits[j]) val += obj[j];
      if (!best || val > *best) best = val;
    }
    auto got = optimize_by_bisection(inst, obj, Sense::Maximize, brute_solver);
    CHECK(got.has_value() == best.has_value());
    if (got && best) CHECK(got->value == *best);
  }
}

TEST_CASE("knapsack text round trip and parse errors") {
  KnapsackInstance k({4, 7, 9}, 13);
  std::stringstream ss;
  k.write(ss);
  auto back = KnapsackInstance::parse(ss);
  CHECK(back.coefficients == k.coefficients);
  CHECK(back.target == k.target);

  std::stringstream bad("3 5\n1 2\n");
  CHECK_THROWS_AS(KnapsackInstance::parse(bad), ParseError);
}

TEST_CASE("ilp text round trip") {
  IlpInstance inst({{1, -2, 3}, {0, 1, 1}}, {4, 1}, {0, 1});
  std::stringstream ss;
  inst.write(ss);
  auto back = IlpInstance::parse(ss);
  CHECK(back.a == inst.a);
  CHECK(back.b == inst.b);
  CHECK(back.is_equality == inst.is_equality);
}

TEST_CASE("dimacs round trip and error line numbers") {
  CnfFormula f(3, {{1, -2}, {2, 3}});
  std::stringstream ss;
  f.write_dimacs(ss);
  auto back = CnfFormula::parse_dimacs(ss);
  CHECK(back.n == 3);
  CHECK(back.clauses == f.clauses);

  std::stringstream bad("c comment\np cnf three 2\n1 0\n");
  try {
    CnfFormula::parse_dimacs(bad);
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
}

TEST_CASE("coefficient bounds enforced") {
  CHECK_THROWS(IlpInstance({{kCoeffLimit + 1}}, {0}));
  CHECK_THROWS(IlpInstance({{kCoeffLimit / 2 + 1, 0}}, {0}));
  CHECK_THROWS(IlpInstance({{1}}, {kCoeffLimit + 1}));
  // at the bound for n = 4: |a_ij| = 2^40/4 is accepted and sums stay exact
  const int64_t cap = kCoeffLimit / 4;
  IlpInstance inst({{cap, cap, cap, cap}}, {4 * cap});
  CHECK(eval_ilp(inst, Assignment({1, 1, 1, 1})));
}
