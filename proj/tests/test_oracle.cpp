#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "qrefute/forge.hpp"
#include "qrefute/oracle.hpp"

using namespace qrefute;
using namespace qrefute::test;

TEST_SUITE_BEGIN("oracle");

TEST_CASE("brute force: empty formula is sat with the empty model") {
  const auto v = brute_force_sat(Formula{});
  CHECK(v.sat());
  REQUIRE(v.model.has_value());
  CHECK(v.model->size() == 0);
}

TEST_CASE("brute force: complementary units are unsat") {
  CHECK(!brute_force_sat(fml({{1}, {-1}})).sat());
}

TEST_CASE("brute force: complete 4CNF over 4 variables is unsat") {
  const Formula f = complete_unsat_cnf(4);
  CHECK(f.clauses.size() == 16);
  CHECK(!brute_force_sat(f).sat());
}

TEST_CASE("brute force model is the lexicographically smallest") {
  // (x1 | x2): x1=F x2=F fails, x1=F x2=T is the first success
  const auto v = brute_force_sat(fml({{1, 2}}));
  REQUIRE(v.sat());
  CHECK(v.model->get(1) == false);
  CHECK(v.model->get(2) == true);

  const auto w = brute_force_sat(fml({{-3}, {1, 3}}));
  REQUIRE(w.sat());
  CHECK(w.model->get(1) == true);
  CHECK(w.model->get(3) == false);
}

TEST_CASE("brute force rejects oversized formulas") {
  std::vector<std::vector<Literal>> rawcs;
  std::vector<Literal> wide;
  for (VariableId v = 1; v <= 27; ++v) wide.push_back(Literal(v, true));
  rawcs.push_back(wide);
  CHECK_THROWS_AS(brute_force_sat(normalize(rawcs)), OracleCapError);
}

TEST_CASE("dpll: split of the complete 4CNF is unsat") {
  const Formula base = complete_unsat_cnf(4);
  const auto [phi, meta] = split_once(base);
  CHECK(phi.clauses.size() == 32);
  CHECK(phi.num_variables() == 20);
  const auto v = dpll_sat(phi);
  CHECK(!v.sat());
  CHECK(v.method == OracleMethod::dpll);
}

TEST_CASE("dpll: propagation forces the model") {
  const auto v = dpll_sat(fml({{1, 2}, {-2}}));
  REQUIRE(v.sat());
  CHECK(v.model->get(1) == true);
  CHECK(v.model->get(2) == false);
  CHECK(v.decisions == 0);
}

TEST_CASE("dpll: 256-clause split chain is unsat") {
  const Formula base = complete_unsat_cnf(6);
  const auto [phi0, metas] = split_to_3cnf(base, 2);
  CHECK(phi0.clauses.size() == 256);
  CHECK(phi0.num_variables() == 198);
  CHECK(!dpll_sat(phi0).sat());
}

TEST_CASE("dpll honors its step budget") {
  const Formula f = complete_unsat_cnf(6);
  CHECK_THROWS_AS(dpll_sat(f, 3), StepBudgetError);
}

TEST_CASE("blocks") {
  CHECK(blocks(cls({1, 2}), assign({{1, false}, {2, false}})));
  CHECK(!blocks(cls({1, 2}), assign({{1, true}, {2, false}})));
  CHECK(blocks(cls({-1}), assign({{1, true}})));
  CHECK_THROWS_AS(blocks(cls({1, 2}), assign({{1, false}})),
                  IncompleteAssignmentError);
}

TEST_CASE("blocks is the negation of evaluate") {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 100; ++i) {
    const Clause c = random_clause(rng, 10, 1 + rng() % 10);
    std::vector<VariableId> vars;
    for (Literal l : c) vars.push_back(l.var());
    for (const Assignment& a : all_assignments(vars))
      CHECK(blocks(c, a) == !evaluate(c, a));
  }
}

TEST_CASE("clause implication") {
  CHECK(clause_implies(cls({1}), cls({1, 2})));
  CHECK(!clause_implies(cls({1, 2}), cls({1})));  // x1=F, x2=T blocks d only
  CHECK(clause_implies(cls({1, -2}), cls({1, -2})));
}

TEST_CASE("subset of literals implies the superset clause") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 200; ++i) {
    const Clause c = random_clause(rng, 8, 1 + rng() % 4);
    const Clause d = random_clause(rng, 8, 1 + rng() % 4);
    bool subset = true;
    for (Literal l : c)
      if (d.literal_on(l.var()) != l) subset = false;
    if (subset) CHECK(clause_implies(c, d));
    // and implication agrees with the truth-table definition of blocking
    std::vector<VariableId> vars;
    for (Literal l : c) vars.push_back(l.var());
    for (Literal l : d) vars.push_back(l.var());
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    bool expected = true;
    for (const Assignment& a : all_assignments(vars))
      if (blocks(d, a) && !blocks(c, a)) expected = false;
    CHECK(clause_implies(c, d) == expected);
  }
}

TEST_CASE("entails") {
  CHECK(entails(fml({{1}, {2}}), cls({1, 2})));
  CHECK(entails(fml({{1, 2, 3}, {-1, 4, 5}}), cls({2, 3, 4, 5})));
  CHECK(!entails(fml({{1, 2}}), cls({1})));  // countermodel x1=F, x2=T
}

TEST_CASE("the two oracle methods agree") {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 500; ++i) {
    const VariableId nv = 1 + rng() % 14;
    const std::size_t nc = 1 + rng() % 40;
    const Formula f = random_formula(rng, nv, nc, 1, std::min<std::size_t>(3, nv));
    const auto brute = brute_force_sat(f);
    const auto dpll = dpll_sat(f);
    CHECK(brute.status == dpll.status);
    if (brute.sat()) CHECK(evaluate(f, *brute.model));
    if (dpll.sat()) {
      CHECK(dpll.model->complete_for(f));
      CHECK(evaluate(f, *dpll.model));
    }
  }
}

TEST_SUITE_END();
