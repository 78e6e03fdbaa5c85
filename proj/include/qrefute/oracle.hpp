#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "qrefute/cnf.hpp"

namespace qrefute {

enum class OracleStatus { sat, unsat };

enum class OracleMethod { truth_table, dpll };

struct OracleVerdict {
  OracleStatus status = OracleStatus::unsat;
  std::optional<Assignment> model;  // present iff sat
  OracleMethod method = OracleMethod::truth_table;
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;

  bool sat() const { return status == OracleStatus::sat; }
};

struct OracleCapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StepBudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kBruteForceVariableCap = 26;
inline constexpr std::uint64_t kDpllStepBudget = 50'000'000;

// Exhaustive truth-table verdict. The model, when sat, is the
// lexicographically smallest satisfying assignment over the formula's
// variables in ascending order (false before true). Throws OracleCapError
// above max_vars.
OracleVerdict brute_force_sat(const Formula& f,
                              std::size_t max_vars = kBruteForceVariableCap);

// DPLL with unit propagation and pure-literal elimination. Branching is
// deterministic: smallest unassigned variable, true first. Throws
// StepBudgetError when decisions + propagations exceed the budget.
OracleVerdict dpll_sat(const Formula& f,
                       std::uint64_t step_budget = kDpllStepBudget);

// True iff every literal of the clause is false under the assignment.
// The assignment must cover the clause's variables.
bool blocks(const Clause& c, const Assignment& a);

// True iff every assignment (over the union of both clauses' variables)
// blocked by d is also blocked by c; semantically, c entails d.
bool clause_implies(const Clause& c, const Clause& d);

// True iff f /\ not(clause) is unsatisfiable, by truth table over the union
// of variable sets. Throws OracleCapError above max_vars.
bool entails(const Formula& f, const Clause& clause,
             std::size_t max_vars = kBruteForceVariableCap);

}  // namespace qrefute
