#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qrefute/cnf.hpp"
#include "qrefute/engine.hpp"

namespace qrefute {

struct RuleSet {
  bool resolution = true;
  bool expansion = false;
};

// One re-derivable step of a lemma scenario's witness chain.
struct ScenarioStep {
  enum class Kind { resolution, expansion };
  Kind kind = Kind::resolution;
  std::array<std::string, 2> inputs;  // expansion uses inputs[0] only
  VariableId variable = 0;            // pivot, or the added terminal
  std::string output;
};

// A named clause family refuting one of the procedure's supporting lemmas
// (5.11, 5.17 or 5.18): premises whose chain derives the target through an
// intermediate of length k, while the closure capped at k-1 never reaches it.
struct LemmaScenario {
  std::string name;
  int k = 4;
  std::vector<std::pair<std::string, Clause>> premises;
  std::vector<std::pair<std::string, Clause>> derived;  // chain clauses incl. target
  std::vector<ScenarioStep> chain;
  std::string target;
  RuleSet rules;

  const Clause& clause(const std::string& clause_name) const;
  std::vector<VariableId> scenario_variables() const;
};

struct CheckReport {
  bool hypotheses_ok = false;
  std::string failure;  // set when a length check or chain step fails
  std::uint64_t bounded_closure_size = 0;
  bool target_in_bounded_closure = false;
  bool target_in_relaxed_closure = false;
  std::vector<std::string> witness_chain;

  bool confirmed() const {
    return hypotheses_ok && !target_in_bounded_closure &&
           target_in_relaxed_closure;
  }
};

// The arbitrary-k family (k >= 4): A..C of length k-1 resolve to the target D
// of length k only through the length-k intermediate E.
LemmaScenario lemma511_instance(int k);
// Fixed k = 4 scenarios.
LemmaScenario lemma517_instance();
LemmaScenario lemma518_instance();

// Re-derives the chain with the named rules and pivots, then computes the
// closure capped at k-1 and at k and reports target membership in each.
CheckReport check_scenario(const LemmaScenario& s);

// Least fixpoint of the selected rules where derived clauses over max_len are
// never stored or used. Seed clauses always participate, even when longer
// than the cap; the cap restricts what they may imply.
ClauseDb bounded_closure(std::span<const Clause> seed, std::size_t max_len,
                         RuleSet rules, std::span<const VariableId> universe,
                         std::uint64_t clause_budget = 1'000'000);

// Widths for which repeated halving lands exactly on 3: b_n = 2^n + 2,
// equivalently b_0 = 3, b_n = 2(b_{n-1} - 1).
std::uint64_t b_sequence(std::uint32_t n);

struct WidthError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AttemptBudgetError : std::runtime_error {
  AttemptBudgetError(std::uint64_t n, const std::string& what)
      : std::runtime_error(what), attempts(n) {}
  std::uint64_t attempts;
};

// Bookkeeping for one application of the splitting transform.
struct SplitMetadata {
  std::vector<VariableId> original_variables;  // ascending
  std::vector<VariableId> fresh_variables;     // one per input clause, ascending
  struct FreshOccurrence {
    std::uint32_t positive_clause = 0;  // index into the split formula
    std::uint32_t negative_clause = 0;
  };
  std::vector<FreshOccurrence> fresh_occurrences;  // parallel to fresh_variables

  bool is_fresh(VariableId v) const;
  bool is_original(VariableId v) const;
  // The literal sets of the split formula, partitioned by variable kind.
  std::vector<Literal> original_literals(const Formula& split) const;
  std::vector<Literal> fresh_literals(const Formula& split) const;
};

// Replaces each width-w clause (w even, >= 4) by two width-(w/2 + 1) clauses:
// the first half plus a fresh variable, the second half plus its negation.
// Fresh ids start right after the largest existing id, in input clause order;
// halves follow the canonical literal order.
std::pair<Formula, SplitMetadata> split_once(const Formula& phi);

// Applies split_once k times; phi_k must have uniform width b_sequence(k),
// and the result has width 3.
std::pair<Formula, std::vector<SplitMetadata>> split_to_3cnf(
    const Formula& phi_k, std::uint32_t k);

// All 2^w sign patterns over w consecutive variables: unsatisfiable because
// every assignment falsifies its complementary clause.
Formula complete_unsat_cnf(std::size_t width, VariableId first_var = 1);

// Uniform random clauses with `width` distinct variables each, normalized.
Formula random_kcnf(std::size_t width, VariableId num_vars,
                    std::size_t num_clauses, std::mt19937_64& rng);

// Rejection-samples random_kcnf until the brute-force oracle certifies UNSAT.
Formula random_unsat_kcnf(std::size_t width, VariableId num_vars,
                          std::size_t num_clauses, std::uint64_t seed,
                          std::uint64_t max_attempts = 10'000);

}  // namespace qrefute
