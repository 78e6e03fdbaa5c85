#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "qrefute/cnf.hpp"

namespace qrefute {

enum class Verdict { claimed_sat, unsat };

struct EngineConfig {
  // Cap on processed and stored clause length. Ignored when unbounded.
  std::size_t length_bound = 3;
  // Disables the cap entirely; expansions then run to the full variable set.
  bool unbounded = false;
  // Safety net; 0 derives count_bound(n, bound) + 2. Exceeding it signals an
  // implementation bug, not a normal outcome.
  std::uint64_t max_iterations = 0;
  // Record per-iteration statistics in the report.
  bool trace = false;
  // Total stored-clause budget; exceeding it raises ClauseBudgetError.
  std::uint64_t clause_budget = 4'000'000;
};

struct InputClauseTooLongError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ClauseBudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IterationLimitError : std::logic_error {
  using std::logic_error::logic_error;
};

enum class ClauseOrigin : std::uint8_t { input, resolved, expanded };

// Deduplicating clause store. Clauses are never removed; insertion order is
// preserved and every clause carries its origin and the iteration that
// produced it (0 for input).
class ClauseDb {
 public:
  ClauseDb();

  // Returns true when the clause was new.
  bool insert(std::span<const Literal> lits, ClauseOrigin origin,
              std::uint32_t iteration);
  bool contains(std::span<const Literal> lits) const;
  bool contains(const Clause& c) const { return contains(c.lits()); }

  std::size_t size() const { return clauses_.size(); }
  const Clause& clause(std::size_t i) const { return clauses_[i]; }
  const std::vector<Clause>& clauses() const { return clauses_; }
  ClauseOrigin origin(std::size_t i) const { return origins_[i]; }
  std::uint32_t origin_iteration(std::size_t i) const {
    return origin_iterations_[i];
  }

  // Indices of stored clauses with the given length.
  std::span<const std::uint32_t> with_length(std::size_t len) const;
  std::size_t max_length() const;

  void clear();

 private:
  std::uint64_t hash_of(std::span<const Literal> lits) const;
  void rehash(std::size_t new_capacity);

  std::vector<Clause> clauses_;
  std::vector<ClauseOrigin> origins_;
  std::vector<std::uint32_t> origin_iterations_;
  std::vector<std::vector<std::uint32_t>> by_length_;
  std::vector<std::uint32_t> table_;  // open addressing, UINT32_MAX = empty
};

struct IterationRecord {
  std::uint64_t added = 0;
  std::uint64_t discarded_long = 0;
  std::uint64_t discarded_tautologies = 0;
  std::uint64_t db_size = 0;
};

struct SolveReport {
  Verdict verdict = Verdict::claimed_sat;
  std::uint32_t iterations = 0;
  std::vector<std::uint64_t> added_per_iteration;
  std::uint64_t discarded_long = 0;
  std::uint64_t discarded_tautologies = 0;
  std::uint64_t final_db_size = 0;
  std::optional<VariableId> contradiction_variable;
  double elapsed_seconds = 0.0;
  std::vector<IterationRecord> trace;  // filled when EngineConfig::trace
};

// The bounded implication procedure: repeatedly resolve all clause pairs and
// expand all clauses up to the length bound, inserting new clauses only at
// the end of each outer pass so they first participate in the next one;
// answer unsat as soon as two complementary unit clauses are stored, and
// "satisfiable" once a pass inserts nothing. That satisfiability answer is
// a claim, not a fact: exhibiting inputs where it is wrong is the point of
// this repository.
class QuigleyEngine {
 public:
  QuigleyEngine(const Formula& formula, EngineConfig config);
  // Explicit expansion universe; must contain every formula variable.
  QuigleyEngine(const Formula& formula, EngineConfig config,
                std::vector<VariableId> universe);

  // Runs outer passes until a verdict is reached.
  SolveReport solve();

  // One outer pass: resolve, expand, insert.
  IterationRecord run_iteration();

  // Smallest variable stored as both (v) and (not v), if any.
  std::optional<VariableId> find_unit_contradiction() const;

  const ClauseDb& db() const { return db_; }
  std::span<const VariableId> universe() const { return universe_; }
  std::uint32_t iteration() const { return iteration_; }

 private:
  std::size_t expansion_cap() const;

  EngineConfig config_;
  std::vector<VariableId> universe_;
  std::uint64_t max_iterations_ = 0;
  ClauseDb db_;
  ClauseDb staging_;
  std::uint32_t iteration_ = 0;
  // Clauses at indices >= frontier_begin_ joined at the end of the previous
  // pass; older pairs were already processed and can imply nothing new.
  std::uint32_t frontier_begin_ = 0;
  std::vector<Literal> scratch_;
};

SolveReport quigley_solve(const Formula& formula, EngineConfig config = {});

// Smallest variable stored as both (v) and (not v) in any clause store.
std::optional<VariableId> find_unit_contradiction(const ClauseDb& db);

// Expansion fan-out of the unit clause (x1) in the unbounded procedure on
// x1 /\ x2 /\ ... /\ xn, measured by enumeration. count_by_length[k] is the
// number of distinct expansions of length k.
struct BlowupReport {
  std::uint32_t n = 0;
  std::vector<std::uint64_t> count_by_length;
  std::uint64_t full_length = 0;
  std::uint64_t total = 0;
};

BlowupReport blowup_demo(std::uint32_t n,
                         std::uint64_t clause_budget = std::uint64_t{1} << 25);

}  // namespace qrefute
