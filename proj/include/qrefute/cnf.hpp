#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qrefute {

// 1-based variable identifier, DIMACS-compatible.
using VariableId = std::int32_t;

struct OverflowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IncompleteAssignmentError : std::runtime_error {
  IncompleteAssignmentError(VariableId var, const std::string& what)
      : std::runtime_error(what), missing_variable(var) {}
  VariableId missing_variable;
};

// A variable in positive or negated form. Ordering is by variable id with
// positive before negative, which fixes the canonical clause layout.
class Literal {
 public:
  Literal() = default;
  Literal(VariableId var, bool positive)
      : code_(var * 2 + (positive ? 0 : 1)) {}

  static Literal from_dimacs(std::int32_t lit) {
    if (lit == 0) throw std::invalid_argument("0 is not a DIMACS literal");
    return Literal(lit > 0 ? lit : -lit, lit > 0);
  }
  std::int32_t to_dimacs() const { return positive() ? var() : -var(); }

  VariableId var() const { return static_cast<VariableId>(code_ >> 1); }
  bool positive() const { return (code_ & 1) == 0; }
  Literal negated() const {
    Literal l;
    l.code_ = code_ ^ 1;
    return l;
  }
  std::int32_t encoded() const { return code_; }

  friend auto operator<=>(Literal, Literal) = default;

 private:
  std::int32_t code_ = 0;
};

// Disjunction of literals in canonical form: sorted ascending by variable,
// no variable occurring twice. The empty clause is representable but only
// ever arises from resolving two complementary unit clauses.
class Clause {
 public:
  Clause() = default;
  // `lits` must already be canonical; use canonicalize_clause() for raw input.
  explicit Clause(std::vector<Literal> lits);

  std::span<const Literal> lits() const { return lits_; }
  std::size_t size() const { return lits_.size(); }
  bool empty() const { return lits_.empty(); }

  bool contains_var(VariableId v) const;
  // The literal on variable v, if present.
  std::optional<Literal> literal_on(VariableId v) const;

  auto begin() const { return lits_.begin(); }
  auto end() const { return lits_.end(); }

  friend bool operator==(const Clause&, const Clause&) = default;
  friend auto operator<=>(const Clause&, const Clause&) = default;

 private:
  std::vector<Literal> lits_;
};

std::ostream& operator<<(std::ostream& os, const Clause& c);

// Collapses duplicate literals and sorts by variable id. Returns nullopt for
// a tautology (both polarities of some variable present); tautologies are a
// normal outcome, not an error.
std::optional<Clause> canonicalize_clause(std::vector<Literal> lits);

// Convenience construction from DIMACS-style signed integers.
std::optional<Clause> clause_from_ints(std::span<const std::int32_t> lits);
std::optional<Clause> clause_from_ints(std::initializer_list<std::int32_t> lits);

struct Formula {
  std::vector<Clause> clauses;

  // Distinct variables referenced by the clauses, ascending.
  std::vector<VariableId> variables() const;
  std::size_t num_variables() const { return variables().size(); }
  VariableId max_variable_id() const;

  friend bool operator==(const Formula&, const Formula&) = default;
};

std::ostream& operator<<(std::ostream& os, const Formula& f);

struct NormalizeStats {
  std::size_t tautologies_dropped = 0;
  std::size_t duplicate_clauses_dropped = 0;
};

// Builds a normalized formula from raw literal vectors: canonicalize every
// clause, drop tautologies, drop duplicate clauses, sort clauses into
// canonical order. Satisfiability is preserved.
Formula normalize(const std::vector<std::vector<Literal>>& raw_clauses,
                  NormalizeStats* stats = nullptr);

// Renormalizes an existing formula (clauses are canonical by construction,
// so only deduplication and canonical clause order apply).
Formula normalize(const Formula& f, NormalizeStats* stats = nullptr);

// Number of distinct canonical clauses of length 1..max_len over n variables:
// sum over k of C(n,k) * 2^k. Throws OverflowError when the count does not
// fit in 64 bits.
std::uint64_t count_bound(std::uint64_t num_variables, std::uint64_t max_len);

// A (possibly partial) mapping from variables to truth values.
class Assignment {
 public:
  Assignment() = default;

  void set(VariableId v, bool value);
  std::optional<bool> get(VariableId v) const;
  bool defined(VariableId v) const { return get(v).has_value(); }
  std::size_t size() const { return entries_.size(); }

  // Complete relative to a formula: every referenced variable is mapped.
  bool complete_for(const Formula& f) const;

  std::span<const std::pair<VariableId, bool>> entries() const {
    return entries_;
  }

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<std::pair<VariableId, bool>> entries_;  // sorted by variable
};

std::ostream& operator<<(std::ostream& os, const Assignment& a);

// Standard CNF semantics. Throws IncompleteAssignmentError naming the first
// missing variable.
bool evaluate(const Clause& c, const Assignment& a);
bool evaluate(const Formula& f, const Assignment& a);

}  // namespace qrefute
