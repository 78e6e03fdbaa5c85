#include "qrefute/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <string>
#include <vector>

namespace qrefute {

namespace {

// ---------------------------------------------------------------------------
// Word-wise truth tables.
//
// Assignments over n variables are indexed 0 .. 2^n - 1; variable i (in the
// ascending variable list) maps to bit position n-1-i of the index, so index
// order is lexicographic order over (v_0, v_1, ...) with false < true. Tables
// are evaluated 64 assignments at a time.
// ---------------------------------------------------------------------------

// "variable is true" patterns for bit positions 0..5 within one word.
constexpr std::uint64_t kLowPatterns[6] = {
    0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
    0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull,
};

std::uint64_t literal_true_word(int bitpos, bool positive,
                                std::uint64_t word_index) {
  std::uint64_t on;
  if (bitpos < 6) {
    on = kLowPatterns[bitpos];
  } else {
    on = ((word_index >> (bitpos - 6)) & 1) ? ~0ull : 0ull;
  }
  return positive ? on : ~on;
}

// A clause compiled against a fixed variable ordering.
struct CompiledClause {
  std::vector<std::pair<int, bool>> lits;  // (bit position, positive)

  std::uint64_t true_word(std::uint64_t word_index) const {
    std::uint64_t w = 0;
    for (auto [bitpos, positive] : lits)
      w |= literal_true_word(bitpos, positive, word_index);
    return w;
  }
};

struct TableContext {
  std::vector<VariableId> vars;  // ascending
  std::uint64_t rows = 1;
  std::uint64_t words = 1;
  std::uint64_t last_word_mask = ~0ull;

  explicit TableContext(std::vector<VariableId> variables)
      : vars(std::move(variables)) {
    const std::size_t n = vars.size();
    if (n > 40)
      throw OracleCapError("truth table over " + std::to_string(n) +
                           " variables is not representable");
    rows = std::uint64_t{1} << n;
    words = (rows + 63) / 64;
    if (rows % 64 != 0) last_word_mask = (std::uint64_t{1} << rows) - 1;
  }

  int bitpos(VariableId v) const {
    auto it = std::lower_bound(vars.begin(), vars.end(), v);
    assert(it != vars.end() && *it == v);
    return static_cast<int>(vars.size()) - 1 -
           static_cast<int>(it - vars.begin());
  }

  CompiledClause compile(const Clause& c) const {
    CompiledClause cc;
    cc.lits.reserve(c.size());
    for (Literal l : c) cc.lits.push_back({bitpos(l.var()), l.positive()});
    return cc;
  }

  std::uint64_t word_mask(std::uint64_t w) const {
    return w + 1 == words ? last_word_mask : ~0ull;
  }

  Assignment assignment_for(std::uint64_t index) const {
    Assignment a;
    for (std::size_t i = 0; i < vars.size(); ++i)
      a.set(vars[i], ((index >> (vars.size() - 1 - i)) & 1) != 0);
    return a;
  }
};

std::vector<VariableId> merge_vars(std::vector<VariableId> a,
                                   std::span<const VariableId> b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

std::vector<VariableId> clause_vars(const Clause& c) {
  std::vector<VariableId> vars;
  vars.reserve(c.size());
  for (Literal l : c) vars.push_back(l.var());
  return vars;
}

void check_cap(std::size_t n, std::size_t max_vars, const char* where) {
  if (n > max_vars)
    throw OracleCapError(std::string(where) + ": " + std::to_string(n) +
                         " variables exceed the cap of " +
                         std::to_string(max_vars));
}

}  // namespace

OracleVerdict brute_force_sat(const Formula& f, std::size_t max_vars) {
  TableContext ctx(f.variables());
  check_cap(ctx.vars.size(), max_vars, "brute_force_sat");

  std::vector<CompiledClause> clauses;
  clauses.reserve(f.clauses.size());
  for (const Clause& c : f.clauses) clauses.push_back(ctx.compile(c));

  OracleVerdict v;
  v.method = OracleMethod::truth_table;
  for (std::uint64_t w = 0; w < ctx.words; ++w) {
    std::uint64_t sat = ctx.word_mask(w);
    for (const CompiledClause& cc : clauses) {
      sat &= cc.true_word(w);
      if (sat == 0) break;
    }
    if (sat != 0) {
      const std::uint64_t index = w * 64 + std::countr_zero(sat);
      v.status = OracleStatus::sat;
      v.model = ctx.assignment_for(index);
      v.decisions = index + 1;  // assignments examined
      return v;
    }
  }
  v.status = OracleStatus::unsat;
  v.decisions = ctx.rows;
  return v;
}

bool blocks(const Clause& c, const Assignment& a) {
  for (Literal l : c) {
    auto val = a.get(l.var());
    if (!val)
      throw IncompleteAssignmentError(
          l.var(),
          "assignment does not cover variable " + std::to_string(l.var()));
    if (*val == l.positive()) return false;
  }
  return true;
}

bool clause_implies(const Clause& c, const Clause& d) {
  TableContext ctx(merge_vars(clause_vars(c), clause_vars(d)));
  const CompiledClause cc = ctx.compile(c);
  const CompiledClause dc = ctx.compile(d);
  for (std::uint64_t w = 0; w < ctx.words; ++w) {
    // an assignment blocked by d but not by c refutes the implication
    if ((~dc.true_word(w)) & cc.true_word(w) & ctx.word_mask(w)) return false;
  }
  return true;
}

bool entails(const Formula& f, const Clause& clause, std::size_t max_vars) {
  const std::vector<VariableId> cvars = clause_vars(clause);
  TableContext ctx(merge_vars(f.variables(), cvars));
  check_cap(ctx.vars.size(), max_vars, "entails");

  std::vector<CompiledClause> clauses;
  clauses.reserve(f.clauses.size());
  for (const Clause& c : f.clauses) clauses.push_back(ctx.compile(c));
  const CompiledClause target = ctx.compile(clause);

  for (std::uint64_t w = 0; w < ctx.words; ++w) {
    std::uint64_t sat = ctx.word_mask(w);
    for (const CompiledClause& cc : clauses) {
      sat &= cc.true_word(w);
      if (sat == 0) break;
    }
    // a model of f falsifying the clause is a counterexample
    if (sat & ~target.true_word(w)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// DPLL
// ---------------------------------------------------------------------------

namespace {

struct DpllSolver {
  // literals as (variable index, positive)
  std::vector<std::vector<std::pair<int, bool>>> clauses;
  std::vector<VariableId> vars;
  std::uint64_t budget = 0;
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::vector<std::int8_t> model;  // filled on sat

  void charge() {
    if (decisions + propagations > budget)
      throw StepBudgetError("dpll step budget of " + std::to_string(budget) +
                            " exceeded");
  }

  // assign: 0 unknown, 1 true, -1 false. Returns false on conflict.
  bool propagate(std::vector<std::int8_t>& assign) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& clause : clauses) {
        int unknown = -1;
        bool unknown_positive = false;
        std::size_t n_unknown = 0;
        bool satisfied = false;
        for (auto [idx, positive] : clause) {
          const std::int8_t v = assign[idx];
          if (v == 0) {
            ++n_unknown;
            unknown = idx;
            unknown_positive = positive;
          } else if ((v > 0) == positive) {
            satisfied = true;
            break;
          }
        }
        if (satisfied) continue;
        if (n_unknown == 0) return false;
        if (n_unknown == 1) {
          assign[unknown] = unknown_positive ? 1 : -1;
          ++propagations;
          charge();
          changed = true;
        }
      }
    }
    return true;
  }

  // Assigns the smallest pure variable, if any. Pure assignments only ever
  // satisfy clauses, so they cannot create conflicts or new units.
  bool assign_one_pure(std::vector<std::int8_t>& assign) {
    std::vector<std::int8_t> seen(vars.size(), 0);  // 1 pos, 2 neg, 3 both
    for (const auto& clause : clauses) {
      bool satisfied = false;
      for (auto [idx, positive] : clause) {
        if (assign[idx] != 0 && (assign[idx] > 0) == positive) {
          satisfied = true;
          break;
        }
      }
      if (satisfied) continue;
      for (auto [idx, positive] : clause)
        if (assign[idx] == 0) seen[idx] |= positive ? 1 : 2;
    }
    for (std::size_t i = 0; i < seen.size(); ++i) {
      if (seen[i] == 1 || seen[i] == 2) {
        assign[i] = seen[i] == 1 ? 1 : -1;
        ++propagations;
        charge();
        return true;
      }
    }
    return false;
  }

  // Smallest unassigned variable in an unsatisfied clause; -1 when every
  // clause is satisfied.
  int pick_branch(const std::vector<std::int8_t>& assign) const {
    int best = -1;
    for (const auto& clause : clauses) {
      bool satisfied = false;
      int smallest = -1;
      for (auto [idx, positive] : clause) {
        if (assign[idx] != 0 && (assign[idx] > 0) == positive) {
          satisfied = true;
          break;
        }
        if (assign[idx] == 0 && (smallest == -1 || idx < smallest))
          smallest = idx;
      }
      if (satisfied) continue;
      assert(smallest != -1);  // conflicts are caught by propagate
      if (best == -1 || smallest < best) best = smallest;
    }
    return best;
  }

  bool solve(std::vector<std::int8_t> assign) {
    if (!propagate(assign)) return false;
    while (assign_one_pure(assign)) {
    }
    const int branch = pick_branch(assign);
    if (branch == -1) {
      model = std::move(assign);
      return true;
    }
    ++decisions;
    charge();
    auto with_true = assign;
    with_true[branch] = 1;
    if (solve(std::move(with_true))) return true;
    ++decisions;
    charge();
    assign[branch] = -1;
    return solve(std::move(assign));
  }
};

}  // namespace

OracleVerdict dpll_sat(const Formula& f, std::uint64_t step_budget) {
  DpllSolver solver;
  solver.vars = f.variables();
  solver.budget = step_budget;

  solver.clauses.reserve(f.clauses.size());
  for (const Clause& c : f.clauses) {
    std::vector<std::pair<int, bool>> compiled;
    compiled.reserve(c.size());
    for (Literal l : c) {
      auto it = std::lower_bound(solver.vars.begin(), solver.vars.end(), l.var());
      compiled.push_back(
          {static_cast<int>(it - solver.vars.begin()), l.positive()});
    }
    solver.clauses.push_back(std::move(compiled));
  }

  OracleVerdict v;
  v.method = OracleMethod::dpll;
  const bool sat = solver.solve(std::vector<std::int8_t>(solver.vars.size(), 0));
  v.decisions = solver.decisions;
  v.propagations = solver.propagations;
  if (sat) {
    v.status = OracleStatus::sat;
    Assignment model;
    for (std::size_t i = 0; i < solver.vars.size(); ++i)
      model.set(solver.vars[i], solver.model[i] > 0);  // unassigned -> false
    v.model = std::move(model);
  } else {
    v.status = OracleStatus::unsat;
  }
  return v;
}

}  // namespace qrefute
