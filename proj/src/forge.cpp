#include "qrefute/forge.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <sstream>

#include "qrefute/oracle.hpp"
#include "qrefute/rules.hpp"

namespace qrefute {

namespace {

Clause make_clause(std::vector<Literal> lits) {
  auto c = canonicalize_clause(std::move(lits));
  assert(c.has_value());
  return std::move(*c);
}

Literal pos(VariableId v) { return Literal(v, true); }
Literal neg(VariableId v) { return Literal(v, false); }

// Positive literals lo..hi plus any extras.
Clause range_clause(VariableId lo, VariableId hi, std::vector<Literal> extra = {}) {
  for (VariableId v = lo; v <= hi; ++v) extra.push_back(pos(v));
  return make_clause(std::move(extra));
}

}  // namespace

const Clause& LemmaScenario::clause(const std::string& clause_name) const {
  for (const auto& [n, c] : premises)
    if (n == clause_name) return c;
  for (const auto& [n, c] : derived)
    if (n == clause_name) return c;
  throw std::out_of_range("scenario " + name + " has no clause named " +
                          clause_name);
}

std::vector<VariableId> LemmaScenario::scenario_variables() const {
  std::vector<VariableId> vars;
  auto collect = [&](const std::vector<std::pair<std::string, Clause>>& cs) {
    for (const auto& [n, c] : cs)
      for (Literal l : c) vars.push_back(l.var());
  };
  collect(premises);
  collect(derived);
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

LemmaScenario lemma511_instance(int k) {
  if (k < 4)
    throw std::invalid_argument("the 5.11 family is defined for k >= 4");
  LemmaScenario s;
  s.name = "511";
  s.k = k;
  s.rules = {.resolution = true, .expansion = false};
  // A = (a1 ... a_{k-1}), B = (~a1 a4 ... a_{k+1}), C = (~a1 ~a2 a4 ... a_k),
  // D = (~a1 a3 ... a_{k+1}), E = (a2 ... a_{k+1}).
  s.premises.emplace_back("A", range_clause(1, k - 1));
  s.premises.emplace_back("B", range_clause(4, k + 1, {neg(1)}));
  s.premises.emplace_back("C", range_clause(4, k, {neg(1), neg(2)}));
  s.derived.emplace_back("E", range_clause(2, k + 1));
  s.derived.emplace_back("D", range_clause(3, k + 1, {neg(1)}));
  s.chain.push_back({ScenarioStep::Kind::resolution, {"A", "B"}, 1, "E"});
  s.chain.push_back({ScenarioStep::Kind::resolution, {"C", "E"}, 2, "D"});
  s.target = "D";
  return s;
}

LemmaScenario lemma517_instance() {
  LemmaScenario s;
  s.name = "517";
  s.k = 4;
  s.rules = {.resolution = true, .expansion = false};
  s.premises.emplace_back("A", make_clause({pos(1), pos(2), pos(5)}));
  s.premises.emplace_back("B", make_clause({pos(3), pos(4), neg(5)}));
  s.premises.emplace_back("C", make_clause({neg(1), pos(2), pos(6)}));
  s.premises.emplace_back("D", make_clause({pos(3), pos(4), neg(6)}));
  s.derived.emplace_back("E", make_clause({pos(1), pos(2), pos(3), pos(4)}));
  s.derived.emplace_back("F", make_clause({neg(1), pos(2), pos(3), pos(4)}));
  s.derived.emplace_back("G", make_clause({pos(2), pos(3), pos(4)}));
  s.chain.push_back({ScenarioStep::Kind::resolution, {"A", "B"}, 5, "E"});
  s.chain.push_back({ScenarioStep::Kind::resolution, {"C", "D"}, 6, "F"});
  s.chain.push_back({ScenarioStep::Kind::resolution, {"E", "F"}, 1, "G"});
  s.target = "G";
  return s;
}

LemmaScenario lemma518_instance() {
  LemmaScenario s;
  s.name = "518";
  s.k = 4;
  s.rules = {.resolution = true, .expansion = true};
  s.premises.emplace_back("A", make_clause({pos(1), pos(2), pos(5)}));
  s.premises.emplace_back("B", make_clause({pos(3), pos(4), neg(5)}));
  s.premises.emplace_back("C", make_clause({neg(1), pos(3), pos(4)}));
  s.derived.emplace_back("D", make_clause({pos(1), pos(2), pos(3), pos(4)}));
  s.derived.emplace_back("E", make_clause({neg(1), pos(2), pos(3), pos(4)}));
  s.derived.emplace_back("F", make_clause({pos(2), pos(3), pos(4)}));
  s.chain.push_back({ScenarioStep::Kind::resolution, {"A", "B"}, 5, "D"});
  s.chain.push_back({ScenarioStep::Kind::expansion, {"C", ""}, 2, "E"});
  s.chain.push_back({ScenarioStep::Kind::resolution, {"D", "E"}, 1, "F"});
  s.target = "F";
  return s;
}

ClauseDb bounded_closure(std::span<const Clause> seed, std::size_t max_len,
                         RuleSet rules, std::span<const VariableId> universe,
                         std::uint64_t clause_budget) {
  ClauseDb db;
  std::deque<std::uint32_t> queue;
  for (const Clause& c : seed) {
    if (db.insert(c.lits(), ClauseOrigin::input, 0))
      queue.push_back(static_cast<std::uint32_t>(db.size() - 1));
  }

  std::vector<Literal> scratch;
  // Additions are buffered per processed clause so the pair scan never reads
  // from a reallocating store.
  std::vector<std::pair<std::vector<Literal>, ClauseOrigin>> pending;

  while (!queue.empty()) {
    const std::uint32_t i = queue.front();
    queue.pop_front();
    pending.clear();

    auto collect = [&](std::span<const Literal> lits, ClauseOrigin origin) {
      if (db.contains(lits)) return;
      pending.emplace_back(std::vector<Literal>(lits.begin(), lits.end()),
                           origin);
    };

    if (rules.resolution) {
      // pairing i with everything present now covers each pair at least once
      const std::size_t snapshot = db.size();
      for (std::size_t j = 0; j < snapshot; ++j) {
        if (j == i) continue;
        for_each_resolvent(db.clause(i), db.clause(j), scratch,
                           [&](VariableId, std::span<const Literal> lits,
                               bool tautological) {
                             if (tautological || lits.size() > max_len) return;
                             collect(lits, ClauseOrigin::resolved);
                           });
      }
    }
    if (rules.expansion && db.clause(i).size() < max_len) {
      for_each_expansion(db.clause(i), max_len, universe, scratch,
                         [&](std::span<const Literal> lits) {
                           collect(lits, ClauseOrigin::expanded);
                         });
    }

    for (auto& [lits, origin] : pending) {
      if (!db.insert(lits, origin, 1)) continue;
      if (db.size() > clause_budget)
        throw ClauseBudgetError("closure exceeds the clause budget of " +
                                std::to_string(clause_budget));
      queue.push_back(static_cast<std::uint32_t>(db.size() - 1));
    }
  }
  return db;
}

namespace {

std::string step_to_string(const ScenarioStep& step) {
  std::ostringstream os;
  if (step.kind == ScenarioStep::Kind::resolution) {
    os << "resolve(" << step.inputs[0] << ", " << step.inputs[1]
       << ") on a" << step.variable << " -> " << step.output;
  } else {
    os << "expand(" << step.inputs[0] << ", a" << step.variable << ") -> "
       << step.output;
  }
  return os.str();
}

}  // namespace

CheckReport check_scenario(const LemmaScenario& s) {
  CheckReport report;

  // Length hypotheses: premises below k, chain intermediates exactly k,
  // target k or k-1.
  const std::size_t k = static_cast<std::size_t>(s.k);
  for (const auto& [name, c] : s.premises) {
    if (c.size() >= k) {
      report.failure = "premise " + name + " has length " +
                       std::to_string(c.size()) + ", expected < " +
                       std::to_string(k);
      return report;
    }
  }
  for (const auto& [name, c] : s.derived) {
    if (name == s.target) {
      if (c.size() != k && c.size() != k - 1) {
        report.failure = "target " + name + " has length " +
                         std::to_string(c.size());
        return report;
      }
    } else if (c.size() != k) {
      report.failure = "chain clause " + name + " has length " +
                       std::to_string(c.size()) + ", expected " +
                       std::to_string(k);
      return report;
    }
  }

  // Re-derive the chain with the named rule and pivot.
  for (const ScenarioStep& step : s.chain) {
    const Clause& expected = s.clause(step.output);
    bool ok = false;
    if (step.kind == ScenarioStep::Kind::resolution) {
      for (const Resolvent& r :
           resolve(s.clause(step.inputs[0]), s.clause(step.inputs[1]))) {
        if (!r.tautological() && r.pivot == step.variable &&
            *r.clause == expected) {
          ok = true;
          break;
        }
      }
    } else {
      auto [with_pos, with_neg] = expand(s.clause(step.inputs[0]), step.variable);
      ok = with_pos == expected || with_neg == expected;
    }
    if (!ok) {
      report.failure = "chain step failed: " + step_to_string(step);
      return report;
    }
    report.witness_chain.push_back(step_to_string(step));
  }
  report.hypotheses_ok = true;

  std::vector<Clause> seeds;
  seeds.reserve(s.premises.size());
  for (const auto& [name, c] : s.premises) seeds.push_back(c);
  const std::vector<VariableId> universe = s.scenario_variables();
  const Clause& target = s.clause(s.target);

  ClauseDb bounded = bounded_closure(seeds, k - 1, s.rules, universe);
  report.bounded_closure_size = bounded.size();
  report.target_in_bounded_closure = bounded.contains(target);

  ClauseDb relaxed = bounded_closure(seeds, k, s.rules, universe);
  report.target_in_relaxed_closure = relaxed.contains(target);
  return report;
}

std::uint64_t b_sequence(std::uint32_t n) {
  if (n >= 64)
    throw OverflowError("b_sequence(" + std::to_string(n) +
                        ") overflows 64 bits");
  return (std::uint64_t{1} << n) + 2;
}

bool SplitMetadata::is_fresh(VariableId v) const {
  return std::binary_search(fresh_variables.begin(), fresh_variables.end(), v);
}

bool SplitMetadata::is_original(VariableId v) const {
  return std::binary_search(original_variables.begin(),
                            original_variables.end(), v);
}

std::vector<Literal> SplitMetadata::original_literals(const Formula& split) const {
  std::vector<Literal> out;
  for (const Clause& c : split.clauses)
    for (Literal l : c)
      if (is_original(l.var())) out.push_back(l);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Literal> SplitMetadata::fresh_literals(const Formula& split) const {
  std::vector<Literal> out;
  for (const Clause& c : split.clauses)
    for (Literal l : c)
      if (is_fresh(l.var())) out.push_back(l);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::pair<Formula, SplitMetadata> split_once(const Formula& phi) {
  if (phi.clauses.empty())
    throw WidthError("cannot split an empty formula");
  const std::size_t w = phi.clauses.front().size();
  for (const Clause& c : phi.clauses) {
    if (c.size() != w)
      throw WidthError("non-uniform clause width: found " +
                       std::to_string(c.size()) + " and " + std::to_string(w));
  }
  if (w % 2 != 0 || w < 4)
    throw WidthError("clause width must be even and at least 4, got " +
                     std::to_string(w));

  SplitMetadata meta;
  meta.original_variables = phi.variables();
  const VariableId first_fresh = phi.max_variable_id() + 1;

  std::vector<Clause> out;
  out.reserve(2 * phi.clauses.size());
  for (std::size_t i = 0; i < phi.clauses.size(); ++i) {
    const auto lits = phi.clauses[i].lits();
    const VariableId fresh = first_fresh + static_cast<VariableId>(i);

    std::vector<Literal> first_half(lits.begin(), lits.begin() + w / 2);
    first_half.push_back(pos(fresh));  // fresh id exceeds all others
    std::vector<Literal> second_half(lits.begin() + w / 2, lits.end());
    second_half.push_back(neg(fresh));

    out.emplace_back(std::move(first_half));
    out.emplace_back(std::move(second_half));
    meta.fresh_variables.push_back(fresh);
  }

  Formula split = normalize(Formula{std::move(out)});
  assert(split.clauses.size() == 2 * phi.clauses.size());

  meta.fresh_occurrences.resize(meta.fresh_variables.size());
  for (std::uint32_t idx = 0; idx < split.clauses.size(); ++idx) {
    for (Literal l : split.clauses[idx]) {
      if (l.var() < first_fresh) continue;
      auto& occ = meta.fresh_occurrences[l.var() - first_fresh];
      (l.positive() ? occ.positive_clause : occ.negative_clause) = idx;
    }
  }
  return {std::move(split), std::move(meta)};
}

std::pair<Formula, std::vector<SplitMetadata>> split_to_3cnf(
    const Formula& phi_k, std::uint32_t k) {
  const std::uint64_t expected_width = b_sequence(k);
  for (const Clause& c : phi_k.clauses) {
    if (c.size() != expected_width)
      throw WidthError("clause width " + std::to_string(c.size()) +
                       " does not match b_" + std::to_string(k) + " = " +
                       std::to_string(expected_width));
  }

  Formula current = phi_k;
  std::vector<SplitMetadata> metas;
  metas.reserve(k);
  for (std::uint32_t step = 0; step < k; ++step) {
    auto [next, meta] = split_once(current);
    current = std::move(next);
    metas.push_back(std::move(meta));
  }
  return {std::move(current), std::move(metas)};
}

Formula complete_unsat_cnf(std::size_t width, VariableId first_var) {
  if (width < 1) throw WidthError("width must be at least 1");
  if (width > 20)
    throw WidthError("width " + std::to_string(width) +
                     " is beyond the generation budget");
  if (first_var < 1) throw std::invalid_argument("variables are 1-based");

  std::vector<Clause> clauses;
  clauses.reserve(std::size_t{1} << width);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << width); ++mask) {
    std::vector<Literal> lits;
    lits.reserve(width);
    for (std::size_t j = 0; j < width; ++j) {
      const bool negated = (mask >> (width - 1 - j)) & 1;
      lits.push_back(Literal(first_var + static_cast<VariableId>(j), !negated));
    }
    clauses.emplace_back(std::move(lits));
  }
  return Formula{std::move(clauses)};  // already canonical and sorted
}

Formula random_kcnf(std::size_t width, VariableId num_vars,
                    std::size_t num_clauses, std::mt19937_64& rng) {
  if (num_vars < 1 || static_cast<std::size_t>(num_vars) < width)
    throw std::invalid_argument("need at least " + std::to_string(width) +
                                " variables for width-" + std::to_string(width) +
                                " clauses");

  std::vector<VariableId> pool(num_vars);
  std::vector<std::vector<Literal>> raw;
  raw.reserve(num_clauses);
  for (std::size_t c = 0; c < num_clauses; ++c) {
    for (VariableId v = 0; v < num_vars; ++v) pool[v] = v + 1;
    std::vector<Literal> lits;
    lits.reserve(width);
    for (std::size_t t = 0; t < width; ++t) {
      const std::size_t pick = t + rng() % (num_vars - t);
      std::swap(pool[t], pool[pick]);
      lits.push_back(Literal(pool[t], (rng() & 1) == 0));
    }
    raw.push_back(std::move(lits));
  }
  return normalize(raw);
}

Formula random_unsat_kcnf(std::size_t width, VariableId num_vars,
                          std::size_t num_clauses, std::uint64_t seed,
                          std::uint64_t max_attempts) {
  std::mt19937_64 rng(seed);
  for (std::uint64_t attempt = 1; attempt <= max_attempts; ++attempt) {
    Formula f = random_kcnf(width, num_vars, num_clauses, rng);
    if (!brute_force_sat(f).sat()) return f;
  }
  throw AttemptBudgetError(
      max_attempts, "no unsatisfiable formula found in " +
                        std::to_string(max_attempts) + " attempts (width " +
                        std::to_string(width) + ", " +
                        std::to_string(num_vars) + " vars, " +
                        std::to_string(num_clauses) + " clauses, seed " +
                        std::to_string(seed) + ")");
}

}  // namespace qrefute
