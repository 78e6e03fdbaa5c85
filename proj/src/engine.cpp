#include "qrefute/engine.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <string>

#include "qrefute/rules.hpp"

namespace qrefute {

// ---------------------------------------------------------------------------
// ClauseDb
// ---------------------------------------------------------------------------

namespace {
constexpr std::uint32_t kEmptySlot = UINT32_MAX;
constexpr std::size_t kInitialTableSize = 1024;  // power of two
}  // namespace

ClauseDb::ClauseDb() : table_(kInitialTableSize, kEmptySlot) {}

std::uint64_t ClauseDb::hash_of(std::span<const Literal> lits) const {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (Literal l : lits) {
    h ^= static_cast<std::uint32_t>(l.encoded());
    h *= 1099511628211ull;
  }
  return h;
}

void ClauseDb::rehash(std::size_t new_capacity) {
  table_.assign(new_capacity, kEmptySlot);
  const std::uint64_t mask = new_capacity - 1;
  for (std::uint32_t i = 0; i < clauses_.size(); ++i) {
    std::uint64_t slot = hash_of(clauses_[i].lits()) & mask;
    while (table_[slot] != kEmptySlot) slot = (slot + 1) & mask;
    table_[slot] = i;
  }
}

bool ClauseDb::contains(std::span<const Literal> lits) const {
  const std::uint64_t mask = table_.size() - 1;
  std::uint64_t slot = hash_of(lits) & mask;
  while (table_[slot] != kEmptySlot) {
    const Clause& c = clauses_[table_[slot]];
    if (std::ranges::equal(c.lits(), lits)) return true;
    slot = (slot + 1) & mask;
  }
  return false;
}

bool ClauseDb::insert(std::span<const Literal> lits, ClauseOrigin origin,
                      std::uint32_t iteration) {
  if (clauses_.size() * 10 >= table_.size() * 7) rehash(table_.size() * 2);

  const std::uint64_t mask = table_.size() - 1;
  std::uint64_t slot = hash_of(lits) & mask;
  while (table_[slot] != kEmptySlot) {
    const Clause& c = clauses_[table_[slot]];
    if (std::ranges::equal(c.lits(), lits)) return false;
    slot = (slot + 1) & mask;
  }

  const std::uint32_t index = static_cast<std::uint32_t>(clauses_.size());
  clauses_.emplace_back(std::vector<Literal>(lits.begin(), lits.end()));
  origins_.push_back(origin);
  origin_iterations_.push_back(iteration);
  if (by_length_.size() <= lits.size()) by_length_.resize(lits.size() + 1);
  by_length_[lits.size()].push_back(index);
  table_[slot] = index;
  return true;
}

std::span<const std::uint32_t> ClauseDb::with_length(std::size_t len) const {
  if (len >= by_length_.size()) return {};
  return by_length_[len];
}

std::size_t ClauseDb::max_length() const {
  return by_length_.empty() ? 0 : by_length_.size() - 1;
}

void ClauseDb::clear() {
  clauses_.clear();
  origins_.clear();
  origin_iterations_.clear();
  by_length_.clear();
  table_.assign(kInitialTableSize, kEmptySlot);
}

// ---------------------------------------------------------------------------
// QuigleyEngine
// ---------------------------------------------------------------------------

QuigleyEngine::QuigleyEngine(const Formula& formula, EngineConfig config)
    : QuigleyEngine(formula, config, formula.variables()) {}

QuigleyEngine::QuigleyEngine(const Formula& formula, EngineConfig config,
                             std::vector<VariableId> universe)
    : config_(config), universe_(std::move(universe)) {
  if (!config_.unbounded && config_.length_bound < 1)
    throw std::invalid_argument("length bound must be at least 1");

  std::sort(universe_.begin(), universe_.end());
  universe_.erase(std::unique(universe_.begin(), universe_.end()),
                  universe_.end());
  for (VariableId v : formula.variables()) {
    if (!std::binary_search(universe_.begin(), universe_.end(), v))
      throw std::invalid_argument("universe does not cover variable " +
                                  std::to_string(v));
  }

  for (const Clause& c : formula.clauses) {
    if (c.empty())
      throw std::invalid_argument("input contains an empty clause");
    if (!config_.unbounded && c.size() > config_.length_bound)
      throw InputClauseTooLongError(
          "input clause of length " + std::to_string(c.size()) +
          " exceeds the bound of " + std::to_string(config_.length_bound) +
          " (use unbounded mode for wider inputs)");
    db_.insert(c.lits(), ClauseOrigin::input, 0);
  }

  if (config_.max_iterations != 0) {
    max_iterations_ = config_.max_iterations;
  } else {
    try {
      max_iterations_ =
          count_bound(universe_.size(),
                      config_.unbounded ? universe_.size()
                                        : config_.length_bound) +
          2;
    } catch (const OverflowError&) {
      max_iterations_ = UINT64_MAX;
    }
  }
}

std::size_t QuigleyEngine::expansion_cap() const {
  return config_.unbounded ? universe_.size() : config_.length_bound;
}

IterationRecord QuigleyEngine::run_iteration() {
  if (iteration_ >= max_iterations_)
    throw IterationLimitError(
        "iteration limit of " + std::to_string(max_iterations_) +
        " exceeded; the bounded procedure must reach a fixpoint sooner");
  ++iteration_;

  IterationRecord rec;
  const std::uint32_t participants_end = static_cast<std::uint32_t>(db_.size());
  const std::uint32_t frontier_begin = frontier_begin_;

  auto stage = [&](std::span<const Literal> lits, ClauseOrigin origin) {
    if (db_.contains(lits)) return;
    if (staging_.insert(lits, origin, iteration_) &&
        db_.size() + staging_.size() > config_.clause_budget)
      throw ClauseBudgetError("clause budget of " +
                              std::to_string(config_.clause_budget) +
                              " exceeded");
  };

  auto consider_resolvent = [&](VariableId /*pivot*/,
                                std::span<const Literal> lits,
                                bool tautological) {
    if (tautological) {
      ++rec.discarded_tautologies;
      return;
    }
    // The empty resolvent only arises from complementary units, which the
    // unit scan reports; the procedure has no empty-clause rule.
    if (lits.empty()) return;
    if (!config_.unbounded && lits.size() > config_.length_bound) {
      ++rec.discarded_long;
      return;
    }
    stage(lits, ClauseOrigin::resolved);
  };

  // Ordered pairs with at least one member that joined last pass; pairs of
  // older clauses were fully processed before and can imply nothing new.
  for (std::uint32_t i = frontier_begin; i < participants_end; ++i) {
    const Clause& c = db_.clause(i);
    for (std::uint32_t j = 0; j < participants_end; ++j) {
      if (j == i) continue;
      for_each_resolvent(c, db_.clause(j), scratch_, consider_resolvent);
    }
  }
  for (std::uint32_t i = 0; i < frontier_begin; ++i) {
    const Clause& c = db_.clause(i);
    for (std::uint32_t j = frontier_begin; j < participants_end; ++j)
      for_each_resolvent(c, db_.clause(j), scratch_, consider_resolvent);
  }

  const std::size_t cap = expansion_cap();
  for (std::uint32_t i = frontier_begin; i < participants_end; ++i) {
    const Clause& c = db_.clause(i);
    if (c.size() >= cap) continue;
    for_each_expansion(c, cap, universe_, scratch_,
                       [&](std::span<const Literal> lits) {
                         stage(lits, ClauseOrigin::expanded);
                       });
  }

  for (std::size_t k = 0; k < staging_.size(); ++k) {
    const bool fresh = db_.insert(staging_.clause(k).lits(),
                                  staging_.origin(k), iteration_);
    assert(fresh);
    (void)fresh;
  }
  rec.added = staging_.size();
  staging_.clear();

  frontier_begin_ = participants_end;
  rec.db_size = db_.size();
  return rec;
}

std::optional<VariableId> find_unit_contradiction(const ClauseDb& db) {
  std::optional<VariableId> best;
  const auto units = db.with_length(1);
  for (std::uint32_t i : units) {
    const Literal l = db.clause(i).lits().front();
    if (!l.positive()) continue;
    for (std::uint32_t j : units) {
      const Literal m = db.clause(j).lits().front();
      if (m.positive() || m.var() != l.var()) continue;
      if (!best || l.var() < *best) best = l.var();
    }
  }
  return best;
}

std::optional<VariableId> QuigleyEngine::find_unit_contradiction() const {
  return qrefute::find_unit_contradiction(db_);
}

SolveReport QuigleyEngine::solve() {
  const auto start = std::chrono::steady_clock::now();
  SolveReport report;
  for (;;) {
    IterationRecord rec = run_iteration();
    report.added_per_iteration.push_back(rec.added);
    report.discarded_long += rec.discarded_long;
    report.discarded_tautologies += rec.discarded_tautologies;
    if (config_.trace) report.trace.push_back(rec);

    if (auto var = find_unit_contradiction()) {
      report.verdict = Verdict::unsat;
      report.contradiction_variable = var;
      break;
    }
    if (rec.added == 0) {
      report.verdict = Verdict::claimed_sat;
      break;
    }
  }
  report.iterations = iteration_;
  report.final_db_size = db_.size();
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

SolveReport quigley_solve(const Formula& formula, EngineConfig config) {
  QuigleyEngine engine(formula, config);
  return engine.solve();
}

BlowupReport blowup_demo(std::uint32_t n, std::uint64_t clause_budget) {
  if (n < 1) throw std::invalid_argument("blowup demo needs n >= 1");

  // The formula x1 /\ ... /\ xn under the unbounded procedure: nothing
  // resolves, and the expansion step blows each unit up to every superset
  // over the variable set. We run the same enumeration the engine's
  // expansion step uses on the clause (x1) and count instead of storing.
  std::vector<VariableId> universe(n);
  for (std::uint32_t i = 0; i < n; ++i) universe[i] = static_cast<VariableId>(i + 1);
  const Clause x1(std::vector<Literal>{Literal(1, true)});

  BlowupReport report;
  report.n = n;
  report.count_by_length.assign(n + 1, 0);
  std::vector<Literal> scratch;
  std::uint64_t produced = 0;
  for_each_expansion(x1, n, universe, scratch,
                     [&](std::span<const Literal> lits) {
                       if (++produced > clause_budget)
                         throw ClauseBudgetError(
                             "blowup demo exceeds the clause budget of " +
                             std::to_string(clause_budget) + " at n = " +
                             std::to_string(n));
                       ++report.count_by_length[lits.size()];
                     });
  report.total = produced;
  report.full_length = report.count_by_length[n];
  return report;
}

}  // namespace qrefute
