#include "qrefute/cnf.hpp"

#include <algorithm>
#include <cassert>
#include <ostream>

namespace qrefute {

Clause::Clause(std::vector<Literal> lits) : lits_(std::move(lits)) {
#ifndef NDEBUG
  for (std::size_t i = 1; i < lits_.size(); ++i) {
    assert(lits_[i - 1].var() < lits_[i].var() && "clause not canonical");
  }
#endif
}

bool Clause::contains_var(VariableId v) const {
  return literal_on(v).has_value();
}

std::optional<Literal> Clause::literal_on(VariableId v) const {
  auto it = std::lower_bound(
      lits_.begin(), lits_.end(), v,
      [](Literal l, VariableId var) { return l.var() < var; });
  if (it != lits_.end() && it->var() == v) return *it;
  return std::nullopt;
}

std::ostream& operator<<(std::ostream& os, const Clause& c) {
  os << '(';
  bool first = true;
  for (Literal l : c) {
    if (!first) os << ' ';
    os << l.to_dimacs();
    first = false;
  }
  return os << ')';
}

std::optional<Clause> canonicalize_clause(std::vector<Literal> lits) {
  std::sort(lits.begin(), lits.end());
  std::vector<Literal> out;
  out.reserve(lits.size());
  for (Literal l : lits) {
    if (!out.empty() && out.back().var() == l.var()) {
      if (out.back() == l) continue;      // duplicate term
      return std::nullopt;                // both polarities: tautology
    }
    out.push_back(l);
  }
  return Clause(std::move(out));
}

std::optional<Clause> clause_from_ints(std::span<const std::int32_t> lits) {
  std::vector<Literal> ls;
  ls.reserve(lits.size());
  for (std::int32_t v : lits) ls.push_back(Literal::from_dimacs(v));
  return canonicalize_clause(std::move(ls));
}

std::optional<Clause> clause_from_ints(std::initializer_list<std::int32_t> lits) {
  return clause_from_ints(std::span<const std::int32_t>(lits.begin(), lits.size()));
}

std::vector<VariableId> Formula::variables() const {
  std::vector<VariableId> vars;
  for (const Clause& c : clauses)
    for (Literal l : c) vars.push_back(l.var());
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

VariableId Formula::max_variable_id() const {
  VariableId m = 0;
  for (const Clause& c : clauses)
    if (!c.empty()) m = std::max(m, c.lits().back().var());
  return m;
}

std::ostream& operator<<(std::ostream& os, const Formula& f) {
  os << '{';
  bool first = true;
  for (const Clause& c : f.clauses) {
    if (!first) os << ", ";
    os << c;
    first = false;
  }
  return os << '}';
}

namespace {

Formula dedupe_and_sort(std::vector<Clause> clauses, NormalizeStats* stats) {
  std::sort(clauses.begin(), clauses.end());
  std::vector<Clause> out;
  out.reserve(clauses.size());
  for (Clause& c : clauses) {
    if (!out.empty() && out.back() == c) {
      if (stats) ++stats->duplicate_clauses_dropped;
      continue;
    }
    out.push_back(std::move(c));
  }
  return Formula{std::move(out)};
}

}  // namespace

Formula normalize(const std::vector<std::vector<Literal>>& raw_clauses,
                  NormalizeStats* stats) {
  std::vector<Clause> canonical;
  canonical.reserve(raw_clauses.size());
  for (const auto& raw : raw_clauses) {
    auto c = canonicalize_clause(raw);
    if (!c) {
      if (stats) ++stats->tautologies_dropped;
      continue;
    }
    canonical.push_back(std::move(*c));
  }
  return dedupe_and_sort(std::move(canonical), stats);
}

Formula normalize(const Formula& f, NormalizeStats* stats) {
  return dedupe_and_sort(f.clauses, stats);
}

std::uint64_t count_bound(std::uint64_t num_variables, std::uint64_t max_len) {
  const std::uint64_t limit = std::min(num_variables, max_len);
  unsigned __int128 total = 0;
  unsigned __int128 choose = 1;  // C(n, k), updated incrementally
  for (std::uint64_t k = 1; k <= limit; ++k) {
    choose = choose * (num_variables - k + 1) / k;
    unsigned __int128 term = choose;
    for (std::uint64_t i = 0; i < k; ++i) term *= 2;
    total += term;
    if (total > UINT64_MAX || choose > UINT64_MAX)
      throw OverflowError("count_bound overflows 64 bits for n=" +
                          std::to_string(num_variables));
  }
  return static_cast<std::uint64_t>(total);
}

void Assignment::set(VariableId v, bool value) {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), v,
      [](const std::pair<VariableId, bool>& e, VariableId var) {
        return e.first < var;
      });
  if (it != entries_.end() && it->first == v) {
    it->second = value;
  } else {
    entries_.insert(it, {v, value});
  }
}

std::optional<bool> Assignment::get(VariableId v) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), v,
      [](const std::pair<VariableId, bool>& e, VariableId var) {
        return e.first < var;
      });
  if (it != entries_.end() && it->first == v) return it->second;
  return std::nullopt;
}

bool Assignment::complete_for(const Formula& f) const {
  for (VariableId v : f.variables())
    if (!defined(v)) return false;
  return true;
}

std::ostream& operator<<(std::ostream& os, const Assignment& a) {
  os << '{';
  bool first = true;
  for (const auto& [var, val] : a.entries()) {
    if (!first) os << ", ";
    os << 'x' << var << '=' << (val ? 'T' : 'F');
    first = false;
  }
  return os << '}';
}

bool evaluate(const Clause& c, const Assignment& a) {
  for (Literal l : c) {
    auto val = a.get(l.var());
    if (!val)
      throw IncompleteAssignmentError(
          l.var(), "assignment does not cover variable " +
                       std::to_string(l.var()));
    if (*val == l.positive()) return true;
  }
  return false;
}

bool evaluate(const Formula& f, const Assignment& a) {
  for (const Clause& c : f.clauses)
    if (!evaluate(c, a)) return false;
  return true;
}

}  // namespace qrefute
