#pragma once

// Shared test utilities: terse constructors plus the independent oracles the
// unit suites check the implementation against.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "qrefute/cnf.hpp"
#include "qrefute/rules.hpp"

namespace qrefute::test {

inline Clause cls(std::initializer_list<std::int32_t> lits) {
  auto c = clause_from_ints(lits);
  REQUIRE(c.has_value());
  return std::move(*c);
}

inline std::vector<Literal> raw(std::initializer_list<std::int32_t> lits) {
  std::vector<Literal> out;
  for (std::int32_t v : lits) out.push_back(Literal::from_dimacs(v));
  return out;
}

inline Formula fml(std::initializer_list<std::initializer_list<std::int32_t>> clauses) {
  std::vector<std::vector<Literal>> rawcs;
  for (const auto& c : clauses) rawcs.push_back(raw(c));
  return normalize(rawcs);
}

inline Assignment assign(std::initializer_list<std::pair<VariableId, bool>> vals) {
  Assignment a;
  for (auto [var, value] : vals) a.set(var, value);
  return a;
}

// Every complete assignment over the given variables, in lexicographic order.
inline std::vector<Assignment> all_assignments(const std::vector<VariableId>& vars) {
  std::vector<Assignment> out;
  const std::size_t n = vars.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Assignment a;
    for (std::size_t i = 0; i < n; ++i)
      a.set(vars[i], ((mask >> (n - 1 - i)) & 1) != 0);
    out.push_back(std::move(a));
  }
  return out;
}

// Independent enumeration of every canonical clause of length 1..max_len
// over variables 1..n: subsets by bitmask, then sign patterns. Used as the
// oracle for count_bound and the expansion enumerator.
inline std::vector<Clause> enumerate_canonical_clauses(int n, std::size_t max_len) {
  std::vector<Clause> out;
  for (std::uint32_t subset = 1; subset < (1u << n); ++subset) {
    std::vector<VariableId> vars;
    for (int v = 0; v < n; ++v)
      if (subset & (1u << v)) vars.push_back(v + 1);
    if (vars.size() > max_len) continue;
    for (std::uint32_t signs = 0; signs < (1u << vars.size()); ++signs) {
      std::vector<Literal> lits;
      for (std::size_t i = 0; i < vars.size(); ++i)
        lits.push_back(Literal(vars[i], ((signs >> i) & 1) == 0));
      out.push_back(Clause(std::move(lits)));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Random clause with `width` distinct variables from 1..num_vars.
inline Clause random_clause(std::mt19937_64& rng, VariableId num_vars, std::size_t width) {
  std::vector<VariableId> pool(num_vars);
  for (VariableId v = 0; v < num_vars; ++v) pool[v] = v + 1;
  std::vector<Literal> lits;
  for (std::size_t t = 0; t < width; ++t) {
    const std::size_t pick = t + rng() % (num_vars - t);
    std::swap(pool[t], pool[pick]);
    lits.push_back(Literal(pool[t], (rng() & 1) == 0));
  }
  auto c = canonicalize_clause(std::move(lits));
  return std::move(*c);  // distinct variables, never a tautology
}

// Random formula with clause widths drawn from [min_width, max_width].
inline Formula random_formula(std::mt19937_64& rng, VariableId num_vars,
                              std::size_t num_clauses, std::size_t min_width,
                              std::size_t max_width) {
  std::vector<std::vector<Literal>> rawcs;
  for (std::size_t i = 0; i < num_clauses; ++i) {
    std::size_t width = min_width + rng() % (max_width - min_width + 1);
    width = std::min<std::size_t>(width, num_vars);
    Clause c = random_clause(rng, num_vars, width);
    rawcs.emplace_back(c.begin(), c.end());
  }
  return normalize(rawcs);
}

}  // namespace qrefute::test
