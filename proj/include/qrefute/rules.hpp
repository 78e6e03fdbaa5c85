#pragma once

#include <cassert>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qrefute/cnf.hpp"

namespace qrefute {

// Result of resolving two clauses on one pivot variable. A resolvent that
// still carries a complementary pair of literals is flagged tautological
// (clause is nullopt); the caller decides whether to drop it.
struct Resolvent {
  std::optional<Clause> clause;
  VariableId pivot = 0;
  Clause lhs, rhs;

  bool tautological() const { return !clause.has_value(); }
};

// Expansion: append a variable absent from the clause in both polarities.
// Throws std::invalid_argument when t already occurs in c.
std::pair<Clause, Clause> expand(const Clause& c, VariableId t);

// All strict supersets of c of length <= max_len over variables drawn from
// `universe` (ascending, may include c's own variables). Excludes c itself.
std::vector<Clause> expansions_up_to(const Clause& c, std::size_t max_len,
                                     std::span<const VariableId> universe);

// One resolvent per clashing variable, pivots ascending. No clash yields an
// empty result.
std::vector<Resolvent> resolve(const Clause& c, const Clause& d);

// Length range of a resolvent of clauses with lengths k and m:
// [max(k,m) - 1, k + m - 2].
std::pair<std::size_t, std::size_t> resolvent_length_bounds(std::size_t k,
                                                            std::size_t m);

// --- enumeration cores ------------------------------------------------------
// Allocation-free visitors shared by the public wrappers above, the solver
// engine's inner loop, and the blowup demo.

// Calls fn(pivot, lits, tautological) once per clashing variable. For
// tautological resolvents `lits` is empty; otherwise it points into `scratch`
// and stays valid until the next emission.
template <typename Fn>
void for_each_resolvent(const Clause& c, const Clause& d,
                        std::vector<Literal>& scratch, Fn&& fn) {
  const auto cl = c.lits();
  const auto dl = d.lits();

  std::size_t nclash = 0;
  for (std::size_t i = 0, j = 0; i < cl.size() && j < dl.size();) {
    if (cl[i].var() < dl[j].var()) {
      ++i;
    } else if (cl[i].var() > dl[j].var()) {
      ++j;
    } else {
      if (cl[i].positive() != dl[j].positive()) ++nclash;
      ++i;
      ++j;
    }
  }
  if (nclash == 0) return;

  if (nclash >= 2) {
    // Every per-pivot resolvent keeps at least one other complementary pair.
    for (std::size_t i = 0, j = 0; i < cl.size() && j < dl.size();) {
      if (cl[i].var() < dl[j].var()) {
        ++i;
      } else if (cl[i].var() > dl[j].var()) {
        ++j;
      } else {
        if (cl[i].positive() != dl[j].positive())
          fn(cl[i].var(), std::span<const Literal>{}, true);
        ++i;
        ++j;
      }
    }
    return;
  }

  // Exactly one clash: build the merged resolvent, shared literals once.
  scratch.clear();
  VariableId pivot = 0;
  std::size_t i = 0, j = 0;
  while (i < cl.size() || j < dl.size()) {
    if (j == dl.size() || (i < cl.size() && cl[i].var() < dl[j].var())) {
      scratch.push_back(cl[i++]);
    } else if (i == cl.size() || cl[i].var() > dl[j].var()) {
      scratch.push_back(dl[j++]);
    } else {
      if (cl[i].positive() != dl[j].positive()) {
        pivot = cl[i].var();
      } else {
        scratch.push_back(cl[i]);
      }
      ++i;
      ++j;
    }
  }
  assert(pivot != 0);
  fn(pivot, std::span<const Literal>(scratch), false);
}

// Calls fn(lits) once per expansion of c, lits pointing into `scratch`.
// Enumeration is deterministic: added-variable subsets in ascending
// combination order, sign patterns counted up.
template <typename Fn>
void for_each_expansion(const Clause& c, std::size_t max_len,
                        std::span<const VariableId> universe,
                        std::vector<Literal>& scratch, Fn&& fn) {
  if (c.size() >= max_len) return;

  std::vector<VariableId> candidates;
  candidates.reserve(universe.size());
  for (VariableId v : universe)
    if (!c.contains_var(v)) candidates.push_back(v);
#ifndef NDEBUG
  for (std::size_t i = 1; i < candidates.size(); ++i)
    assert(candidates[i - 1] < candidates[i] && "universe not sorted");
#endif
  if (candidates.empty()) return;

  const std::size_t room = std::min(max_len - c.size(), candidates.size());
  std::vector<std::size_t> comb;
  const auto cl = c.lits();

  for (std::size_t s = 1; s <= room; ++s) {
    comb.resize(s);
    for (std::size_t t = 0; t < s; ++t) comb[t] = t;
    for (;;) {
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << s); ++mask) {
        scratch.clear();
        std::size_t i = 0, t = 0;
        while (i < cl.size() || t < s) {
          if (t == s || (i < cl.size() && cl[i].var() < candidates[comb[t]])) {
            scratch.push_back(cl[i++]);
          } else {
            scratch.push_back(
                Literal(candidates[comb[t]], ((mask >> t) & 1) == 0));
            ++t;
          }
        }
        fn(std::span<const Literal>(scratch));
      }
      // next combination
      std::size_t t = s;
      while (t-- > 0) {
        if (comb[t] + (s - t) < candidates.size()) {
          ++comb[t];
          for (std::size_t u = t + 1; u < s; ++u) comb[u] = comb[u - 1] + 1;
          break;
        }
        if (t == 0) goto next_size;
      }
    }
  next_size:;
  }
}

}  // namespace qrefute
