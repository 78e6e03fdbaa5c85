#include "qrefute/rules.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace qrefute {

std::pair<Clause, Clause> expand(const Clause& c, VariableId t) {
  if (c.contains_var(t))
    throw std::invalid_argument("expansion variable " + std::to_string(t) +
                                " already occurs in the clause");
  auto insert_with = [&](Literal l) {
    std::vector<Literal> lits(c.begin(), c.end());
    auto it = std::lower_bound(lits.begin(), lits.end(), l);
    lits.insert(it, l);
    return Clause(std::move(lits));
  };
  return {insert_with(Literal(t, true)), insert_with(Literal(t, false))};
}

std::vector<Clause> expansions_up_to(const Clause& c, std::size_t max_len,
                                     std::span<const VariableId> universe) {
  std::vector<Clause> out;
  std::vector<Literal> scratch;
  for_each_expansion(c, max_len, universe, scratch,
                     [&](std::span<const Literal> lits) {
                       out.emplace_back(std::vector<Literal>(lits.begin(), lits.end()));
                     });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Resolvent> resolve(const Clause& c, const Clause& d) {
  std::vector<Resolvent> out;
  std::vector<Literal> scratch;
  for_each_resolvent(
      c, d, scratch,
      [&](VariableId pivot, std::span<const Literal> lits, bool tautological) {
        Resolvent r;
        r.pivot = pivot;
        r.lhs = c;
        r.rhs = d;
        if (!tautological)
          r.clause = Clause(std::vector<Literal>(lits.begin(), lits.end()));
        out.push_back(std::move(r));
      });
  return out;
}

std::pair<std::size_t, std::size_t> resolvent_length_bounds(std::size_t k,
                                                            std::size_t m) {
  if (k < 1 || m < 1)
    throw std::invalid_argument("clause lengths must be at least 1");
  return {std::max(k, m) - 1, k + m - 2};
}

}  // namespace qrefute
