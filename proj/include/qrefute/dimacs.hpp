#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qrefute/cnf.hpp"

namespace qrefute {

struct ParseError : std::runtime_error {
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + message),
        line(line),
        column(column) {}
  std::size_t line;
  std::size_t column;
};

struct ParseResult {
  Formula formula;  // normalized
  VariableId declared_variables = 0;  // after any raising
  std::size_t declared_clauses = 0;
  std::vector<std::string> warnings;  // never affect the exit status
};

// DIMACS CNF: comment lines starting with 'c', one 'p cnf <vars> <clauses>'
// header, zero-terminated clauses. Empty clauses are rejected; a literal
// beyond the declared variable count is accepted with a warning and the
// count raised.
ParseResult parse_dimacs(std::string_view text);

// Canonical emission: header with the maximum variable id, clauses in
// canonical order, literals ascending. parse_dimacs(emit_dimacs(f)) == f for
// normalized f.
std::string emit_dimacs(const Formula& f);

}  // namespace qrefute
