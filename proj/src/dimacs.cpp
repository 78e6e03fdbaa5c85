#include "qrefute/dimacs.hpp"

#include <charconv>
#include <sstream>

namespace qrefute {

namespace {

constexpr VariableId kMaxVariableId = 1'000'000'000;

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

}  // namespace

ParseResult parse_dimacs(std::string_view text) {
  ParseResult result;
  std::vector<std::vector<Literal>> raw_clauses;
  std::vector<Literal> current;
  std::size_t current_line = 0, current_col = 0;  // where the open clause began

  bool seen_header = false;
  VariableId declared_vars = 0;
  std::size_t declared_clauses = 0;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    const std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                       : eol - pos);
    ++line_no;
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

    std::size_t i = 0;
    while (i < line.size() && is_space(line[i])) ++i;
    if (i == line.size()) continue;
    if (line[i] == 'c') continue;  // comment

    if (line[i] == 'p') {
      if (seen_header) throw ParseError(line_no, i + 1, "duplicate header");
      std::istringstream hs{std::string(line.substr(i))};
      std::string p, fmt;
      long long vars = -1, clauses = -1;
      hs >> p >> fmt >> vars >> clauses;
      if (p != "p" || fmt != "cnf" || vars < 0 || clauses < 0 || hs.fail())
        throw ParseError(line_no, i + 1,
                         "malformed header, expected 'p cnf <vars> <clauses>'");
      if (vars > kMaxVariableId)
        throw ParseError(line_no, i + 1, "declared variable count too large");
      declared_vars = static_cast<VariableId>(vars);
      declared_clauses = static_cast<std::size_t>(clauses);
      seen_header = true;
      continue;
    }

    // literal tokens
    while (i < line.size()) {
      while (i < line.size() && is_space(line[i])) ++i;
      if (i == line.size()) break;
      const std::size_t start = i;
      while (i < line.size() && !is_space(line[i])) ++i;
      const std::string_view token = line.substr(start, i - start);

      if (!seen_header)
        throw ParseError(line_no, start + 1, "clause data before header");

      long long value = 0;
      auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
      if (ec != std::errc{} || ptr != token.data() + token.size())
        throw ParseError(line_no, start + 1,
                         "invalid literal token '" + std::string(token) + "'");

      if (value == 0) {
        if (current.empty())
          throw ParseError(line_no, start + 1,
                           "empty clause in input (the procedure has no "
                           "semantics for it)");
        raw_clauses.push_back(std::move(current));
        current.clear();
        continue;
      }
      const long long var = value > 0 ? value : -value;
      if (var > kMaxVariableId)
        throw ParseError(line_no, start + 1, "variable id too large");
      if (current.empty()) {
        current_line = line_no;
        current_col = start + 1;
      }
      if (var > declared_vars) {
        result.warnings.push_back(
            "line " + std::to_string(line_no) + ": literal " +
            std::to_string(value) + " exceeds the declared variable count " +
            std::to_string(declared_vars) + "; raising it to " +
            std::to_string(var));
        declared_vars = static_cast<VariableId>(var);
      }
      current.push_back(Literal::from_dimacs(static_cast<std::int32_t>(value)));
    }
  }

  if (!current.empty())
    throw ParseError(current_line, current_col,
                     "unterminated clause at end of input");
  if (!seen_header) throw ParseError(line_no, 1, "missing 'p cnf' header");

  if (raw_clauses.size() != declared_clauses)
    result.warnings.push_back(
        "header declares " + std::to_string(declared_clauses) +
        " clauses but " + std::to_string(raw_clauses.size()) + " were read");

  NormalizeStats stats;
  result.formula = normalize(raw_clauses, &stats);
  if (stats.tautologies_dropped > 0)
    result.warnings.push_back(
        "normalization dropped " + std::to_string(stats.tautologies_dropped) +
        " tautological clause(s)");
  if (stats.duplicate_clauses_dropped > 0)
    result.warnings.push_back(
        "normalization dropped " +
        std::to_string(stats.duplicate_clauses_dropped) +
        " duplicate clause(s)");

  result.declared_variables = declared_vars;
  result.declared_clauses = declared_clauses;
  return result;
}

std::string emit_dimacs(const Formula& f) {
  std::string out = "p cnf " + std::to_string(f.max_variable_id()) + ' ' +
                    std::to_string(f.clauses.size()) + '\n';
  for (const Clause& c : f.clauses) {
    for (Literal l : c) {
      out += std::to_string(l.to_dimacs());
      out += ' ';
    }
    out += "0\n";
  }
  return out;
}

}  // namespace qrefute
