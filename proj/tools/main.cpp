#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qrefute/dimacs.hpp"
#include "qrefute/engine.hpp"
#include "qrefute/forge.hpp"
#include "qrefute/oracle.hpp"
#include "qrefute/report.hpp"

namespace {

using namespace qrefute;

// Solver-convention exit codes.
constexpr int kExitSat = 10;
constexpr int kExitUnsat = 20;
constexpr int kExitError = 1;

struct CommonOpts {
  std::uint64_t seed = 0;
  std::size_t bound = 3;
  bool unbounded = false;
  std::uint64_t max_iterations = 0;
  std::string oracle = "dpll";
  std::string report_path;
};

void add_common_options(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--seed", opts.seed, "generator seed");
  cmd->add_option("--bound", opts.bound, "clause length bound (default 3)");
  cmd->add_flag("--unbounded", opts.unbounded, "disable the length bound");
  cmd->add_option("--max-iterations", opts.max_iterations,
                  "safety cap on outer iterations (0 = automatic)");
  cmd->add_option("--oracle", opts.oracle, "oracle method")
      ->check(CLI::IsMember({"brute", "dpll"}));
  cmd->add_option("--report", opts.report_path,
                  "write machine-readable records to this file");
}

EngineConfig engine_config(const CommonOpts& opts) {
  EngineConfig cfg;
  cfg.length_bound = opts.bound;
  cfg.unbounded = opts.unbounded;
  cfg.max_iterations = opts.max_iterations;
  return cfg;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path);
}

Formula load_formula(const std::string& path) {
  ParseResult parsed = parse_dimacs(read_file(path));
  for (const std::string& w : parsed.warnings)
    std::cerr << "warning: " << path << ": " << w << '\n';
  return std::move(parsed.formula);
}

OracleVerdict run_oracle(const Formula& f, const std::string& method) {
  return method == "brute" ? brute_force_sat(f) : dpll_sat(f);
}

void print_solve_summary(const SolveReport& report) {
  std::cout << "c verdict: " << to_string(report.verdict)
            << (report.verdict == Verdict::claimed_sat
                    ? " (the procedure's claim, not a certificate)"
                    : "")
            << '\n';
  std::cout << "c iterations: " << report.iterations << '\n';
  std::cout << "c added per iteration:";
  for (std::uint64_t n : report.added_per_iteration) std::cout << ' ' << n;
  std::cout << '\n';
  std::cout << "c discarded: " << report.discarded_long << " over-length, "
            << report.discarded_tautologies << " tautological\n";
  std::cout << "c final clause count: " << report.final_db_size << '\n';
  if (report.contradiction_variable)
    std::cout << "c contradiction on variable " << *report.contradiction_variable
              << '\n';
  std::cout << "c time: " << report.elapsed_seconds << " s\n";
  std::cout << (report.verdict == Verdict::claimed_sat ? "s SATISFIABLE\n"
                                                       : "s UNSATISFIABLE\n");
}

int cmd_solve(const std::string& input, const CommonOpts& opts) {
  const Formula f = load_formula(input);
  SolveReport report = quigley_solve(f, engine_config(opts));
  print_solve_summary(report);
  if (!opts.report_path.empty())
    write_file(opts.report_path, to_json(report).dump(2) + "\n");
  return report.verdict == Verdict::claimed_sat ? kExitSat : kExitUnsat;
}

int cmd_oracle(const std::string& input, const CommonOpts& opts) {
  const Formula f = load_formula(input);
  const OracleVerdict v = run_oracle(f, opts.oracle);
  std::cout << "c method: " << to_string(v.method) << ", decisions: "
            << v.decisions << ", propagations: " << v.propagations << '\n';
  if (v.sat()) {
    std::cout << "s SATISFIABLE\n";
    std::cout << "v";
    for (const auto& [var, value] : v.model->entries())
      std::cout << ' ' << (value ? var : -var);
    std::cout << " 0\n";
  } else {
    std::cout << "s UNSATISFIABLE\n";
  }
  if (!opts.report_path.empty())
    write_file(opts.report_path, to_json(v).dump(2) + "\n");
  return v.sat() ? kExitSat : kExitUnsat;
}

struct DiffOpts {
  std::vector<std::string> files;
  std::string gen;  // split-chain | random
  std::size_t width = 4;
  std::uint32_t k = 1;
  VariableId vars = 8;
  std::size_t clauses = 20;
  std::size_t count = 1;
};

int cmd_diff(const DiffOpts& d, const CommonOpts& opts) {
  struct Instance {
    std::string id;
    nlohmann::json generator;
    Formula formula;
  };
  std::vector<Instance> instances;

  for (const std::string& path : d.files)
    instances.push_back({path, {{"source", "file"}, {"path", path}}, load_formula(path)});

  if (d.gen == "split-chain") {
    Formula base = complete_unsat_cnf(d.width);
    auto [phi0, metas] = split_to_3cnf(base, d.k);
    std::string id = "split-chain-w" + std::to_string(d.width) + "-k" +
                     std::to_string(d.k);
    instances.push_back({id,
                         {{"source", "split-chain"},
                          {"width", d.width},
                          {"k", d.k},
                          {"base", "complete"}},
                         std::move(phi0)});
  } else if (d.gen == "random") {
    for (std::size_t i = 0; i < d.count; ++i) {
      const std::uint64_t seed = opts.seed + i;
      std::mt19937_64 rng(seed);
      Formula f = random_kcnf(d.width, d.vars, d.clauses, rng);
      std::string id = "random-w" + std::to_string(d.width) + "-v" +
                       std::to_string(d.vars) + "-c" + std::to_string(d.clauses) +
                       "-s" + std::to_string(seed);
      instances.push_back({id,
                           {{"source", "random"},
                            {"width", d.width},
                            {"vars", d.vars},
                            {"clauses", d.clauses},
                            {"seed", seed}},
                           std::move(f)});
    }
  } else if (!d.gen.empty()) {
    throw std::runtime_error("unknown generator '" + d.gen + "'");
  }
  if (instances.empty())
    throw std::runtime_error("nothing to check: pass input files or --gen");

  std::ofstream records;
  if (!opts.report_path.empty()) {
    records.open(opts.report_path, std::ios::binary);
    if (!records)
      throw std::runtime_error("cannot open " + opts.report_path +
                               " for writing");
  }

  std::size_t mismatches = 0, failures = 0, inconclusive = 0;
  EngineConfig cfg = engine_config(opts);
  cfg.trace = true;  // mismatch records carry the full per-iteration trace
  for (const Instance& inst : instances) {
    SolveReport engine_report = quigley_solve(inst.formula, cfg);
    std::optional<OracleVerdict> oracle;
    try {
      oracle = run_oracle(inst.formula, opts.oracle);
    } catch (const StepBudgetError&) {
    } catch (const OracleCapError&) {
    }

    DiscrepancyReport rec = make_discrepancy_report(
        inst.id, inst.generator, engine_report, oracle ? &*oracle : nullptr);
    if (records.is_open()) records << to_json(rec).dump() << '\n';

    std::cout << inst.id << ": engine=" << rec.engine_verdict
              << " oracle=" << rec.oracle_verdict;
    if (rec.mismatch) {
      std::cout << "  MISMATCH (unsatisfiable, claimed satisfiable)";
      ++mismatches;
    }
    if (rec.soundness_failure) {
      std::cout << "  FATAL: engine reported unsat on a satisfiable instance";
      ++failures;
    }
    if (!oracle) ++inconclusive;
    std::cout << '\n';
  }

  std::cout << instances.size() << " instance(s): " << mismatches
            << " mismatch(es), " << failures << " soundness failure(s), "
            << inconclusive << " inconclusive\n";
  return failures == 0 ? 0 : kExitError;
}

struct GenOpts {
  std::string kind;
  std::size_t width = 4;
  VariableId first_var = 1;
  VariableId vars = 8;
  std::size_t clauses = 20;
  std::uint32_t k = 1;
  std::string base;
  std::string out;
};

int cmd_gen(const GenOpts& g, const CommonOpts& opts, const std::string& command_line) {
  Formula formula;
  nlohmann::json config{{"kind", g.kind}};
  std::vector<std::string> comments;
  nlohmann::json split_info = nlohmann::json::array();

  if (g.kind == "complete") {
    formula = complete_unsat_cnf(g.width, g.first_var);
    config["width"] = g.width;
    config["first_var"] = g.first_var;
    comments.push_back("complete " + std::to_string(g.width) +
                       "CNF over variables " + std::to_string(g.first_var) +
                       ".." + std::to_string(g.first_var + g.width - 1));
  } else if (g.kind == "random-unsat") {
    formula = random_unsat_kcnf(g.width, g.vars, g.clauses, opts.seed);
    config["width"] = g.width;
    config["vars"] = g.vars;
    config["clauses"] = g.clauses;
    config["seed"] = opts.seed;
    comments.push_back("oracle-certified unsatisfiable random " +
                       std::to_string(g.width) + "CNF, seed " +
                       std::to_string(opts.seed));
  } else if (g.kind == "split-chain") {
    Formula base;
    if (g.base.rfind("complete", 0) == 0) {
      const std::size_t w = std::stoul(g.base.substr(8));
      base = complete_unsat_cnf(w);
      config["base"] = g.base;
    } else if (!g.base.empty()) {
      base = load_formula(g.base);
      config["base"] = g.base;
    } else {
      throw std::runtime_error(
          "split-chain needs --base complete<w> or --base <file>");
    }
    auto [phi0, metas] = split_to_3cnf(base, g.k);
    formula = std::move(phi0);
    config["k"] = g.k;
    comments.push_back("split chain, k = " + std::to_string(g.k) +
                       ", base = " + g.base);
    for (std::size_t level = 0; level < metas.size(); ++level) {
      const SplitMetadata& m = metas[level];
      split_info.push_back(
          {{"level", level + 1},
           {"fresh_first", m.fresh_variables.front()},
           {"fresh_count", m.fresh_variables.size()},
           {"original_variables", m.original_variables.size()}});
      comments.push_back("split level " + std::to_string(level + 1) +
                         ": fresh variables " +
                         std::to_string(m.fresh_variables.front()) + ".." +
                         std::to_string(m.fresh_variables.back()));
    }
  } else {
    throw std::runtime_error("unknown generator kind '" + g.kind + "'");
  }

  std::string text;
  for (const std::string& c : comments) text += "c " + c + "\n";
  text += emit_dimacs(formula);
  write_file(g.out, text);

  RunManifest manifest;
  manifest.version = QREFUTE_VERSION;
  manifest.command = command_line;
  manifest.config = config;
  manifest.created = current_timestamp_utc();
  manifest.outputs = nlohmann::json::array();
  nlohmann::json out_entry{{"path", g.out},
                           {"digest_fnv1a64", fnv1a64_hex(text)},
                           {"clauses", formula.clauses.size()},
                           {"variables", formula.num_variables()}};
  if (!split_info.empty()) out_entry["splits"] = split_info;
  manifest.outputs.push_back(out_entry);
  write_file(g.out + ".meta.json", to_json(manifest).dump(2) + "\n");

  std::cout << "wrote " << g.out << " (" << formula.clauses.size()
            << " clauses over " << formula.num_variables() << " variables)\n";
  return 0;
}

int check_and_print(const LemmaScenario& s) {
  const CheckReport r = check_scenario(s);
  std::printf("5.%s  k=%-2d  hypotheses=%-4s  closure(k-1)=%-4llu  "
              "target@k-1=%-3s  target@k=%-3s  %s\n",
              s.name.c_str() + 1, s.k, r.hypotheses_ok ? "ok" : "FAIL",
              static_cast<unsigned long long>(r.bounded_closure_size),
              r.target_in_bounded_closure ? "yes" : "no",
              r.target_in_relaxed_closure ? "yes" : "no",
              r.confirmed() ? "confirmed" : "NOT CONFIRMED");
  if (!r.failure.empty()) std::printf("  failure: %s\n", r.failure.c_str());
  return r.confirmed() ? 0 : 1;
}

int cmd_lemma_check(const std::string& which, int k) {
  int bad = 0;
  if (which == "511") {
    if (k < 4)
      throw CLI::ValidationError("--k", "the 5.11 family needs k >= 4");
    bad += check_and_print(lemma511_instance(k));
  } else if (which == "517") {
    bad += check_and_print(lemma517_instance());
  } else if (which == "518") {
    bad += check_and_print(lemma518_instance());
  } else {  // all
    for (int kk = 4; kk <= 10; ++kk)
      bad += check_and_print(lemma511_instance(kk));
    bad += check_and_print(lemma517_instance());
    bad += check_and_print(lemma518_instance());
  }
  return bad == 0 ? 0 : kExitError;
}

int cmd_blowup(std::uint32_t n) {
  std::printf("%4s  %16s  %16s  %16s\n", "n", "full-length", "expected 2^(n-1)",
              "total");
  for (std::uint32_t i = 1; i <= n; ++i) {
    BlowupReport rep;
    try {
      rep = blowup_demo(i);
    } catch (const ClauseBudgetError& e) {
      std::cout << "stopping: " << e.what() << '\n';
      return kExitError;
    }
    const std::uint64_t expected = i == 1 ? 0 : std::uint64_t{1} << (i - 1);
    std::printf("%4u  %16llu  %16llu  %16llu\n", i,
                static_cast<unsigned long long>(rep.full_length),
                static_cast<unsigned long long>(expected),
                static_cast<unsigned long long>(rep.total));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "qrefute: bench harness for Quigley's bounded-implication 3SAT "
      "procedure and the instance families it misclassifies"};
  app.require_subcommand(1);

  CommonOpts common;

  auto* solve = app.add_subcommand(
      "solve", "run the bounded procedure on a DIMACS file (exit 10/20)");
  std::string solve_input;
  solve->add_option("input", solve_input, "DIMACS CNF file")->required();
  add_common_options(solve, common);

  auto* oracle = app.add_subcommand(
      "oracle", "decide a DIMACS file with the trusted oracle (exit 10/20)");
  std::string oracle_input;
  oracle->add_option("input", oracle_input, "DIMACS CNF file")->required();
  add_common_options(oracle, common);

  auto* diff = app.add_subcommand(
      "diff", "run engine and oracle on instances and report discrepancies");
  DiffOpts diff_opts;
  diff->add_option("files", diff_opts.files, "DIMACS CNF files");
  diff->add_option("--gen", diff_opts.gen, "instance generator")
      ->check(CLI::IsMember({"split-chain", "random"}));
  diff->add_option("--width", diff_opts.width, "clause width");
  diff->add_option("--k", diff_opts.k, "number of splitting steps");
  diff->add_option("--vars", diff_opts.vars, "variable count (random)");
  diff->add_option("--clauses", diff_opts.clauses, "clause count (random)");
  diff->add_option("--count", diff_opts.count, "number of random instances");
  add_common_options(diff, common);

  auto* gen = app.add_subcommand("gen", "generate instance files");
  GenOpts gen_opts;
  gen->add_option("kind", gen_opts.kind, "complete | random-unsat | split-chain")
      ->required()
      ->check(CLI::IsMember({"complete", "random-unsat", "split-chain"}));
  gen->add_option("--width", gen_opts.width, "clause width");
  gen->add_option("--first-var", gen_opts.first_var, "first variable id");
  gen->add_option("--vars", gen_opts.vars, "variable count (random-unsat)");
  gen->add_option("--clauses", gen_opts.clauses, "clause count (random-unsat)");
  gen->add_option("--k", gen_opts.k, "number of splitting steps (split-chain)");
  gen->add_option("--base", gen_opts.base,
                  "split-chain base: complete<w> or a DIMACS file");
  gen->add_option("-o,--out", gen_opts.out, "output DIMACS path")->required();
  add_common_options(gen, common);

  auto* lemma = app.add_subcommand(
      "lemma-check", "confirm the counterexamples to lemmas 5.11/5.17/5.18");
  std::string lemma_which = "all";
  int lemma_k = 4;
  lemma->add_option("--lemma", lemma_which, "511 | 517 | 518 | all")
      ->check(CLI::IsMember({"511", "517", "518", "all"}));
  lemma->add_option("--k", lemma_k, "bound parameter for the 5.11 family");
  add_common_options(lemma, common);

  auto* blowup = app.add_subcommand(
      "blowup", "unbounded-mode expansion counts on x1 & x2 & ... & xn");
  std::uint32_t blowup_n = 12;
  blowup->add_option("--n", blowup_n, "largest variable count")->required();
  add_common_options(blowup, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  std::string command_line;
  for (int i = 0; i < argc; ++i) {
    if (i) command_line += ' ';
    command_line += argv[i];
  }

  try {
    if (solve->parsed()) return cmd_solve(solve_input, common);
    if (oracle->parsed()) return cmd_oracle(oracle_input, common);
    if (diff->parsed()) return cmd_diff(diff_opts, common);
    if (gen->parsed()) return cmd_gen(gen_opts, common, command_line);
    if (lemma->parsed()) return cmd_lemma_check(lemma_which, lemma_k);
    if (blowup->parsed()) return cmd_blowup(blowup_n);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
