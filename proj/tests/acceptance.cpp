// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Each criterion pins its own tolerances; timings are wall-clock.

#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qrefute/cnf.hpp"
#include "qrefute/dimacs.hpp"
#include "qrefute/engine.hpp"
#include "qrefute/forge.hpp"
#include "qrefute/oracle.hpp"
#include "qrefute/rules.hpp"

using namespace qrefute;
namespace fs = std::filesystem;

namespace {

struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define EXPECT(cond, message)                                        \
  do {                                                               \
    if (!(cond)) throw CheckFailure(std::string("expected ") + #cond + \
                                    ": " + (message));              \
  } while (0)

std::string fmt(const char* format, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

// Every engine run feeds the termination/size-bound criterion. The bound is
// also enforced right here, so runs performed after that criterion's own
// line (criterion 10's) still fail the suite if they violate it.
struct TrackedRun {
  std::size_t num_variables = 0;
  SolveReport report;
};
std::vector<TrackedRun> g_runs;

SolveReport tracked_solve(QuigleyEngine& engine, const Formula& f) {
  SolveReport r = engine.solve();
  const std::uint64_t bound = count_bound(f.num_variables(), 3);
  if (r.final_db_size > bound || r.iterations > bound + 1)
    throw CheckFailure(fmt("termination bound violated: %llu clauses, %u "
                           "iterations, count_bound(n,3) = %llu",
                           static_cast<unsigned long long>(r.final_db_size),
                           r.iterations,
                           static_cast<unsigned long long>(bound)));
  g_runs.push_back({f.num_variables(), r});
  return r;
}

// Shared corpus of criteria 4 and 5.
struct CorpusResult {
  Verdict engine_verdict;
  OracleStatus oracle_status;
};
std::vector<CorpusResult> g_corpus;

Formula random_cnf_up_to_3(std::mt19937_64& rng, VariableId num_vars,
                           std::size_t num_clauses) {
  std::vector<std::vector<Literal>> raw;
  std::vector<VariableId> pool(num_vars);
  for (std::size_t c = 0; c < num_clauses; ++c) {
    std::size_t width = 1 + rng() % 3;
    width = std::min<std::size_t>(width, num_vars);
    for (VariableId v = 0; v < num_vars; ++v) pool[v] = v + 1;
    std::vector<Literal> lits;
    for (std::size_t t = 0; t < width; ++t) {
      const std::size_t pick = t + rng() % (num_vars - t);
      std::swap(pool[t], pool[pick]);
      lits.push_back(Literal(pool[t], (rng() & 1) == 0));
    }
    raw.push_back(std::move(lits));
  }
  return normalize(raw);
}

// --- criteria -----------------------------------------------------------

std::string criterion_base_refutation() {
  const auto start = std::chrono::steady_clock::now();

  const Formula base = complete_unsat_cnf(4);
  EXPECT(base.clauses.size() == 16, "complete 4CNF clause count");
  const auto [phi, meta] = split_once(base);
  EXPECT(phi.clauses.size() == 32, "split clause count");
  EXPECT(phi.num_variables() == 20, "split variable count");

  QuigleyEngine engine(phi, EngineConfig{});
  const SolveReport report = tracked_solve(engine, phi);
  EXPECT(report.verdict == Verdict::claimed_sat, "engine must claim sat");
  EXPECT(report.iterations == 2, "exactly two outer iterations");
  EXPECT(report.added_per_iteration.back() == 0, "second pass adds nothing");

  const OracleVerdict oracle = dpll_sat(phi);
  EXPECT(oracle.status == OracleStatus::unsat, "oracle must prove unsat");

  const double elapsed = seconds_since(start);
  EXPECT(elapsed < 1.0, "runtime under 1 s");
  return "engine claimed_sat in 2 iterations, oracle unsat";
}

std::string criterion_chain_refutation() {
  const auto start = std::chrono::steady_clock::now();

  const Formula base = complete_unsat_cnf(6);
  EXPECT(base.clauses.size() == 64, "complete 6CNF clause count");
  const auto [phi0, metas] = split_to_3cnf(base, 2);
  EXPECT(phi0.clauses.size() == 256, "chain clause count");
  EXPECT(phi0.num_variables() == 198, "chain variable count");

  QuigleyEngine engine(phi0, EngineConfig{});
  const SolveReport report = tracked_solve(engine, phi0);
  EXPECT(report.verdict == Verdict::claimed_sat, "engine must claim sat");

  const OracleVerdict oracle = dpll_sat(phi0);
  EXPECT(oracle.status == OracleStatus::unsat, "dpll must prove unsat");

  const double elapsed = seconds_since(start);
  EXPECT(elapsed < 30.0, "runtime under 30 s");
  return "256 clauses / 198 vars: claimed_sat vs dpll unsat";
}

std::string criterion_lemma_counterexamples() {
  const auto start = std::chrono::steady_clock::now();

  for (int k = 4; k <= 10; ++k) {
    const CheckReport r = check_scenario(lemma511_instance(k));
    EXPECT(r.confirmed(), fmt("5.11 confirmed at k=%d", k));
  }
  EXPECT(check_scenario(lemma517_instance()).confirmed(), "5.17 confirmed");
  EXPECT(check_scenario(lemma518_instance()).confirmed(), "5.18 confirmed");

  const LemmaScenario s517 = lemma517_instance();
  std::vector<Clause> seeds;
  for (const auto& [name, c] : s517.premises) seeds.push_back(c);
  const ClauseDb closure =
      bounded_closure(seeds, 3, s517.rules, s517.scenario_variables());
  EXPECT(closure.size() == seeds.size() + 1,
         "5.17 bounded closure adds exactly one clause");
  const auto extra = clause_from_ints({2, 5, 6});
  EXPECT(closure.contains(*extra), "the added clause is (a2 | a5 | a6)");

  const double elapsed = seconds_since(start);
  EXPECT(elapsed < 1.0, "runtime under 1 s");
  return "5.11 for k=4..10, 5.17, 5.18 all confirmed";
}

std::string criterion_soundness_suite() {
  const auto start = std::chrono::steady_clock::now();

  std::mt19937_64 rng(0x5EED5EEDull);
  std::size_t clauses_checked = 0;
  g_corpus.clear();
  for (int i = 0; i < 200; ++i) {
    const VariableId num_vars = 3 + static_cast<VariableId>(rng() % 8);
    const std::size_t num_clauses = 5 + rng() % 26;
    const Formula f = random_cnf_up_to_3(rng, num_vars, num_clauses);

    QuigleyEngine engine(f, EngineConfig{});
    const SolveReport report = tracked_solve(engine, f);
    for (const Clause& c : engine.db().clauses()) {
      EXPECT(entails(f, c), fmt("instance %d: stored clause not entailed", i));
      ++clauses_checked;
    }

    const OracleVerdict oracle = brute_force_sat(f);
    if (report.verdict == Verdict::unsat)
      EXPECT(oracle.status == OracleStatus::unsat,
             fmt("instance %d: false unsat", i));
    g_corpus.push_back({report.verdict, oracle.status});
  }

  const double elapsed = seconds_since(start);
  EXPECT(elapsed < 60.0, "runtime under 60 s");
  return fmt("200 instances, %zu stored clauses all entailed",
             clauses_checked);
}

std::string criterion_one_sided_error() {
  EXPECT(g_corpus.size() == 200, "corpus populated by criterion 4");
  std::size_t false_sat = 0;
  for (const CorpusResult& r : g_corpus) {
    EXPECT(!(r.engine_verdict == Verdict::unsat &&
             r.oracle_status == OracleStatus::sat),
           "engine-unsat on a satisfiable instance");
    if (r.engine_verdict == Verdict::claimed_sat &&
        r.oracle_status == OracleStatus::unsat)
      ++false_sat;
  }
  return fmt("no unsat-vs-sat cases; %zu of 200 claimed sat but unsat",
             false_sat);
}

std::string criterion_termination_bounds() {
  EXPECT(!g_runs.empty(), "engine runs were tracked");
  for (const TrackedRun& run : g_runs) {
    const std::uint64_t bound = count_bound(run.num_variables, 3);
    EXPECT(run.report.final_db_size <= bound, "final_db_size within bound");
    EXPECT(run.report.iterations <= bound + 1, "iterations within bound + 1");
  }
  return fmt("%zu engine runs within count_bound(n,3) limits; later runs are "
             "checked as they happen",
             g_runs.size());
}

std::string criterion_blowup() {
  for (std::uint32_t n = 1; n <= 16; ++n) {
    const BlowupReport rep = blowup_demo(n);
    // at n = 1 no terminal exists to expand with, so the count is 0, not 2^0
    const std::uint64_t expected = n == 1 ? 0 : std::uint64_t{1} << (n - 1);
    EXPECT(rep.full_length == expected,
           fmt("n=%u: full-length count must be 2^(n-1)", n));
  }
  return "full-length expansions equal 2^(n-1) for n = 2..16 (0 at n = 1)";
}

std::string criterion_sequence_and_width() {
  std::uint64_t recurrence = 3;
  EXPECT(b_sequence(0) == 3, "b_0");
  for (std::uint32_t n = 1; n <= 30; ++n) {
    recurrence = 2 * (recurrence - 1);
    EXPECT(b_sequence(n) == recurrence, fmt("b_%u recurrence", n));
    EXPECT(b_sequence(n) == (std::uint64_t{1} << n) + 2, fmt("b_%u closed form", n));
  }

  std::mt19937_64 rng(0xB5Eull);
  std::size_t split_instances = 0;
  for (std::size_t width : {4u, 6u, 8u, 10u, 18u}) {
    const Formula phi =
        random_kcnf(width, static_cast<VariableId>(width + 4), 6, rng);
    const auto [split, meta] = split_once(phi);
    for (const Clause& c : split.clauses)
      EXPECT(c.size() == width / 2 + 1, "split width is w/2 + 1");
    ++split_instances;
  }
  return fmt("b_n agrees to n=30; width halves-plus-one on %zu widths",
             split_instances);
}

std::string criterion_split_preservation() {
  const auto start = std::chrono::steady_clock::now();

  std::mt19937_64 rng(0xF00DF00Dull);
  std::size_t unsat_cases = 0, sat_cases = 0;
  for (int i = 0; i < 100; ++i) {
    // half dense over few variables (unsat-leaning), half sparse (sat-leaning)
    const VariableId num_vars =
        (i % 2 == 0) ? 4 : 5 + static_cast<VariableId>(rng() % 4);
    const std::size_t num_clauses =
        (i % 2 == 0) ? 30 + rng() % 50 : 4 + rng() % 20;
    const Formula phi = random_kcnf(4, num_vars, num_clauses, rng);

    const bool sat_before = brute_force_sat(phi).sat();
    const auto [split, meta] = split_once(phi);
    for (const Clause& c : split.clauses)
      EXPECT(c.size() == 3, "split of width 4 has width 3");
    const bool sat_after = dpll_sat(split).sat();
    EXPECT(sat_before == sat_after, fmt("instance %d: verdict changed", i));
    (sat_before ? sat_cases : unsat_cases) += 1;
  }
  EXPECT(unsat_cases > 0, "corpus includes unsat instances");
  EXPECT(sat_cases > 0, "corpus includes sat instances");

  const double elapsed = seconds_since(start);
  EXPECT(elapsed < 60.0, "runtime under 60 s");
  return fmt("100 splits verdict-preserving (%zu unsat, %zu sat)", unsat_cases,
             sat_cases);
}

std::string criterion_derived_structure() {
  std::mt19937_64 rng(0xAB12CD34ull);
  std::size_t derived_total = 0;
  for (int i = 0; i < 20; ++i) {
    const VariableId num_vars = 4 + static_cast<VariableId>(rng() % 2);
    const std::size_t num_clauses = 40 + rng() % 25;
    const Formula base =
        random_unsat_kcnf(4, num_vars, num_clauses, 1000 + i, 200'000);
    const auto [phi, meta] = split_once(base);
    for (const Clause& c : phi.clauses)
      EXPECT(c.size() == 3, "split of width 4 has width 3");

    QuigleyEngine engine(phi, EngineConfig{});
    const SolveReport report = tracked_solve(engine, phi);
    EXPECT(report.verdict == Verdict::claimed_sat,
           "every split instance is claimed satisfiable");
    for (std::size_t c = 0; c < engine.db().size(); ++c) {
      if (engine.db().origin(c) == ClauseOrigin::input) continue;
      EXPECT(engine.db().origin_iteration(c) == 1,
             "every derived clause comes from pass 1");
      int original = 0, fresh = 0;
      for (Literal l : engine.db().clause(c))
        (meta.is_fresh(l.var()) ? fresh : original) += 1;
      EXPECT(original == 1 && fresh == 2,
             fmt("instance %d: derived clause shape", i));
      ++derived_total;
    }
  }
  return fmt("20 split instances, %zu derived clauses all (a | x | x') shaped",
             derived_total);
}

std::string criterion_dimacs_round_trip() {
  const fs::path dir =
      fs::temp_directory_path() / ("qrefute-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(dir);

  std::mt19937_64 rng(0xD1AC5ull);
  std::size_t count = 0;
  auto round_trip = [&](const Formula& f) {
    const std::string text = emit_dimacs(f);
    const fs::path path = dir / ("rt-" + std::to_string(count) + ".cnf");
    {
      std::ofstream out(path, std::ios::binary);
      out << text;
    }
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    const ParseResult parsed = parse_dimacs(ss.str());
    EXPECT(parsed.formula == f, "parse(emit(f)) == f");
    EXPECT(emit_dimacs(parsed.formula) == text, "emit is byte-stable");
    ++count;
  };

  for (int i = 0; i < 60; ++i)
    round_trip(random_cnf_up_to_3(rng, 2 + rng() % 10, 1 + rng() % 25));
  for (int i = 0; i < 20; ++i)
    round_trip(random_kcnf(4, 6 + rng() % 3, 5 + rng() % 30, rng));
  for (std::size_t w = 1; w <= 5; ++w)
    round_trip(complete_unsat_cnf(w, 1 + static_cast<VariableId>(w)));
  for (int i = 0; i < 15; ++i)
    round_trip(split_once(random_kcnf(4, 5 + rng() % 3, 4 + rng() % 20, rng)).first);

  fs::remove_all(dir);
  EXPECT(count == 100, "100 files round-tripped");
  return "100 generated files identical through parse/emit";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<std::string()>>> criteria{
      {"base refutation (split complete 4CNF)", criterion_base_refutation},
      {"chain refutation (split complete 6CNF twice)", criterion_chain_refutation},
      {"lemma counterexamples 5.11 / 5.17 / 5.18", criterion_lemma_counterexamples},
      {"soundness of every stored clause", criterion_soundness_suite},
      {"one-sided error only", criterion_one_sided_error},
      {"termination and size bounds", criterion_termination_bounds},
      {"unbounded expansion blowup 2^(n-1)", criterion_blowup},
      {"b_n sequence and split width arithmetic", criterion_sequence_and_width},
      {"split preserves the oracle verdict", criterion_split_preservation},
      {"derived clause structure on split inputs", criterion_derived_structure},
      {"DIMACS round trip", criterion_dimacs_round_trip},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      detail = criteria[i].second();
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    std::printf("[%2zu/11] %s  %s: %s (%.2f s)\n", i + 1, ok ? "PASS" : "FAIL",
                criteria[i].first.c_str(), detail.c_str(),
                seconds_since(start));
    std::fflush(stdout);
    if (!ok) ++failures;
  }

  std::printf("%zu criteria, %d failure(s)\n", criteria.size(), failures);
  return failures == 0 ? 0 : 1;
}
