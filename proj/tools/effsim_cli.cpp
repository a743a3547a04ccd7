// effsim: queens pipelines, randomized equivalence suites, benchmarks and
// machine traces.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "effsim/difftest/checks.hpp"
#include "effsim/queens.hpp"
#include "effsim/stack.hpp"
#include "json.hpp"

namespace {

using nlohmann::ordered_json;
namespace dt = effsim::difftest;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Config {
  int n = 4;
  std::string pipeline = "fusedTF";
  std::uint64_t seed = 42;
  int trials = 0;  // 0: command default
  int depth = -1;  // -1: command default
  std::string output = "text";
  std::string suite = "all";
  std::string mutation = "none";
  std::size_t budget = 0;
};

bool json_out(const Config& c) { return c.output == "json"; }

std::string show_solution(const effsim::queens::Solution& s) { return ordered_json(s).dump(); }

std::vector<std::string> with_all(std::vector<std::string> xs) {
  xs.insert(xs.begin(), "all");
  return xs;
}

std::vector<std::string> selected(const std::string& suite, const std::vector<std::string>& ids) {
  return suite == "all" ? ids : std::vector<std::string>{suite};
}

int emit_reports(const Config& c, const std::vector<dt::Report>& reports, ordered_json extra = nullptr) {
  bool ok = true;
  for (const auto& r : reports) ok = ok && r.ok();
  if (json_out(c)) {
    if (reports.size() == 1 && extra.is_null()) {
      std::cout << dt::to_json(reports.front()).dump() << "\n";
    } else {
      ordered_json all = ordered_json::array();
      for (const auto& r : reports) all.push_back(dt::to_json(r));
      if (!extra.is_null()) all.push_back(extra);
      std::cout << all.dump() << "\n";
    }
  } else {
    for (const auto& r : reports) std::cout << dt::to_text(r);
  }
  return ok ? kExitOk : kExitFailure;
}

int cmd_queens(const Config& c) {
  auto sols = effsim::queens::run_pipeline(c.pipeline, c.n);
  if (json_out(c)) {
    ordered_json out{{"n", c.n}, {"solutions", sols}, {"count", sols.size()}};
    std::cout << out.dump() << "\n";
  } else {
    std::cout << "queens " << c.n << " via " << c.pipeline << "\n";
    for (const auto& s : sols) std::cout << show_solution(s) << "\n";
    std::cout << "count: " << sols.size() << "\n";
  }
  return kExitOk;
}

int cmd_difftest(const Config& c) {
  const auto mutation = dt::parse_mutation(c.mutation);
  const int trials = c.trials > 0 ? c.trials : 1000;
  const int depth = c.depth >= 0 ? c.depth : 6;
  std::vector<dt::Report> reports;
  for (const auto& id : selected(c.suite, with_all(dt::theorem_ids()))) {
    if (id == "all") {
      for (const auto& t : dt::theorem_ids()) {
        if (dt::mutation_applies(t, *mutation)) reports.push_back(dt::check_theorem(t, trials, c.seed, depth, *mutation));
      }
      if (*mutation == dt::Mutation::none) reports.push_back(dt::check_oracle(trials, c.seed, depth));
    } else if (id == "oracle") {
      reports.push_back(dt::check_oracle(trials, c.seed, depth));
    } else {
      reports.push_back(dt::check_theorem(id, trials, c.seed, depth, *mutation));
    }
  }
  return emit_reports(c, reports);
}

int cmd_laws(const Config& c) {
  const int trials = c.trials > 0 ? c.trials : 500;
  const int depth = c.depth >= 0 ? c.depth : 4;
  std::vector<dt::Report> reports;
  ordered_json extra = nullptr;
  int status = kExitOk;
  for (const auto& s : selected(c.suite, dt::law_suites())) {
    reports.push_back(dt::check_laws(s, trials, c.seed, depth));
    if (s != "globalstate") continue;
    auto cx = dt::find_local_put_or_counterexample(c.seed);
    if (!cx) status = kExitFailure;
    if (json_out(c)) {
      extra = {{"suite", "laws/globalstate-local-counterexample"}, {"found", cx.has_value()}};
      if (cx) extra["example"] = {{"trialSeed", cx->trial_seed}, {"astText", cx->ast_text}, {"lhs", cx->lhs}, {"rhs", cx->rhs}};
    } else if (cx) {
      std::cout << "put-or under local state: counterexample found (trial seed " << cx->trial_seed << ")\n"
                << "    program: " << cx->ast_text << "\n    lhs:     " << cx->lhs << "\n    rhs:     " << cx->rhs
                << "\n";
    } else {
      std::cout << "put-or under local state: no counterexample found\n";
    }
  }
  const int rs = emit_reports(c, reports, extra);
  return rs != kExitOk ? rs : status;
}

int cmd_lemmas(const Config& c) {
  const int trials = c.trials > 0 ? c.trials : 500;
  const int depth = c.depth >= 0 ? c.depth : 5;
  std::vector<dt::Report> reports;
  for (const auto& id : selected(c.suite, dt::lemma_ids())) reports.push_back(dt::check_lemma(id, trials, c.seed, depth));
  return emit_reports(c, reports);
}

int cmd_bench(const Config& c) {
  using clock = std::chrono::steady_clock;
  struct Row {
    std::string name;
    std::size_t count;
    double seconds;
  };
  std::vector<Row> rows;
  std::vector<effsim::queens::Solution> reference;
  bool agree = true;
  for (const auto& name : effsim::queens::pipeline_names()) {
    const auto t0 = clock::now();
    auto sols = effsim::queens::run_pipeline(name, c.n);
    const double secs = std::chrono::duration<double>(clock::now() - t0).count();
    if (rows.empty()) reference = sols;
    agree = agree && sols == reference;
    rows.push_back({name, sols.size(), secs});
  }
  if (json_out(c)) {
    ordered_json runs = ordered_json::array();
    for (const auto& r : rows) runs.push_back({{"pipeline", r.name}, {"count", r.count}, {"seconds", r.seconds}});
    std::cout << ordered_json{{"n", c.n}, {"agree", agree}, {"count", reference.size()}, {"runs", runs}}.dump() << "\n";
  } else {
    std::cout << "queens " << c.n << ": " << (agree ? "all pipelines agree" : "PIPELINES DISAGREE") << " ("
              << reference.size() << " solutions)\n";
    for (const auto& r : rows) {
      std::cout << "  " << r.name << std::string(10 - std::min<std::size_t>(r.name.size(), 9), ' ') << r.count
                << " solutions  " << r.seconds << " s\n";
    }
  }
  return agree ? kExitOk : kExitFailure;
}

int cmd_trace(const Config& c) {
  auto run = effsim::queens::trace_pipeline(c.pipeline, c.n, c.budget);
  if (json_out(c)) {
    ordered_json steps = ordered_json::array();
    for (const auto& s : run.steps) {
      steps.push_back({{"op", s.op}, {"results", s.results}, {"cpStack", s.cp_stack}, {"trail", s.trail},
                       {"markers", s.markers}});
    }
    std::cout << ordered_json{{"pipeline", c.pipeline}, {"n", c.n}, {"count", run.solutions.size()}, {"steps", steps}}
                     .dump()
              << "\n";
  } else {
    std::cout << "step op results cp_stack trail markers\n";
    std::size_t i = 0;
    for (const auto& s : run.steps) {
      std::cout << i++ << " " << s.op << " " << s.results << " " << s.cp_stack << " " << s.trail << " " << s.markers
                << "\n";
    }
    std::cout << "solutions: " << run.solutions.size() << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"effsim: effect handlers, state simulations and the n-queens running example"};
  app.require_subcommand(1, 1);
  Config c;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", c.seed, "random seed")->envname("EFFSIM_SEED");
    sub->add_option("--output", c.output, "output format")->check(CLI::IsMember({"text", "json"}));
  };
  auto add_suite_opts = [&](CLI::App* sub, std::vector<std::string> suites) {
    add_common(sub);
    sub->add_option("--suite", c.suite, "suite to run")->check(CLI::IsMember(with_all(std::move(suites))));
    sub->add_option("--trials", c.trials, "trials per suite")->check(CLI::Range(1, 100000000));
    sub->add_option("--depth", c.depth, "program depth")->check(CLI::Range(0, 10));
  };

  auto* queens = app.add_subcommand("queens", "solve n-queens with one pipeline");
  queens->add_option("--n", c.n, "board size")->required()->check(CLI::Range(1, 64));
  queens->add_option("--pipeline", c.pipeline, "pipeline name")->check(CLI::IsMember(effsim::queens::pipeline_names()));
  add_common(queens);

  auto* difftest = app.add_subcommand("difftest", "randomized theorem checks");
  auto suites = dt::theorem_ids();
  suites.push_back("oracle");
  add_suite_opts(difftest, suites);
  std::vector<std::string> mutations{"none", "skip-put-restore", "untrailed-branch", "minus-as-plus"};
  difftest->add_option("--mutation", c.mutation, "seeded defect in the side under test")
      ->check(CLI::IsMember(mutations));

  auto* laws = app.add_subcommand("laws", "algebraic law checks");
  add_suite_opts(laws, dt::law_suites());

  auto* lemmas = app.add_subcommand("lemmas", "lemma checks");
  add_suite_opts(lemmas, dt::lemma_ids());

  auto* bench = app.add_subcommand("bench", "time every pipeline on one board");
  bench->add_option("--n", c.n, "board size")->required()->check(CLI::Range(1, 64));
  add_common(bench);

  auto* trace = app.add_subcommand("trace", "machine step records for a fused pipeline");
  trace->add_option("--n", c.n, "board size")->required()->check(CLI::Range(1, 64));
  trace->add_option("--pipeline", c.pipeline, "fused pipeline")->check(CLI::IsMember({"fusedF", "fusedTF"}));
  trace->add_option("--budget", c.budget, "maximum number of steps, 0 for none");
  add_common(trace);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (difftest->parsed() && c.suite != "all" && c.mutation != "none" &&
      !dt::mutation_applies(c.suite, *dt::parse_mutation(c.mutation))) {
    std::cerr << "mutation " << c.mutation << " does not apply to " << c.suite << "\n" << app.help();
    return kExitUsage;
  }

  try {
    return effsim::with_big_stack([&]() -> int {
      if (queens->parsed()) return cmd_queens(c);
      if (difftest->parsed()) return cmd_difftest(c);
      if (laws->parsed()) return cmd_laws(c);
      if (lemmas->parsed()) return cmd_lemmas(c);
      if (bench->parsed()) return cmd_bench(c);
      return cmd_trace(c);
    });
  } catch (const effsim::StepBudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
