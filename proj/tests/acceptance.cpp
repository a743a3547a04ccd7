// Acceptance run: one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "effsim/difftest/checks.hpp"
#include "effsim/queens.hpp"
#include "effsim/stack.hpp"

namespace {

namespace dt = effsim::difftest;
namespace q = effsim::queens;
using Clock = std::chrono::steady_clock;

// Pinned limits.
constexpr double kGroundTruthSeconds = 1.0;
constexpr double kSlowestN8Seconds = 30.0;
constexpr double kTheoremSeconds = 60.0;
constexpr int kTheoremTrials = 1000;
constexpr int kTheoremDepth = 6;
constexpr std::uint64_t kFirstTheoremSeed = 41;
constexpr int kLawTrials = 500;
constexpr int kLemmaTrials = 500;
constexpr int kOracleTrials = 1000;
constexpr int kMutationTrials = 1000;
constexpr std::uint64_t kSuiteSeed = 2024;
// Counts from the generate-and-test oracle, computed before the main build.
const std::vector<std::size_t> kNaiveCounts{2, 10, 4, 40, 92};  // n = 4..8

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass;
  std::string detail;
};

Outcome queens_ground_truth() {
  const std::vector<q::Solution> expected{{2, 4, 1, 3}, {3, 1, 4, 2}};
  const auto t0 = Clock::now();
  std::string bad;
  for (const auto& name : q::pipeline_names()) {
    if (q::run_pipeline(name, 4) != expected) bad += " " + name;
  }
  const double secs = since(t0);
  const bool ok = bad.empty() && secs < kGroundTruthSeconds;
  return {ok, "10 pipelines, n=4, " + std::to_string(secs) + " s" + (bad.empty() ? "" : "; wrong:" + bad)};
}

Outcome queens_cross_agreement() {
  std::string bad;
  double slowest8 = 0;
  std::string slowest_name;
  for (int n = 1; n <= 8; ++n) {
    const auto oracle = q::run_pipeline("naive", n);
    if (n >= 4 && oracle.size() != kNaiveCounts[static_cast<std::size_t>(n - 4)]) {
      bad += " naive-count(n=" + std::to_string(n) + ")";
    }
    for (const auto& name : q::pipeline_names()) {
      const auto t0 = Clock::now();
      const auto sols = q::run_pipeline(name, n);
      const double secs = since(t0);
      if (n == 8 && secs > slowest8) {
        slowest8 = secs;
        slowest_name = name;
      }
      if (sols != oracle) bad += " " + name + "(n=" + std::to_string(n) + ")";
    }
  }
  const bool ok = bad.empty() && slowest8 < kSlowestN8Seconds;
  return {ok, "n=1..8, slowest n=8 pipeline " + slowest_name + " " + std::to_string(slowest8) + " s" +
                  (bad.empty() ? "" : "; disagree:" + bad)};
}

Outcome theorem_suite() {
  const auto t0 = Clock::now();
  std::string bad;
  std::uint64_t seed = kFirstTheoremSeed;
  for (const auto& id : dt::theorem_ids()) {
    auto r = dt::check_theorem(id, kTheoremTrials, seed++, kTheoremDepth);
    if (!r.ok()) bad += " " + id + "(" + std::to_string(r.failures.size()) + ")";
  }
  const double secs = since(t0);
  return {bad.empty() && secs < kTheoremSeconds,
          "10 theorems x 1000 trials, depth 6, seeds 41..50, " + std::to_string(secs) + " s" +
              (bad.empty() ? "" : "; failing:" + bad)};
}

Outcome law_suite() {
  std::string bad;
  for (const auto& s : dt::law_suites()) {
    auto r = dt::check_laws(s, kLawTrials, kSuiteSeed);
    if (!r.ok()) bad += " " + s + "(" + std::to_string(r.failures.size()) + ")";
  }
  const auto cx = dt::find_local_put_or_counterexample(kSuiteSeed);
  if (!cx) bad += " no-local-put-or-counterexample";
  return {bad.empty(), "6 suites x 500 trials; put-or counterexample under local state " +
                           std::string(cx ? "found" : "not found") + (bad.empty() ? "" : "; failing:" + bad)};
}

Outcome lemma_suite() {
  std::string bad;
  for (const auto& id : dt::lemma_ids()) {
    auto r = dt::check_lemma(id, kLemmaTrials, kSuiteSeed);
    if (!r.ok()) bad += " " + id + "(" + std::to_string(r.failures.size()) + ")";
  }
  return {bad.empty(), "8 lemmas x 500 trials" + (bad.empty() ? "" : "; failing:" + bad)};
}

Outcome oracle_anchor() {
  auto r = dt::check_oracle(kOracleTrials, kSuiteSeed);
  return {r.ok(), "1000 programs, " + std::to_string(r.failures.size()) + " mismatches"};
}

Outcome mutation_sensitivity() {
  struct Probe {
    dt::Mutation m;
    std::vector<std::string> suites;
  };
  const std::vector<Probe> probes{
      {dt::Mutation::skip_put_restore, {"T-localglobal", "T-simulate"}},
      {dt::Mutation::untrailed_branch, {"T-trail", "T-simulateT", "T-fusedTF"}},
      {dt::Mutation::minus_as_plus, {"T-modify", "T-trail", "T-simulateT", "T-fusedTF"}},
  };
  std::string detail;
  bool ok = true;
  for (const auto& p : probes) {
    std::string caught_by;
    for (const auto& id : p.suites) {
      auto r = dt::check_theorem(id, kMutationTrials, kSuiteSeed, kTheoremDepth, p.m);
      if (!r.ok()) {
        caught_by = id + " (" + std::to_string(r.failures.size()) + "/" + std::to_string(kMutationTrials) + ")";
        break;
      }
    }
    ok = ok && !caught_by.empty();
    detail += (detail.empty() ? "" : "; ") + dt::to_string(p.m) + " caught by " +
              (caught_by.empty() ? std::string("nothing") : caught_by);
  }
  return {ok, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"queens-ground-truth", queens_ground_truth}, {"queens-cross-agreement", queens_cross_agreement},
      {"theorem-suite", theorem_suite},             {"law-suite", law_suite},
      {"lemma-suite", lemma_suite},                 {"oracle-anchor", oracle_anchor},
      {"mutation-sensitivity", mutation_sensitivity},
  };
  int failed = 0;
  effsim::run_on_big_stack([&] {
    for (const auto& [name, run] : criteria) {
      Outcome o = run();
      std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
      std::fflush(stdout);
      failed += o.pass ? 0 : 1;
    }
  });
  return failed == 0 ? 0 : 1;
}
