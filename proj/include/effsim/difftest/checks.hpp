#pragma once

// Randomized equivalence checks: theorems, algebraic laws, lemmas, and the
// oracle anchor. Every check is deterministic in its seed.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace effsim::difftest {

/// Seeded defects for mutation testing; they only affect the side under test.
enum class Mutation {
  none,
  skip_put_restore,  // local2global leaves put untouched
  untrailed_branch,  // the right branch of a choice does not untrail
  minus_as_plus,     // restore adds the delta instead of subtracting it
};

std::optional<Mutation> parse_mutation(std::string_view s);
std::string to_string(Mutation m);

struct Failure {
  std::uint64_t trial_seed = 0;
  int depth = 0;  // smallest depth at which the trial seed still fails
  std::string ast_text;
  std::string lhs;
  std::string rhs;
};

struct Report {
  std::string suite;
  std::uint64_t seed = 0;
  int trials = 0;
  int depth = 0;
  std::vector<Failure> failures;

  [[nodiscard]] bool ok() const { return failures.empty(); }
};

nlohmann::ordered_json to_json(const Report& r);
std::string to_text(const Report& r);

/// One trial: nullopt on agreement.
using TrialFn = std::function<std::optional<Failure>(std::uint64_t trial_seed, int depth)>;

/// Runs `trials` trials from `seed`. A failing trial is replayed at
/// decreasing depths and the smallest failing one is recorded. Exceptions
/// count as failures.
Report run_trials(const std::string& suite, int trials, std::uint64_t seed, int depth, const TrialFn& fn);

const std::vector<std::string>& theorem_ids();
const std::vector<std::string>& law_suites();
const std::vector<std::string>& lemma_ids();

/// Mutations a theorem can carry; check_theorem throws invalid_argument otherwise.
bool mutation_applies(const std::string& theorem, Mutation m);

Report check_theorem(const std::string& id, int trials, std::uint64_t seed, int depth = 6,
                     Mutation mutation = Mutation::none);
Report check_laws(const std::string& suite, int trials, std::uint64_t seed, int depth = 4);
Report check_lemma(const std::string& id, int trials, std::uint64_t seed, int depth = 5);

/// hLocal and hGlobal against the direct evaluator.
Report check_oracle(int trials, std::uint64_t seed, int depth = 6);

/// Searches for programs where lifting a put out of the left branch changes
/// the local-state answers.
std::optional<Failure> find_local_put_or_counterexample(std::uint64_t seed, int max_trials = 1000, int depth = 3);

}  // namespace effsim::difftest
