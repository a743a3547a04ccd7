#include <exception>
#include <random>
#include <sstream>

#include "effsim/difftest/checks.hpp"

namespace effsim::difftest {

std::optional<Mutation> parse_mutation(std::string_view s) {
  if (s == "none") return Mutation::none;
  if (s == "skip-put-restore") return Mutation::skip_put_restore;
  if (s == "untrailed-branch") return Mutation::untrailed_branch;
  if (s == "minus-as-plus") return Mutation::minus_as_plus;
  return std::nullopt;
}

std::string to_string(Mutation m) {
  switch (m) {
    case Mutation::none:
      return "none";
    case Mutation::skip_put_restore:
      return "skip-put-restore";
    case Mutation::untrailed_branch:
      return "untrailed-branch";
    case Mutation::minus_as_plus:
      return "minus-as-plus";
  }
  return "?";
}

nlohmann::ordered_json to_json(const Report& r) {
  nlohmann::ordered_json failures = nlohmann::ordered_json::array();
  for (const auto& f : r.failures) {
    failures.push_back({{"trialSeed", f.trial_seed},
                        {"depth", f.depth},
                        {"astText", f.ast_text},
                        {"lhs", f.lhs},
                        {"rhs", f.rhs}});
  }
  return {{"suite", r.suite}, {"seed", r.seed}, {"trials", r.trials}, {"failures", failures}};
}

std::string to_text(const Report& r) {
  std::ostringstream os;
  os << r.suite << ": " << (r.ok() ? "ok" : "FAILED") << " (" << r.trials << " trials, seed " << r.seed << ", "
     << r.failures.size() << " failures)\n";
  for (const auto& f : r.failures) {
    os << "  trial seed " << f.trial_seed << " depth " << f.depth << "\n"
       << "    program: " << f.ast_text << "\n"
       << "    lhs:     " << f.lhs << "\n"
       << "    rhs:     " << f.rhs << "\n";
  }
  return os.str();
}

namespace {

std::optional<Failure> guarded(const TrialFn& fn, std::uint64_t ts, int depth) {
  try {
    return fn(ts, depth);
  } catch (const std::exception& e) {
    return Failure{ts, depth, "(exception)", std::string("exception: ") + e.what(), ""};
  }
}

constexpr std::size_t kReplayed = 8;

}  // namespace

Report run_trials(const std::string& suite, int trials, std::uint64_t seed, int depth, const TrialFn& fn) {
  Report rep{suite, seed, trials, depth, {}};
  std::mt19937_64 master(seed);
  for (int i = 0; i < trials; ++i) {
    const std::uint64_t ts = master();
    auto f = guarded(fn, ts, depth);
    if (!f) continue;
    f->trial_seed = ts;
    f->depth = depth;
    if (rep.failures.size() < kReplayed) {
      for (int d = depth - 1; d >= 0; --d) {
        auto g = guarded(fn, ts, d);
        if (!g) break;
        f = std::move(g);
        f->trial_seed = ts;
        f->depth = d;
      }
    }
    rep.failures.push_back(std::move(*f));
  }
  return rep;
}

}  // namespace effsim::difftest
