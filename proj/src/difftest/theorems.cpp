#include <map>
#include <stdexcept>

#include "common.hpp"

namespace effsim::difftest {

const std::vector<std::string>& theorem_ids() {
  static const std::vector<std::string> ids{"T-localglobal", "T-nondetstateS", "T-nondetstate", "T-statesstate",
                                            "T-simulate",    "T-fusedF",       "T-modify",      "T-trail",
                                            "T-simulateT",   "T-fusedTF"};
  return ids;
}

bool mutation_applies(const std::string& theorem, Mutation m) {
  switch (m) {
    case Mutation::none:
      return true;
    case Mutation::skip_put_restore:
      return theorem == "T-localglobal" || theorem == "T-simulate";
    case Mutation::untrailed_branch:
      return theorem == "T-trail" || theorem == "T-simulateT" || theorem == "T-fusedTF";
    case Mutation::minus_as_plus:
      return theorem == "T-modify" || theorem == "T-trail" || theorem == "T-simulateT" || theorem == "T-fusedTF";
  }
  return false;
}

namespace {

struct Trial {
  ProgPtr prog;
  int s0;
  int s1;
};

Trial draw(std::uint64_t ts, int depth, const GenOptions& opts) {
  Rng rng(ts);
  ProgPtr p = gen_program(rng, depth, opts);
  const int s0 = gen_small(rng);
  const int s1 = gen_small(rng);
  return {p, s0, s1};
}

TrialFn theorem_trial(const std::string& id, Mutation m) {
  const Fault fault = fault_of(m);
  if (id == "T-localglobal") {
    return [=](std::uint64_t ts, int d) {
      auto [p, s, _] = draw(ts, d, kState);
      auto t = lower<StateSig>(p);
      return compare(to_text(*p), h_nil(h_global(local2global(t, fault), s)), h_nil(h_local(t, s)));
    };
  }
  if (id == "T-nondetstateS") {
    return [=](std::uint64_t ts, int d) {
      auto [p, s, _] = draw(ts, d, kPure);
      auto t = lower<NSig>(p);
      return compare(to_text(*p), run_nd(t), h_nd(t));
    };
  }
  if (id == "T-nondetstate") {
    return [=](std::uint64_t ts, int d) {
      auto [p, s, _] = draw(ts, d, kState);
      auto t = lower<NondetStateSig>(p);
      return compare(to_text(*p), h_nil(h_state1(run_ndf(t), s)), h_nil(h_state1(h_ndf(t), s)));
    };
  }
  if (id == "T-statesstate") {
    return [=](std::uint64_t ts, int d) {
      auto [p, s1, s2] = draw(ts, d, kTwoStates);
      auto t = lower<TwoStateSig>(p);
      const std::pair<int, int> s{s1, s2};
      return compare(to_text(*p), h_nil(h_ndf(flatten(h_states_run(t))(s))),
                     h_nil(h_ndf(h_state1(states2state(t), s))));
    };
  }
  if (id == "T-simulate") {
    return [=](std::uint64_t ts, int d) {
      auto [p, s, _] = draw(ts, d, kState);
      auto t = lower<StateSig>(p);
      return compare(to_text(*p), h_nil(simulate(t, s, fault)), h_nil(h_local(t, s)));
    };
  }
  if (id == "T-fusedF") {
    return [=](std::uint64_t ts, int d) {
      auto [p, s, _] = draw(ts, d, kState);
      auto t = lower<StateSig>(p);
      return compare(to_text(*p), h_nil(simulate_f(t, s)), h_nil(simulate(t, s)));
    };
  }
  if (id == "T-modify") {
    return [=](std::uint64_t ts, int d) {
      auto [p, s, _] = draw(ts, d, kModify);
      auto lhs = with_modify_sig(m, [&]<class Sg>() { return h_nil(h_global_m(local2global_m(lower<Sg>(p)), s)); });
      return compare(to_text(*p), lhs, h_nil(h_local_m(lower<ModifySig>(p), s)));
    };
  }
  if (id == "T-trail") {
    return [=](std::uint64_t ts, int d) {
      auto [p, s, _] = draw(ts, d, kModify);
      auto lhs = with_modify_sig(m, [&]<class Sg>() { return h_nil(h_global_t(lower<Sg>(p), s, fault)); });
      return compare(to_text(*p), lhs, h_nil(h_local_m(lower<ModifySig>(p), s)));
    };
  }
  if (id == "T-simulateT") {
    return [=](std::uint64_t ts, int d) {
      auto [p, s, _] = draw(ts, d, kModify);
      auto lhs = with_modify_sig(m, [&]<class Sg>() { return h_nil(simulate_t(lower<Sg>(p), s, fault)); });
      return compare(to_text(*p), lhs, h_nil(h_local_m(lower<ModifySig>(p), s)));
    };
  }
  if (id == "T-fusedTF") {
    return [=](std::uint64_t ts, int d) {
      auto [p, s, _] = draw(ts, d, kModify);
      auto lhs =
          with_modify_sig(m, [&]<class Sg>() { return h_nil(simulate_tf(lower<Sg>(p), s, nullptr, fault)); });
      return compare(to_text(*p), lhs, h_nil(simulate_t(lower<ModifySig>(p), s)));
    };
  }
  throw std::invalid_argument("unknown theorem: " + id);
}

}  // namespace

Report check_theorem(const std::string& id, int trials, std::uint64_t seed, int depth, Mutation mutation) {
  if (!mutation_applies(id, mutation)) {
    throw std::invalid_argument("mutation " + to_string(mutation) + " does not apply to " + id);
  }
  TrialFn fn = theorem_trial(id, mutation);
  const std::string suite = mutation == Mutation::none ? id : id + "[" + to_string(mutation) + "]";
  return run_trials(suite, trials, seed, depth, fn);
}

Report check_oracle(int trials, std::uint64_t seed, int depth) {
  return run_trials("oracle", trials, seed, depth, [](std::uint64_t ts, int d) -> std::optional<Failure> {
    auto [p, s, _] = draw(ts, d, kState);
    const std::string text = to_text(*p);
    auto t = lower<StateSig>(p);
    auto local = oracle_eval(*p, s, OracleMode::local);
    if (auto f = compare("local: " + text, h_nil(h_local(t, s)), local.answers)) return f;
    auto global = oracle_eval(*p, s, OracleMode::global);
    const std::pair<std::vector<int>, int> expected{global.answers, *global.final_state};
    if (auto f = compare("global: " + text, h_nil(h_global_with_state(t, s)), expected)) return f;
    // Same programs with modify operations encoded over the state family.
    auto [q, s2, __] = draw(ts ^ 0x5bd1e995u, d, kModify);
    const std::string qtext = to_text(*q);
    auto mt = lower<ModifySig>(q);
    auto mlocal = oracle_eval(*q, s2, OracleMode::local);
    if (auto f = compare("local modify: " + qtext, h_nil(h_local_m(mt, s2)), mlocal.answers)) return f;
    auto mglobal = oracle_eval(*q, s2, OracleMode::global);
    const std::pair<std::vector<int>, int> mexpected{mglobal.answers, *mglobal.final_state};
    return compare("global modify: " + qtext, h_nil(h_global_m_with_state(mt, s2)), mexpected);
  });
}

}  // namespace effsim::difftest
