#include "effsim/difftest/oracle.hpp"

#include <functional>
#include <utility>

namespace effsim::difftest {

namespace {

using Outcomes = std::vector<std::pair<int, int>>;  // (answer, state)

// Each branch works on its own copy of the state.
Outcomes local(const Prog& p, const Env& env, int s) {
  switch (p.kind) {
    case Prog::Kind::Ret:
      return {{eval(*p.expr, env), s}};
    case Prog::Kind::Fail:
      return {};
    case Prog::Kind::Or: {
      Outcomes out = local(*p.first, env, s);
      Outcomes right = local(*p.second, env, s);
      out.insert(out.end(), right.begin(), right.end());
      return out;
    }
    case Prog::Kind::GetBind:
    case Prog::Kind::MGetBind: {
      Env inner = env;
      inner.push_back(s);
      return local(*p.first, inner, s);
    }
    case Prog::Kind::Put:
      return local(*p.first, env, eval(*p.expr, env));
    case Prog::Kind::Update:
      return local(*p.first, env, s + eval(*p.expr, env));
    case Prog::Kind::Seq: {
      Outcomes out;
      for (const auto& [v, s1] : local(*p.first, env, s)) {
        Outcomes next = local(*p.second, env, s1);
        out.insert(out.end(), next.begin(), next.end());
      }
      return out;
    }
  }
  return {};
}

// One state threaded through every branch in order; returns the state after
// the whole search, with `k` receiving each answer.
using Sink = std::function<int(int answer, int state)>;

int global(const Prog& p, const Env& env, int s, const Sink& k) {
  switch (p.kind) {
    case Prog::Kind::Ret:
      return k(eval(*p.expr, env), s);
    case Prog::Kind::Fail:
      return s;
    case Prog::Kind::Or:
      return global(*p.second, env, global(*p.first, env, s, k), k);
    case Prog::Kind::GetBind:
    case Prog::Kind::MGetBind: {
      Env inner = env;
      inner.push_back(s);
      return global(*p.first, inner, s, k);
    }
    case Prog::Kind::Put:
      return global(*p.first, env, eval(*p.expr, env), k);
    case Prog::Kind::Update:
      return global(*p.first, env, s + eval(*p.expr, env), k);
    case Prog::Kind::Seq:
      return global(*p.first, env, s, [&](int, int s1) { return global(*p.second, env, s1, k); });
  }
  return s;
}

}  // namespace

OracleOutcome oracle_eval(const Prog& p, int s0, OracleMode mode) {
  OracleOutcome out;
  out.mode = mode;
  if (mode == OracleMode::local) {
    for (const auto& [v, s] : local(p, {}, s0)) out.answers.push_back(v);
    return out;
  }
  out.final_state = global(p, {}, s0, [&](int v, int s) {
    out.answers.push_back(v);
    return s;
  });
  return out;
}

}  // namespace effsim::difftest
