#pragma once

// Fused single-pass machines: a choicepoint machine for get/put state and a
// choicepoint-plus-trail machine for reversible updates.

#include <cstddef>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "effsim/effect.hpp"
#include "effsim/plist.hpp"
#include "effsim/semantics.hpp"
#include "effsim/translations.hpp"

namespace effsim {

/// One machine transition as seen by the step trace.
struct StepRecord {
  std::string op;
  std::size_t results = 0;
  std::size_t cp_stack = 0;
  std::size_t trail = 0;
  std::size_t markers = 0;

  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

struct StepBudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Collects step records. A budget of 0 means unbounded.
class StepTrace {
 public:
  explicit StepTrace(std::size_t budget = 0) : budget_(budget) {}

  void record(StepRecord r) {
    if (budget_ != 0 && steps_.size() >= budget_) throw StepBudgetExceeded("machine step budget exceeded");
    steps_.push_back(std::move(r));
  }

  [[nodiscard]] const std::vector<StepRecord>& steps() const { return steps_; }

 private:
  std::size_t budget_;
  std::vector<StepRecord> steps_;
};

// ---------------------------------------------------------------------------
// Choicepoint machine

template <class Rest, class A, class S>
struct CpMachine {
  using Answer = Free<Rest, ResultList<A>>;
  using Resumption = std::function<Answer(const CpMachine&, const S&)>;

  SnocList<A> results;
  PList<Resumption> cp_stack;
};

template <class S, class... Rs, class A>
Free<Sig<Rs...>, ResultList<A>> simulate_f(const Free<Sig<StateF<S>, NondetF, Rs...>, A>& t, const S& s,
                                           std::shared_ptr<StepTrace> trace = nullptr) {
  using Rest = Sig<Rs...>;
  using M = CpMachine<Rest, A, S>;
  using Out = typename M::Answer;
  using C = typename M::Resumption;
  using F = StateF<S>;

  auto note = [trace](const char* op, const M& m) {
    if (trace) trace->record({op, m.results.size(), m.cp_stack.size(), 0, 0});
  };
  auto cont = [](const SnocList<A>& xs, const PList<C>& stack, const S& st) -> Out {
    if (stack.empty()) return Out::leaf(xs.to_vector());
    return stack.front()(M{xs, stack.pop()}, st);
  };

  C c = fold(
      t,
      [=](const A& x) -> C {
        return [=](const M& m, const S& st) {
          note("ret", m);
          return cont(m.results.append(x), m.cp_stack, st);
        };
      },
      [=](Ops<Sig<StateF<S>, NondetF, Rs...>, C> op) -> C {
        if (op.index() == 0) {
          auto& o = std::get<0>(op);
          if (auto* g = std::get_if<typename F::template Get<C>>(&o)) {
            return [=, k = g->k](const M& m, const S& st) {
              note("get", m);
              return k(st)(m, st);
            };
          }
          auto& p = std::get<typename F::template Put<C>>(o);
          return [=, v = p.value, k = p.k](const M& m, const S& st) {
            note("put", m);
            C backtracking = [=](const M& m2, const S&) { return cont(m2.results, m2.cp_stack, st); };
            return k(M{m.results, m.cp_stack.push(backtracking)}, v);
          };
        }
        if (op.index() == 1) {
          auto& o = std::get<1>(op);
          if (std::holds_alternative<NondetF::Fail<C>>(o)) {
            return [=](const M& m, const S& st) {
              note("fail", m);
              return cont(m.results, m.cp_stack, st);
            };
          }
          auto& b = std::get<NondetF::Or<C>>(o);
          return [=, l = b.left, r = b.right](const M& m, const S& st) {
            note("or", m);
            return l(M{m.results, m.cp_stack.push(r)}, st);
          };
        }
        auto rest = drop_head<Ops<Sig<NondetF, Rs...>, C>>(std::move(op));
        auto fwd = drop_head<Ops<Rest, C>>(std::move(rest));
        return [=](const M& m, const S& st) {
          return Out::op(map_ops<Rest, C>(fwd, [m, st](const C& k) { return k(m, st); }));
        };
      });
  return c(M{}, s);
}

// ---------------------------------------------------------------------------
// Choicepoint and trail machine

template <class Rest, class A, class S, class R>
struct WamMachine {
  using Answer = Free<Rest, ResultList<A>>;
  using Resumption = std::function<Answer(const WamMachine&, const S&)>;

  SnocList<A> results;
  PList<Resumption> cp_stack;
  PList<TrailEntry<R>> tr_stack;
};

template <class S, class R, class U, class... Rs, class A>
Free<Sig<Rs...>, ResultList<A>> simulate_tf(const Free<Sig<ModifyF<S, R, U>, NondetF, Rs...>, A>& t, const S& s,
                                            std::shared_ptr<StepTrace> trace = nullptr,
                                            Fault fault = Fault::none) {
  using Rest = Sig<Rs...>;
  using M = WamMachine<Rest, A, S, R>;
  using Out = typename M::Answer;
  using C = typename M::Resumption;
  using F = ModifyF<S, R, U>;

  auto note = [trace](const char* op, const M& m) {
    if (trace) {
      trace->record({op, m.results.size(), m.cp_stack.size(), m.tr_stack.size(), count_markers(m.tr_stack)});
    }
  };
  auto resume = [](const M& m, const S& st) -> Out {
    if (m.cp_stack.empty()) return Out::leaf(m.results.to_vector());
    return m.cp_stack.front()(M{m.results, m.cp_stack.pop(), m.tr_stack}, st);
  };
  auto untrail = [=](C q) -> C {
    return [=](const M& m, const S& st) {
      PList<TrailEntry<R>> tr = m.tr_stack;
      S cur = st;
      while (!tr.empty()) {
        TrailEntry<R> top = tr.front();
        tr = tr.pop();
        if (std::holds_alternative<Marker>(top)) break;
        cur = U::revert(cur, std::get<0>(top));
      }
      M next{m.results, m.cp_stack, tr};
      note("untrail", next);
      return q(next, cur);
    };
  };

  C c = fold(
      t,
      [=](const A& x) -> C {
        return [=](const M& m, const S& st) {
          note("ret", m);
          return resume(M{m.results.append(x), m.cp_stack, m.tr_stack}, st);
        };
      },
      [=](Ops<Sig<F, NondetF, Rs...>, C> op) -> C {
        if (op.index() == 0) {
          auto& o = std::get<0>(op);
          if (auto* g = std::get_if<typename F::template MGet<C>>(&o)) {
            return [=, k = g->k](const M& m, const S& st) {
              note("mget", m);
              return k(st)(m, st);
            };
          }
          if (auto* u = std::get_if<typename F::template MUpdate<C>>(&o)) {
            return [=, r = u->delta, k = u->k](const M& m, const S& st) {
              note("update", m);
              return k(M{m.results, m.cp_stack, m.tr_stack.push(TrailEntry<R>{std::in_place_index<0>, r})},
                       U::apply(st, r));
            };
          }
          auto& rs = std::get<typename F::template MRestore<C>>(o);
          return [=, r = rs.delta, k = rs.k](const M& m, const S& st) {
            note("restore", m);
            return k(m, U::revert(st, r));
          };
        }
        if (op.index() == 1) {
          auto& o = std::get<1>(op);
          if (std::holds_alternative<NondetF::Fail<C>>(o)) {
            return [=](const M& m, const S& st) {
              note("fail", m);
              return resume(m, st);
            };
          }
          auto& b = std::get<NondetF::Or<C>>(o);
          C pending = fault == Fault::untrailed_branch ? b.right : untrail(b.right);
          return [=, l = b.left](const M& m, const S& st) {
            note("or", m);
            return l(M{m.results, m.cp_stack.push(pending), m.tr_stack.push(TrailEntry<R>{Marker{}})}, st);
          };
        }
        auto rest = drop_head<Ops<Sig<NondetF, Rs...>, C>>(std::move(op));
        auto fwd = drop_head<Ops<Rest, C>>(std::move(rest));
        return [=](const M& m, const S& st) {
          return Out::op(map_ops<Rest, C>(fwd, [m, st](const C& k) { return k(m, st); }));
        };
      });
  return c(M{}, s);
}

}  // namespace effsim
