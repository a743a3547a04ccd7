#pragma once

// Handlers: folds from effect trees into semantic domains.

#include <functional>
#include <utility>
#include <vector>

#include "effsim/effect.hpp"

namespace effsim {

/// Answers in left-to-right depth-first order.
template <class A>
using ResultList = std::vector<A>;

/// A state-transformer carrier over a residual signature.
template <class Rest, class S, class A>
struct StateRun {
  using result_type = Free<Rest, std::pair<A, S>>;
  std::function<result_type(const S&)> run;

  result_type operator()(const S& s) const { return run(s); }
};

/// Two nested state transformers: s1 -> s2 -> tree of ((a, s1), s2).
template <class Rest, class S1, class S2, class A>
using NestedRun =
    std::function<std::function<Free<Rest, std::pair<std::pair<A, S1>, S2>>(const S2&)>(const S1&)>;

template <class A, class B>
std::vector<A> firsts(const std::vector<std::pair<A, B>>& xs) {
  std::vector<A> out;
  out.reserve(xs.size());
  for (const auto& [a, b] : xs) out.push_back(a);
  return out;
}

template <class A>
std::vector<A> concat(std::vector<A> xs, const std::vector<A>& ys) {
  xs.insert(xs.end(), ys.begin(), ys.end());
  return xs;
}

namespace detail {

/// Forwarding clause for state-like handlers: thread the current state into
/// every child of a residual operation.
template <class Rest, class S, class Out>
auto forward_with_state() {
  using C = std::function<Out(const S&)>;
  return [](Ops<Rest, C> op) -> C {
    return [op = std::move(op)](const S& s) {
      return Out::op(map_ops<Rest, C>(op, [s](const C& k) { return k(s); }));
    };
  };
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Pure nondeterminism

/// Closed list handler for [NondetF].
template <class A>
ResultList<A> h_nd(const Free<Sig<NondetF>, A>& t) {
  using F = NondetF;
  using L = ResultList<A>;
  return fold(
      t, [](const A& x) { return L{x}; },
      [](Ops<Sig<NondetF>, L> op) -> L {
        auto& o = std::get<0>(op);
        if (std::holds_alternative<F::Fail<L>>(o)) return {};
        auto& alt = std::get<F::Or<L>>(o);
        return concat(std::move(alt.left), alt.right);
      });
}

/// Nondeterminism with forwarding: `Or p q` becomes `liftM2 (++) p q`.
template <class... Rs, class A>
Free<Sig<Rs...>, ResultList<A>> h_ndf(const Free<Sig<NondetF, Rs...>, A>& t) {
  using Rest = Sig<Rs...>;
  using L = ResultList<A>;
  using Out = Free<Rest, L>;
  using F = NondetF;
  return fold(t, [](const A& x) { return Out::leaf(L{x}); },
              mediate<Sig<NondetF, Rs...>, Out>(
                  [](F::Op<Out> op) -> Out {
                    if (std::holds_alternative<F::Fail<Out>>(op)) return Out::leaf(L{});
                    auto& o = std::get<F::Or<Out>>(op);
                    return and_then(o.left, [q = o.right](const L& xs) {
                      return fmap(q, [xs](const L& ys) { return concat(xs, ys); });
                    });
                  },
                  [](Ops<Rest, Out> op) { return Out::op(std::move(op)); }));
}

/// The empty handler. Reaching an operation is a defect.
template <class A>
A h_nil(const Free<Sig<NilF>, A>& t) {
  if (!t.is_leaf()) defect("h_nil reached an operation node");
  return t.value();
}

// ---------------------------------------------------------------------------
// State

/// Closed state handler for [StateF S]: a plain function S -> (A, S).
template <class S, class A>
std::function<std::pair<A, S>(const S&)> h_state_closed(const Free<Sig<StateF<S>>, A>& t) {
  using F = StateF<S>;
  using C = std::function<std::pair<A, S>(const S&)>;
  return fold(
      t, [](const A& x) -> C { return [x](const S& s) { return std::pair<A, S>{x, s}; }; },
      [](Ops<Sig<StateF<S>>, C> op) -> C {
        auto& o = std::get<0>(op);
        if (auto* g = std::get_if<typename F::template Get<C>>(&o)) {
          return [k = std::move(g->k)](const S& s) { return k(s)(s); };
        }
        auto& p = std::get<typename F::template Put<C>>(o);
        return [v = std::move(p.value), k = std::move(p.k)](const S&) { return k(v); };
      });
}

/// State handler with forwarding.
template <class S, class... Rs, class A>
StateRun<Sig<Rs...>, S, A> h_state(const Free<Sig<StateF<S>, Rs...>, A>& t) {
  using Rest = Sig<Rs...>;
  using Out = Free<Rest, std::pair<A, S>>;
  using C = std::function<Out(const S&)>;
  using F = StateF<S>;
  C c = fold(t, [](const A& x) -> C { return [x](const S& s) { return Out::leaf({x, s}); }; },
             mediate<Sig<StateF<S>, Rs...>, C>(
                 [](typename F::template Op<C> op) -> C {
                   if (auto* g = std::get_if<typename F::template Get<C>>(&op)) {
                     return [k = std::move(g->k)](const S& s) { return k(s)(s); };
                   }
                   auto& p = std::get<typename F::template Put<C>>(op);
                   return [v = std::move(p.value), k = std::move(p.k)](const S&) { return k(v); };
                 },
                 detail::forward_with_state<Rest, S, Out>()));
  return {std::move(c)};
}

template <class S, class... Rs, class A>
Free<Sig<Rs...>, std::pair<A, S>> h_state1(const Free<Sig<StateF<S>, Rs...>, A>& t, const S& s) {
  return h_state(t)(s);
}

/// Two consecutive state handlers.
template <class S1, class S2, class... Rs, class A>
NestedRun<Sig<Rs...>, S1, S2, A> h_states_run(const Free<Sig<StateF<S1>, StateF<S2>, Rs...>, A>& t) {
  auto outer = h_state(t);
  return [outer](const S1& s1) {
    auto inner = h_state(outer(s1));
    return [inner](const S2& s2) { return inner(s2); };
  };
}

template <class S1, class S2, class... Rs, class A>
Free<Sig<Rs...>, std::pair<std::pair<A, S1>, S2>> h_states(
    const Free<Sig<StateF<S1>, StateF<S2>, Rs...>, A>& t, const S1& s1, const S2& s2) {
  return h_states_run(t)(s1)(s2);
}

template <class A, class X, class Y>
std::pair<A, std::pair<X, Y>> alpha(const std::pair<std::pair<A, X>, Y>& v) {
  return {v.first.first, {v.first.second, v.second}};
}

template <class A, class X, class Y>
std::pair<std::pair<A, X>, Y> alpha_inv(const std::pair<A, std::pair<X, Y>>& v) {
  return {{v.first, v.second.first}, v.second.second};
}

/// Nested runs to a run over the pair of states.
template <class Rest, class S1, class S2, class A>
StateRun<Rest, std::pair<S1, S2>, A> flatten(NestedRun<Rest, S1, S2, A> t) {
  return {[t = std::move(t)](const std::pair<S1, S2>& s) {
    return fmap(t(s.first)(s.second), [](const auto& v) { return alpha(v); });
  }};
}

/// Inverse of flatten.
template <class Rest, class S1, class S2, class A>
NestedRun<Rest, S1, S2, A> nest(StateRun<Rest, std::pair<S1, S2>, A> t) {
  return [t = std::move(t)](const S1& s1) {
    return [t, s1](const S2& s2) {
      return fmap(t(std::pair<S1, S2>{s1, s2}), [](const auto& v) { return alpha_inv(v); });
    };
  };
}

// ---------------------------------------------------------------------------
// Local and global state

/// Each branch keeps a private copy of the state.
template <class S, class... Rs, class A>
Free<Sig<Rs...>, ResultList<A>> h_local(const Free<Sig<StateF<S>, NondetF, Rs...>, A>& t, const S& s) {
  return fmap(h_ndf(h_state1(t, s)), [](const auto& xs) { return firsts(xs); });
}

/// One state threaded through all branches; keeps the final state.
template <class S, class... Rs, class A>
Free<Sig<Rs...>, std::pair<ResultList<A>, S>> h_global_with_state(
    const Free<Sig<StateF<S>, NondetF, Rs...>, A>& t, const S& s) {
  return h_state1(h_ndf(swap_families(t)), s);
}

template <class S, class... Rs, class A>
Free<Sig<Rs...>, ResultList<A>> h_global(const Free<Sig<StateF<S>, NondetF, Rs...>, A>& t, const S& s) {
  return fmap(h_global_with_state(t, s), [](const auto& p) { return p.first; });
}

// ---------------------------------------------------------------------------
// Modification-based state

template <class S, class R, class U, class... Rs, class A>
StateRun<Sig<Rs...>, S, A> h_modify(const Free<Sig<ModifyF<S, R, U>, Rs...>, A>& t) {
  using Rest = Sig<Rs...>;
  using Out = Free<Rest, std::pair<A, S>>;
  using C = std::function<Out(const S&)>;
  using F = ModifyF<S, R, U>;
  C c = fold(t, [](const A& x) -> C { return [x](const S& s) { return Out::leaf({x, s}); }; },
             mediate<Sig<F, Rs...>, C>(
                 [](typename F::template Op<C> op) -> C {
                   if (auto* g = std::get_if<typename F::template MGet<C>>(&op)) {
                     return [k = std::move(g->k)](const S& s) { return k(s)(s); };
                   }
                   if (auto* u = std::get_if<typename F::template MUpdate<C>>(&op)) {
                     return [r = std::move(u->delta), k = std::move(u->k)](const S& s) {
                       return k(U::apply(s, r));
                     };
                   }
                   auto& m = std::get<typename F::template MRestore<C>>(op);
                   return [r = std::move(m.delta), k = std::move(m.k)](const S& s) {
                     return k(U::revert(s, r));
                   };
                 },
                 detail::forward_with_state<Rest, S, Out>()));
  return {std::move(c)};
}

template <class S, class R, class U, class... Rs, class A>
Free<Sig<Rs...>, std::pair<A, S>> h_modify1(const Free<Sig<ModifyF<S, R, U>, Rs...>, A>& t, const S& s) {
  return h_modify(t)(s);
}

template <class S, class R, class U, class... Rs, class A>
Free<Sig<Rs...>, ResultList<A>> h_local_m(const Free<Sig<ModifyF<S, R, U>, NondetF, Rs...>, A>& t,
                                          const S& s) {
  return fmap(h_ndf(h_modify1(t, s)), [](const auto& xs) { return firsts(xs); });
}

template <class S, class R, class U, class... Rs, class A>
Free<Sig<Rs...>, std::pair<ResultList<A>, S>> h_global_m_with_state(
    const Free<Sig<ModifyF<S, R, U>, NondetF, Rs...>, A>& t, const S& s) {
  return h_modify1(h_ndf(swap_families(t)), s);
}

template <class S, class R, class U, class... Rs, class A>
Free<Sig<Rs...>, ResultList<A>> h_global_m(const Free<Sig<ModifyF<S, R, U>, NondetF, Rs...>, A>& t,
                                           const S& s) {
  return fmap(h_global_m_with_state(t, s), [](const auto& p) { return p.first; });
}

}  // namespace effsim
