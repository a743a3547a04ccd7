#pragma once

// Translations from high-level effects to lower-level ones, the machine
// state types they thread, and the composite simulations.

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "effsim/effect.hpp"
#include "effsim/plist.hpp"
#include "effsim/semantics.hpp"

namespace effsim {

/// Deliberate defects for mutation testing. `none` everywhere else.
enum class Fault {
  none,
  skip_put_restore,  // local2global leaves put untouched
  untrailed_branch,  // the right branch of a choice skips untrailing
};

// ---------------------------------------------------------------------------
// Local state via global state

/// State-restoring put: `get >>= \s' -> put s `or` side (put s')`.
template <class Sg>
Free<Sg, Unit> put_restoring(typename family_at_t<0, Sg>::state_type s) {
  using S = typename family_at_t<0, Sg>::state_type;
  return and_then(get<Sg>(), [s = std::move(s)](const S& prev) {
    return alt(put<Sg>(s), side<Unit>(put<Sg>(prev)));
  });
}

template <class S, class... Rs, class A>
Free<Sig<StateF<S>, NondetF, Rs...>, A> local2global(const Free<Sig<StateF<S>, NondetF, Rs...>, A>& t,
                                                     Fault fault = Fault::none) {
  using Sg = Sig<StateF<S>, NondetF, Rs...>;
  using T = Free<Sg, A>;
  using F = StateF<S>;
  return fold(
      t, [](const A& x) { return T::leaf(x); },
      [fault](Ops<Sg, T> op) -> T {
        if (op.index() == 0 && fault != Fault::skip_put_restore) {
          if (auto* p = std::get_if<typename F::template Put<T>>(&std::get<0>(op))) {
            return then(put_restoring<Sg>(p->value), p->k);
          }
        }
        return T::op(std::move(op));
      });
}

template <class S, class R, class U, class... Rs, class A>
Free<Sig<ModifyF<S, R, U>, NondetF, Rs...>, A> local2global_m(
    const Free<Sig<ModifyF<S, R, U>, NondetF, Rs...>, A>& t) {
  using Sg = Sig<ModifyF<S, R, U>, NondetF, Rs...>;
  using T = Free<Sg, A>;
  using F = ModifyF<S, R, U>;
  return fold(t, [](const A& x) { return T::leaf(x); },
              [](Ops<Sg, T> op) -> T {
                if (op.index() == 0) {
                  if (auto* u = std::get_if<typename F::template MUpdate<T>>(&std::get<0>(op))) {
                    auto undo_branch = alt(update<Sg>(u->delta), side<Unit>(restore<Sg>(u->delta)));
                    return then(undo_branch, u->k);
                  }
                }
                return T::op(std::move(op));
              });
}

// ---------------------------------------------------------------------------
// Nondeterminism via state: results so far and a stack of pending branches.

template <class Rest, class A>
struct ChoiceState;

template <class... Rs, class A>
struct ChoiceState<Sig<Rs...>, A> {
  using signature = Sig<StateF<ChoiceState>, Rs...>;
  using Comp = Free<signature, Unit>;

  SnocList<A> results;
  PList<Comp> stack;
};

template <class CS>
using comp_of = typename CS::Comp;

template <class CS>
comp_of<CS> pop_ss() {
  using Sg = typename CS::signature;
  return and_then(get<Sg>(), [](const CS& st) -> comp_of<CS> {
    if (st.stack.empty()) return ret<Sg>(Unit{});
    return then(put<Sg>(CS{st.results, st.stack.pop()}), st.stack.front());
  });
}

template <class CS>
comp_of<CS> push_ss(comp_of<CS> q, comp_of<CS> p) {
  using Sg = typename CS::signature;
  return and_then(get<Sg>(), [q = std::move(q), p = std::move(p)](const CS& st) {
    return then(put<Sg>(CS{st.results, st.stack.push(q)}), p);
  });
}

template <class CS, class A>
comp_of<CS> append_ss(A x, comp_of<CS> p) {
  using Sg = typename CS::signature;
  return and_then(get<Sg>(), [x = std::move(x), p = std::move(p)](const CS& st) {
    return then(put<Sg>(CS{st.results.append(x), st.stack}), p);
  });
}

/// Pure nondeterminism to a single state effect.
template <class A>
comp_of<ChoiceState<Sig<>, A>> nondet2state_s(const Free<Sig<NondetF>, A>& t) {
  using CS = ChoiceState<Sig<>, A>;
  using T = comp_of<CS>;
  return fold(t, [](const A& x) { return append_ss<CS>(x, pop_ss<CS>()); },
              [](Ops<Sig<NondetF>, T> op) -> T {
                auto& o = std::get<0>(op);
                if (std::holds_alternative<NondetF::Fail<T>>(o)) return pop_ss<CS>();
                auto& c = std::get<NondetF::Or<T>>(o);
                return push_ss<CS>(c.right, c.left);
              });
}

template <class A>
ResultList<A> extract_s(const std::function<std::pair<Unit, ChoiceState<Sig<>, A>>(
                            const ChoiceState<Sig<>, A>&)>& run) {
  return run(ChoiceState<Sig<>, A>{}).second.results.to_vector();
}

template <class A>
ResultList<A> run_nd(const Free<Sig<NondetF>, A>& t) {
  return extract_s<A>(h_state_closed(nondet2state_s(t)));
}

/// Nondeterminism to state, forwarding every other family.
template <class... Rs, class A>
comp_of<ChoiceState<Sig<Rs...>, A>> nondet2state(const Free<Sig<NondetF, Rs...>, A>& t) {
  using CS = ChoiceState<Sig<Rs...>, A>;
  using Out = typename CS::signature;
  using T = comp_of<CS>;
  return fold(t, [](const A& x) { return append_ss<CS>(x, pop_ss<CS>()); },
              mediate<Sig<NondetF, Rs...>, T>(
                  [](NondetF::Op<T> op) -> T {
                    if (std::holds_alternative<NondetF::Fail<T>>(op)) return pop_ss<CS>();
                    auto& c = std::get<NondetF::Or<T>>(op);
                    return push_ss<CS>(c.right, c.left);
                  },
                  [](Ops<Sig<Rs...>, T> op) { return T::op(inject_tail<Ops<Out, T>, 1>(std::move(op))); }));
}

template <class... Rs, class A>
Free<Sig<Rs...>, ResultList<A>> extract_ss(const StateRun<Sig<Rs...>, ChoiceState<Sig<Rs...>, A>, Unit>& run) {
  using CS = ChoiceState<Sig<Rs...>, A>;
  return fmap(run(CS{}), [](const std::pair<Unit, CS>& p) { return p.second.results.to_vector(); });
}

template <class... Rs, class A>
Free<Sig<Rs...>, ResultList<A>> run_ndf(const Free<Sig<NondetF, Rs...>, A>& t) {
  return extract_ss<Rs...>(h_state(nondet2state(t)));
}

// ---------------------------------------------------------------------------
// Two states as one

template <class S1, class S2, class... Rs, class A>
Free<Sig<StateF<std::pair<S1, S2>>, Rs...>, A> states2state(const Free<Sig<StateF<S1>, StateF<S2>, Rs...>, A>& t) {
  using In = Sig<StateF<S1>, StateF<S2>, Rs...>;
  using Out = Sig<StateF<std::pair<S1, S2>>, Rs...>;
  using P = std::pair<S1, S2>;
  using T = Free<Out, A>;
  using F1 = StateF<S1>;
  using F2 = StateF<S2>;
  return fold(t, [](const A& x) { return T::leaf(x); },
              [](Ops<In, T> op) -> T {
                if (op.index() == 0) {
                  auto& o = std::get<0>(op);
                  if (auto* g = std::get_if<typename F1::template Get<T>>(&o)) {
                    return and_then(get<Out>(), [k = g->k](const P& s) { return k(s.first); });
                  }
                  auto& p = std::get<typename F1::template Put<T>>(o);
                  return and_then(get<Out>(), [v = p.value, k = p.k](const P& s) {
                    return then(put<Out>(P{v, s.second}), k);
                  });
                }
                if (op.index() == 1) {
                  auto& o = std::get<1>(op);
                  if (auto* g = std::get_if<typename F2::template Get<T>>(&o)) {
                    return and_then(get<Out>(), [k = g->k](const P& s) { return k(s.second); });
                  }
                  auto& p = std::get<typename F2::template Put<T>>(o);
                  return and_then(get<Out>(), [v = p.value, k = p.k](const P& s) {
                    return then(put<Out>(P{s.first, v}), k);
                  });
                }
                return T::op(reindex<Ops<Out, T>, moved_indices<In::size, 2, 1>()>(std::move(op)));
              });
}

// ---------------------------------------------------------------------------
// Local state as one state effect

template <class S, class... Rs, class A>
auto simulate_tree(const Free<Sig<StateF<S>, NondetF, Rs...>, A>& t, Fault fault = Fault::none) {
  return states2state(nondet2state(swap_families(local2global(t, fault))));
}

template <class S, class... Rs, class A>
Free<Sig<Rs...>, ResultList<A>> simulate(const Free<Sig<StateF<S>, NondetF, Rs...>, A>& t, const S& s,
                                         Fault fault = Fault::none) {
  using CS = ChoiceState<Sig<StateF<S>, Rs...>, A>;
  auto run = h_state(simulate_tree(t, fault));
  return fmap(run(std::pair<CS, S>{CS{}, s}),
              [](const auto& p) { return p.second.first.results.to_vector(); });
}

// ---------------------------------------------------------------------------
// Trail stack

struct Marker {
  friend bool operator==(Marker, Marker) = default;
};

/// `Left delta` or `Right ()`.
template <class R>
using TrailEntry = std::variant<R, Marker>;

template <class R>
struct TrailStack {
  PList<TrailEntry<R>> entries;

  friend bool operator==(const TrailStack& a, const TrailStack& b) { return a.entries == b.entries; }
};

template <class R>
std::size_t count_markers(const PList<TrailEntry<R>>& tr) {
  std::size_t n = 0;
  for (const auto& e : tr.to_vector()) n += std::holds_alternative<Marker>(e) ? 1 : 0;
  return n;
}

template <class Sg, std::size_t I, class R>
Free<Sg, Unit> push_stack(TrailEntry<R> x) {
  return and_then(get<Sg, I>(), [x = std::move(x)](const TrailStack<R>& st) {
    return put<Sg, I>(TrailStack<R>{st.entries.push(x)});
  });
}

template <class Sg, std::size_t I, class R>
Free<Sg, std::optional<TrailEntry<R>>> pop_stack() {
  using T = Free<Sg, std::optional<TrailEntry<R>>>;
  return and_then(get<Sg, I>(), [](const TrailStack<R>& st) -> T {
    if (st.entries.empty()) return ret<Sg>(std::optional<TrailEntry<R>>{});
    return then(put<Sg, I>(TrailStack<R>{st.entries.pop()}), ret<Sg>(std::optional<TrailEntry<R>>{st.entries.front()}));
  });
}

/// Pops entries, restoring each delta, down to and including the first
/// marker (or until the trail is empty).
template <class Sg, class R>
Free<Sg, Unit> untrail() {
  return and_then(pop_stack<Sg, 2, R>(), [](const std::optional<TrailEntry<R>>& top) -> Free<Sg, Unit> {
    if (!top || std::holds_alternative<Marker>(*top)) return ret<Sg>(Unit{});
    return then(restore<Sg>(std::get<0>(*top)), untrail<Sg, R>());
  });
}

template <class S, class R, class U, class... Rs, class A>
Free<Sig<ModifyF<S, R, U>, NondetF, StateF<TrailStack<R>>, Rs...>, A> local2trail(
    const Free<Sig<ModifyF<S, R, U>, NondetF, Rs...>, A>& t, Fault fault = Fault::none) {
  using In = Sig<ModifyF<S, R, U>, NondetF, Rs...>;
  using Out = Sig<ModifyF<S, R, U>, NondetF, StateF<TrailStack<R>>, Rs...>;
  using T = Free<Out, A>;
  using F = ModifyF<S, R, U>;
  return fold(t, [](const A& x) { return T::leaf(x); },
              [fault](Ops<In, T> op) -> T {
                if (op.index() == 0) {
                  if (auto* u = std::get_if<typename F::template MUpdate<T>>(&std::get<0>(op))) {
                    return then(push_stack<Out, 2, R>(TrailEntry<R>{std::in_place_index<0>, u->delta}),
                                then(update<Out>(u->delta), u->k));
                  }
                }
                if (op.index() == 1) {
                  if (auto* o = std::get_if<NondetF::Or<T>>(&std::get<1>(op))) {
                    T left = then(push_stack<Out, 2, R>(TrailEntry<R>{Marker{}}), o->left);
                    T right = fault == Fault::untrailed_branch ? o->right : then(untrail<Out, R>(), o->right);
                    return alt(left, right);
                  }
                }
                return T::op(reindex<Ops<Out, T>, gap_indices<In::size, 2>()>(std::move(op)));
              });
}

/// Global state over a trail stack; the trail starts empty.
template <class S, class R, class U, class... Rs, class A>
Free<Sig<Rs...>, ResultList<A>> h_global_t(const Free<Sig<ModifyF<S, R, U>, NondetF, Rs...>, A>& t, const S& s,
                                           Fault fault = Fault::none) {
  auto handled = h_state1(h_global_m(local2trail(t, fault), s), TrailStack<R>{});
  return fmap(handled, [](const auto& p) { return p.first; });
}

/// The reordered single-state machine tree behind simulate_t, before the
/// modify and state handlers run.
template <class S, class R, class U, class... Rs, class A>
auto simulate_t_tree(const Free<Sig<ModifyF<S, R, U>, NondetF, Rs...>, A>& t, Fault fault = Fault::none) {
  return swap_families(states2state(rotate_families(swap_families(nondet2state(swap_families(local2trail(t, fault)))))));
}

template <class S, class R, class U, class... Rs, class A>
Free<Sig<Rs...>, ResultList<A>> simulate_t(const Free<Sig<ModifyF<S, R, U>, NondetF, Rs...>, A>& t, const S& s,
                                           Fault fault = Fault::none) {
  using CS = ChoiceState<Sig<ModifyF<S, R, U>, StateF<TrailStack<R>>, Rs...>, A>;
  auto stacks = fmap(h_modify1(simulate_t_tree(t, fault), s), [](const auto& p) { return p.first; });
  auto run = h_state1(stacks, std::pair<CS, TrailStack<R>>{CS{}, TrailStack<R>{}});
  return fmap(run, [](const auto& p) { return p.second.first.results.to_vector(); });
}

}  // namespace effsim
