#pragma once

// Effect trees (free monads over an ordered coproduct of operation families),
// their fold, bind, the signature-reordering maps and the smart constructors.

#include <array>
#include <concepts>
#include <cstddef>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

namespace effsim {

struct Unit {
  friend bool operator==(Unit, Unit) = default;
};

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

/// Thrown when a dynamic program cannot be placed in a static signature.
struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

[[noreturn]] inline void defect(const char* what) {
  std::cerr << "effsim: internal defect: " << what << '\n';
  std::abort();
}

// ---------------------------------------------------------------------------
// Signatures

/// Ordered coproduct of operation families. The position of a family is its
/// injection index.
template <class... Fs>
struct Sig {
  static constexpr std::size_t size = sizeof...(Fs);
};

template <std::size_t I, class Sg>
struct family_at;
template <std::size_t I, class... Fs>
struct family_at<I, Sig<Fs...>> {
  using type = std::tuple_element_t<I, std::tuple<Fs...>>;
};
template <std::size_t I, class Sg>
using family_at_t = typename family_at<I, Sg>::type;

template <class Sg, class X>
struct ops_of;
template <class... Fs, class X>
struct ops_of<Sig<Fs...>, X> {
  using type = std::variant<typename Fs::template Op<X>...>;
};

/// One operation node of signature Sg whose children have type X.
template <class Sg, class X>
using Ops = typename ops_of<Sg, X>::type;

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

// ---------------------------------------------------------------------------
// Index-aware variant dispatch. std::visit cannot tell apart two alternatives
// of the same type (two StateF<int> families), so dispatch goes by index.

template <std::size_t I>
using index_t = std::integral_constant<std::size_t, I>;

template <std::size_t I = 0, class V, class Fn>
decltype(auto) visit_indexed(V&& v, Fn&& fn) {
  constexpr std::size_t n = std::variant_size_v<std::remove_cvref_t<V>>;
  if constexpr (I + 1 == n) {
    return fn(index_t<I>{}, std::get<I>(std::forward<V>(v)));
  } else {
    if (v.index() == I) return fn(index_t<I>{}, std::get<I>(std::forward<V>(v)));
    return visit_indexed<I + 1>(std::forward<V>(v), std::forward<Fn>(fn));
  }
}

// ---------------------------------------------------------------------------
// Show helpers for leaf values and operation payloads.

template <class T>
std::string show_value(const T& x);

namespace detail {
template <class T>
concept Streamable = requires(std::ostream& os, const T& x) { os << x; };
template <class T>
struct is_vector : std::false_type {};
template <class T, class A>
struct is_vector<std::vector<T, A>> : std::true_type {};
template <class T>
struct is_pair : std::false_type {};
template <class A, class B>
struct is_pair<std::pair<A, B>> : std::true_type {};
}  // namespace detail

template <class T>
std::string show_value(const T& x) {
  if constexpr (std::is_same_v<T, Unit>) {
    return "()";
  } else if constexpr (std::is_same_v<T, bool>) {
    return x ? "True" : "False";
  } else if constexpr (detail::is_vector<T>::value) {
    std::string out = "[";
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (i != 0) out += ",";
      out += show_value(x[i]);
    }
    return out + "]";
  } else if constexpr (detail::is_pair<T>::value) {
    return "(" + show_value(x.first) + "," + show_value(x.second) + ")";
  } else if constexpr (detail::Streamable<T>) {
    std::ostringstream os;
    os << x;
    return os.str();
  } else {
    return "<value>";
  }
}

/// No probe values: continuations print as a lambda marker.
struct NoProbes {
  template <class S>
  std::vector<S> values() const {
    return {};
  }
};

/// Probe values for integer-state continuations.
struct IntProbes {
  std::vector<int> ints{-1, 0, 1, 2};
  template <class S>
  std::vector<S> values() const {
    if constexpr (std::is_same_v<S, int>) {
      return ints;
    } else {
      return {};
    }
  }
};

template <class X>
struct LabeledChild {
  std::string tag;
  X child;
};

/// Printable view of one operation: keyword, payload text, visible children.
/// `opaque` marks a continuation whose children depend on unprobed input.
template <class X>
struct Described {
  std::string name;
  std::string arg;
  std::vector<LabeledChild<X>> kids;
  bool opaque = false;
};

template <class S, class X, class K, class Probes>
Described<X> describe_continuation(const char* name, const K& k, const Probes& probes) {
  Described<X> d{name, "", {}, false};
  auto vals = probes.template values<S>();
  if (vals.empty()) d.opaque = true;
  for (const S& s : vals) d.kids.push_back({show_value(s) + ": ", k(s)});
  return d;
}

// ---------------------------------------------------------------------------
// Operation families

/// get / put on a state of type S.
template <class S>
struct StateF {
  using state_type = S;

  template <class X>
  struct Get {
    std::function<X(const S&)> k;
  };
  template <class X>
  struct Put {
    S value;
    X k;
  };
  template <class X>
  using Op = std::variant<Get<X>, Put<X>>;

  template <class X, class Fn>
  static auto map(const Op<X>& op, const Fn& f) {
    using Y = std::invoke_result_t<const Fn&, const X&>;
    if (const auto* g = std::get_if<Get<X>>(&op)) {
      return Op<Y>{Get<Y>{[k = g->k, f](const S& s) { return f(k(s)); }}};
    }
    const auto& p = std::get<Put<X>>(op);
    return Op<Y>{Put<Y>{p.value, f(p.k)}};
  }

  template <class X, class Probes>
  static Described<X> describe(const Op<X>& op, const Probes& probes) {
    if (const auto* g = std::get_if<Get<X>>(&op)) return describe_continuation<S, X>("get", g->k, probes);
    const auto& p = std::get<Put<X>>(op);
    return {"put", show_value(p.value), {LabeledChild<X>{"", p.k}}};
  }
};

/// fail / or.
struct NondetF {
  template <class X>
  struct Fail {};
  template <class X>
  struct Or {
    X left;
    X right;
  };
  template <class X>
  using Op = std::variant<Fail<X>, Or<X>>;

  template <class X, class Fn>
  static auto map(const Op<X>& op, const Fn& f) {
    using Y = std::invoke_result_t<const Fn&, const X&>;
    if (std::holds_alternative<Fail<X>>(op)) return Op<Y>{Fail<Y>{}};
    const auto& o = std::get<Or<X>>(op);
    // Left child first: handlers observe DFS order.
    Y l = f(o.left);
    Y r = f(o.right);
    return Op<Y>{Or<Y>{std::move(l), std::move(r)}};
  }

  template <class X, class Probes>
  static Described<X> describe(const Op<X>& op, const Probes&) {
    if (std::holds_alternative<Fail<X>>(op)) return {"fail", "", {}};
    const auto& o = std::get<Or<X>>(op);
    return {"or", "", {LabeledChild<X>{"", o.left}, LabeledChild<X>{"", o.right}}};
  }
};

/// Reversible updates: `apply(apply(s, r) ... )` with `revert(apply(s, r), r) == s`.
/// Specialize for each (state, delta) pair.
template <class S, class R>
struct Undo;

template <>
struct Undo<int, int> {
  static int apply(int s, int r) { return s + r; }
  static int revert(int s, int r) { return s - r; }
};

template <class U, class S, class R>
concept UndoPolicy = requires(const S& s, const R& r) {
  { U::apply(s, r) } -> std::convertible_to<S>;
  { U::revert(s, r) } -> std::convertible_to<S>;
};

/// mget / update / restore over an Undo state.
template <class S, class R, class U = Undo<S, R>>
  requires UndoPolicy<U, S, R>
struct ModifyF {
  using state_type = S;
  using delta_type = R;
  using undo = U;

  template <class X>
  struct MGet {
    std::function<X(const S&)> k;
  };
  template <class X>
  struct MUpdate {
    R delta;
    X k;
  };
  template <class X>
  struct MRestore {
    R delta;
    X k;
  };
  template <class X>
  using Op = std::variant<MGet<X>, MUpdate<X>, MRestore<X>>;

  template <class X, class Fn>
  static auto map(const Op<X>& op, const Fn& f) {
    using Y = std::invoke_result_t<const Fn&, const X&>;
    if (const auto* g = std::get_if<MGet<X>>(&op)) {
      return Op<Y>{MGet<Y>{[k = g->k, f](const S& s) { return f(k(s)); }}};
    }
    if (const auto* u = std::get_if<MUpdate<X>>(&op)) return Op<Y>{MUpdate<Y>{u->delta, f(u->k)}};
    const auto& r = std::get<MRestore<X>>(op);
    return Op<Y>{MRestore<Y>{r.delta, f(r.k)}};
  }

  template <class X, class Probes>
  static Described<X> describe(const Op<X>& op, const Probes& probes) {
    if (const auto* g = std::get_if<MGet<X>>(&op)) return describe_continuation<S, X>("mget", g->k, probes);
    if (const auto* u = std::get_if<MUpdate<X>>(&op)) {
      return {"update", show_value(u->delta), {LabeledChild<X>{"", u->k}}};
    }
    const auto& r = std::get<MRestore<X>>(op);
    return {"restore", show_value(r.delta), {LabeledChild<X>{"", r.k}}};
  }
};

/// The empty family: no operation value can be constructed.
struct NilF {
  template <class X>
  struct Absurd {
    Absurd() = delete;
  };
  template <class X>
  using Op = Absurd<X>;

  template <class X, class Fn>
  static auto map(const Op<X>&, const Fn&) -> Op<std::invoke_result_t<const Fn&, const X&>> {
    defect("NilF operation reached");
  }

  template <class X, class Probes>
  static Described<X> describe(const Op<X>&, const Probes&) {
    defect("NilF operation reached");
  }
};

template <class F>
struct is_state_family : std::false_type {};
template <class S>
struct is_state_family<StateF<S>> : std::true_type {};
template <class F>
struct is_nondet_family : std::is_same<F, NondetF> {};
template <class F>
struct is_modify_family : std::false_type {};
template <class S, class R, class U>
struct is_modify_family<ModifyF<S, R, U>> : std::true_type {};

/// Index of the first family satisfying Trait, or npos.
template <template <class> class Trait, class Sg>
struct find_family;
template <template <class> class Trait, class... Fs>
struct find_family<Trait, Sig<Fs...>> {
  static constexpr std::size_t value = [] {
    constexpr std::array<bool, sizeof...(Fs) + 1> hits{Trait<Fs>::value..., false};
    for (std::size_t i = 0; i < sizeof...(Fs); ++i) {
      if (hits[i]) return i;
    }
    return npos;
  }();
};

template <class Sg>
inline constexpr std::size_t state_index_v = find_family<is_state_family, Sg>::value;
template <class Sg>
inline constexpr std::size_t nondet_index_v = find_family<is_nondet_family, Sg>::value;
template <class Sg>
inline constexpr std::size_t modify_index_v = find_family<is_modify_family, Sg>::value;

// ---------------------------------------------------------------------------
// Mapping and re-indexing operation nodes.

template <class Sg, class X, class Fn>
auto map_ops(const Ops<Sg, X>& op, const Fn& f) {
  using Y = std::invoke_result_t<const Fn&, const X&>;
  using Out = Ops<Sg, Y>;
  return visit_indexed(op, [&](auto i, const auto& inner) {
    constexpr std::size_t I = decltype(i)::value;
    using F = family_at_t<I, Sg>;
    return Out(std::in_place_index<I>, F::template map<X>(inner, f));
  });
}

/// Moves the alternative at index i of `op` to index Map[i] of Out.
template <class Out, auto Map, class V>
Out reindex(V&& op) {
  return visit_indexed(std::forward<V>(op), [](auto i, auto&& inner) -> Out {
    constexpr std::size_t to = Map[decltype(i)::value];
    if constexpr (to == npos) {
      defect("operation has no image under re-indexing");
    } else {
      return Out(std::in_place_index<to>, std::forward<decltype(inner)>(inner));
    }
  });
}

template <std::size_t N, std::size_t Shift>
constexpr std::array<std::size_t, N> shifted_indices() {
  std::array<std::size_t, N> a{};
  for (std::size_t i = 0; i < N; ++i) a[i] = i + Shift;
  return a;
}

template <std::size_t N>
constexpr std::array<std::size_t, N> dropped_head_indices() {
  std::array<std::size_t, N> a{};
  a[0] = npos;
  for (std::size_t i = 1; i < N; ++i) a[i] = i - 1;
  return a;
}

/// Indices below From have no image; index i >= From moves to i - From + To.
template <std::size_t N, std::size_t From, std::size_t To>
constexpr std::array<std::size_t, N> moved_indices() {
  std::array<std::size_t, N> a{};
  for (std::size_t i = 0; i < N; ++i) a[i] = i < From ? npos : i - From + To;
  return a;
}

/// Leaves indices below At in place and shifts the rest up by one.
template <std::size_t N, std::size_t At>
constexpr std::array<std::size_t, N> gap_indices() {
  std::array<std::size_t, N> a{};
  for (std::size_t i = 0; i < N; ++i) a[i] = i < At ? i : i + 1;
  return a;
}

/// `Inr` applied Shift times.
template <class Out, std::size_t Shift, class V>
Out inject_tail(V&& op) {
  constexpr std::size_t n = std::variant_size_v<std::remove_cvref_t<V>>;
  return reindex<Out, shifted_indices<n, Shift>()>(std::forward<V>(op));
}

/// Inverse of one `Inr`. Precondition: op.index() != 0.
template <class Out, class V>
Out drop_head(V&& op) {
  constexpr std::size_t n = std::variant_size_v<std::remove_cvref_t<V>>;
  return reindex<Out, dropped_head_indices<n>()>(std::forward<V>(op));
}

template <class Sg>
struct tail_sig;
template <class F, class... Fs>
struct tail_sig<Sig<F, Fs...>> {
  using type = Sig<Fs...>;
};
template <class Sg>
using tail_sig_t = typename tail_sig<Sg>::type;

// ---------------------------------------------------------------------------
// Effect trees

template <class Sg, class A>
class Free;

/// Finite syntax tree of an effectful program: `Var a | Op (f (Free f a))`.
/// Immutable; copies share nodes.
template <class... Fs, class A>
class Free<Sig<Fs...>, A> {
 public:
  using signature = Sig<Fs...>;
  using value_type = A;
  using ops_type = Ops<signature, Free>;

  static Free leaf(A x) {
    Free t;
    t.node_ = std::make_shared<const Node>(Node{std::variant<A, ops_type>(std::in_place_index<0>, std::move(x))});
    return t;
  }

  static Free op(ops_type o) {
    Free t;
    t.node_ = std::make_shared<const Node>(Node{std::variant<A, ops_type>(std::in_place_index<1>, std::move(o))});
    return t;
  }

  template <std::size_t I>
  static Free inject(typename family_at_t<I, signature>::template Op<Free> o) {
    return op(ops_type(std::in_place_index<I>, std::move(o)));
  }

  [[nodiscard]] bool is_leaf() const { return node_->v.index() == 0; }
  [[nodiscard]] const A& value() const { return std::get<0>(node_->v); }
  [[nodiscard]] const ops_type& ops() const { return std::get<1>(node_->v); }

 private:
  struct Node {
    std::variant<A, ops_type> v;
  };
  std::shared_ptr<const Node> node_;
};

template <class T>
struct is_free : std::false_type {};
template <class Sg, class A>
struct is_free<Free<Sg, A>> : std::true_type {};

namespace detail {

template <class Sg, class A, class Gen, class Alg>
struct Folder {
  using Tree = Free<Sg, A>;
  using B = std::invoke_result_t<const Gen&, const A&>;

  Gen gen;
  Alg alg;

  static B apply(const std::shared_ptr<const Folder>& self, const Tree& t) {
    if (t.is_leaf()) return self->gen(t.value());
    return self->alg(map_ops<Sg, Tree>(t.ops(), [self](const Tree& c) { return apply(self, c); }));
  }
};

}  // namespace detail

/// Structural recursion: leaves go through `gen`, operation nodes through
/// `alg` with every child already folded. Continuations behind get-like
/// operations are folded on demand.
template <class Sg, class A, class Gen, class Alg>
auto fold(const Free<Sg, A>& t, Gen gen, Alg alg) {
  using F = detail::Folder<Sg, A, Gen, Alg>;
  auto self = std::make_shared<const F>(F{std::move(gen), std::move(alg)});
  return F::apply(self, t);
}

template <class Sg, class A>
Free<Sg, A> ret(A x) {
  return Free<Sg, A>::leaf(std::move(x));
}

/// `m >>= f = fold f Op m`.
template <class Sg, class A, class Fn>
auto and_then(const Free<Sg, A>& t, Fn f) {
  using Out = std::invoke_result_t<const Fn&, const A&>;
  static_assert(is_free<Out>::value && std::is_same_v<typename Out::signature, Sg>,
                "bind continuation must return a tree over the same signature");
  return fold(t, std::move(f), [](Ops<Sg, Out> o) { return Out::op(std::move(o)); });
}

/// `m >> k`.
template <class Sg, class A, class B>
Free<Sg, B> then(const Free<Sg, A>& m, Free<Sg, B> k) {
  return and_then(m, [k = std::move(k)](const A&) { return k; });
}

/// `fmap` on trees.
template <class Sg, class A, class Fn>
auto fmap(const Free<Sg, A>& t, Fn f) {
  using B = std::invoke_result_t<const Fn&, const A&>;
  return and_then(t, [f = std::move(f)](const A& x) { return Free<Sg, B>::leaf(f(x)); });
}

/// The `#` mediator: `head` handles the first family of Sg, `tail` receives
/// every other operation re-indexed into the tail signature.
template <class Sg, class B, class Head, class Tail>
auto mediate(Head head, Tail tail) {
  return [head = std::move(head), tail = std::move(tail)](Ops<Sg, B> op) -> B {
    if (op.index() == 0) return head(std::get<0>(std::move(op)));
    return tail(drop_head<Ops<tail_sig_t<Sg>, B>>(std::move(op)));
  };
}

// ---------------------------------------------------------------------------
// Smart constructors. The family index defaults to the first family of the
// right kind; pass it explicitly for signatures with two state families.

template <class Sg, std::size_t I = state_index_v<Sg>>
auto get() {
  static_assert(I != npos, "signature has no state family");
  using F = family_at_t<I, Sg>;
  using S = typename F::state_type;
  using T = Free<Sg, S>;
  return T::template inject<I>(typename F::template Get<T>{[](const S& s) { return T::leaf(s); }});
}

template <class Sg, std::size_t I = state_index_v<Sg>>
Free<Sg, Unit> put(typename family_at_t<I, Sg>::state_type s) {
  using F = family_at_t<I, Sg>;
  using T = Free<Sg, Unit>;
  return T::template inject<I>(typename F::template Put<T>{std::move(s), T::leaf(Unit{})});
}

template <class Sg, class A = Unit, std::size_t I = nondet_index_v<Sg>>
Free<Sg, A> fail() {
  static_assert(I != npos, "signature has no nondeterminism family");
  using T = Free<Sg, A>;
  return T::template inject<I>(NondetF::Fail<T>{});
}

/// Binary choice (`or` is reserved in C++).
template <class Sg, class A, std::size_t I = nondet_index_v<Sg>>
Free<Sg, A> alt(Free<Sg, A> l, Free<Sg, A> r) {
  static_assert(I != npos, "signature has no nondeterminism family");
  using T = Free<Sg, A>;
  return T::template inject<I>(NondetF::Or<T>{std::move(l), std::move(r)});
}

template <class Sg, std::size_t I = modify_index_v<Sg>>
auto mget() {
  static_assert(I != npos, "signature has no modify family");
  using F = family_at_t<I, Sg>;
  using S = typename F::state_type;
  using T = Free<Sg, S>;
  return T::template inject<I>(typename F::template MGet<T>{[](const S& s) { return T::leaf(s); }});
}

template <class Sg, std::size_t I = modify_index_v<Sg>>
Free<Sg, Unit> update(typename family_at_t<I, Sg>::delta_type r) {
  using F = family_at_t<I, Sg>;
  using T = Free<Sg, Unit>;
  return T::template inject<I>(typename F::template MUpdate<T>{std::move(r), T::leaf(Unit{})});
}

template <class Sg, std::size_t I = modify_index_v<Sg>>
Free<Sg, Unit> restore(typename family_at_t<I, Sg>::delta_type r) {
  using F = family_at_t<I, Sg>;
  using T = Free<Sg, Unit>;
  return T::template inject<I>(typename F::template MRestore<T>{std::move(r), T::leaf(Unit{})});
}

/// `foldr ((or) . ret) fail`.
template <class Sg, class A>
Free<Sg, A> choose(const std::vector<A>& xs) {
  Free<Sg, A> acc = fail<Sg, A>();
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) acc = alt(ret<Sg>(*it), acc);
  return acc;
}

template <class Sg>
Free<Sg, Unit> guard(bool b) {
  return b ? ret<Sg>(Unit{}) : fail<Sg, Unit>();
}

/// `m >> fail`: run for effect only.
template <class B, class Sg, class A>
Free<Sg, B> side(const Free<Sg, A>& m) {
  return then(m, fail<Sg, B>());
}

// ---------------------------------------------------------------------------
// Re-tagging whole trees.

template <class Sg>
struct swap_sig;
template <class F1, class F2, class... Fs>
struct swap_sig<Sig<F1, F2, Fs...>> {
  using type = Sig<F2, F1, Fs...>;
};

template <class Sg>
struct rotate_sig;
template <class F1, class F2, class F3, class... Fs>
struct rotate_sig<Sig<F1, F2, F3, Fs...>> {
  using type = Sig<F2, F3, F1, Fs...>;
};

template <class Out, auto Map, class Sg, class A>
Free<Out, A> retag(const Free<Sg, A>& t) {
  using T = Free<Out, A>;
  return fold(
      t, [](const A& x) { return T::leaf(x); },
      [](Ops<Sg, T> o) { return T::op(reindex<Ops<Out, T>, Map>(std::move(o))); });
}

template <std::size_t N>
constexpr std::array<std::size_t, N> swap_indices() {
  std::array<std::size_t, N> a{};
  for (std::size_t i = 0; i < N; ++i) a[i] = i;
  a[0] = 1;
  a[1] = 0;
  return a;
}

template <std::size_t N>
constexpr std::array<std::size_t, N> rotate_indices() {
  std::array<std::size_t, N> a{};
  for (std::size_t i = 0; i < N; ++i) a[i] = i;
  a[0] = 2;
  a[1] = 0;
  a[2] = 1;
  return a;
}

/// Exchanges the first two families.
template <class Sg, class A>
auto swap_families(const Free<Sg, A>& t) {
  return retag<typename swap_sig<Sg>::type, swap_indices<Sg::size>()>(t);
}

/// (f1, f2, f3, rest) to (f2, f3, f1, rest).
template <class Sg, class A>
auto rotate_families(const Free<Sg, A>& t) {
  return retag<typename rotate_sig<Sg>::type, rotate_indices<Sg::size>()>(t);
}

// ---------------------------------------------------------------------------
// Observation: printing, probe-based equality, leaves and depth.
//
// Text form:
//   ret V                     leaf
//   NAME@I[ ARG](C1, C2, ...) operation of family index I
//   get@I(λ)                  continuation without probes
//   get@I(-1: C, 0: C, ...)   continuation sampled at the probe values

template <class Sg, class A, class Probes = NoProbes>
std::string show(const Free<Sg, A>& t, const Probes& probes = {}) {
  if (t.is_leaf()) return "ret " + show_value(t.value());
  return visit_indexed(t.ops(), [&](auto i, const auto& inner) {
    using F = family_at_t<decltype(i)::value, Sg>;
    Described<Free<Sg, A>> d = F::template describe<Free<Sg, A>>(inner, probes);
    std::string out = d.name + "@" + std::to_string(decltype(i)::value);
    if (!d.arg.empty()) out += " " + d.arg;
    if (d.opaque) return out + "(λ)";
    if (d.kids.empty()) return out;
    out += "(";
    for (std::size_t k = 0; k < d.kids.size(); ++k) {
      if (k != 0) out += ", ";
      out += d.kids[k].tag + show(d.kids[k].child, probes);
    }
    return out + ")";
  });
}

/// Structural equality; continuations are compared at the probe values only.
template <class Sg, class A, class Probes = IntProbes>
bool tree_equal(const Free<Sg, A>& a, const Free<Sg, A>& b, const Probes& probes = {}) {
  if (a.is_leaf() != b.is_leaf()) return false;
  if (a.is_leaf()) return a.value() == b.value();
  if (a.ops().index() != b.ops().index()) return false;
  return visit_indexed(a.ops(), [&](auto i, const auto& left) {
    constexpr std::size_t I = decltype(i)::value;
    using F = family_at_t<I, Sg>;
    using T = Free<Sg, A>;
    Described<T> da = F::template describe<T>(left, probes);
    Described<T> db = F::template describe<T>(std::get<I>(b.ops()), probes);
    if (da.name != db.name || da.arg != db.arg || da.kids.size() != db.kids.size()) return false;
    for (std::size_t k = 0; k < da.kids.size(); ++k) {
      if (!tree_equal(da.kids[k].child, db.kids[k].child, probes)) return false;
    }
    return true;
  });
}

/// Leaf values in left-to-right order (continuations sampled at the probes).
template <class Sg, class A, class Probes = IntProbes>
std::vector<A> leaves(const Free<Sg, A>& t, const Probes& probes = {}) {
  std::vector<A> out;
  auto go = [&](auto& self, const Free<Sg, A>& n) -> void {
    if (n.is_leaf()) {
      out.push_back(n.value());
      return;
    }
    visit_indexed(n.ops(), [&](auto i, const auto& inner) {
      using F = family_at_t<decltype(i)::value, Sg>;
      for (const auto& kid : F::template describe<Free<Sg, A>>(inner, probes).kids) self(self, kid.child);
    });
  };
  go(go, t);
  return out;
}

template <class Sg, class A, class Probes = IntProbes>
std::size_t depth(const Free<Sg, A>& t, const Probes& probes = {}) {
  if (t.is_leaf()) return 0;
  return visit_indexed(t.ops(), [&](auto i, const auto& inner) {
    using F = family_at_t<decltype(i)::value, Sg>;
    std::size_t d = 0;
    for (const auto& kid : F::template describe<Free<Sg, A>>(inner, probes).kids) {
      d = std::max(d, depth(kid.child, probes));
    }
    return d + 1;
  });
}

}  // namespace effsim
