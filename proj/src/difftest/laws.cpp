#include <functional>
#include <stdexcept>

#include "common.hpp"
#include "effsim/queens.hpp"

namespace effsim::difftest {

const std::vector<std::string>& law_suites() {
  static const std::vector<std::string> ids{"nondet", "state", "localstate", "globalstate", "undo", "modify"};
  return ids;
}

namespace {

// One law instance: both sides, already placed in a context.
template <class Sg>
struct Instance {
  std::string name;
  std::string text;
  Free<Sg, int> lhs;
  Free<Sg, int> rhs;
};

template <class Sg, class Obs>
std::optional<Failure> check_all(const std::vector<Instance<Sg>>& laws, const Obs& observe) {
  for (const auto& law : laws) {
    if (auto f = compare(law.name + ": " + law.text, observe(law.lhs), observe(law.rhs))) return f;
  }
  return std::nullopt;
}

/// Context `pre >> [] >>= k`.
template <class Sg>
struct Context {
  ProgPtr pre;
  Kont k;

  Free<Sg, int> operator()(const Free<Sg, int>& hole) const {
    return then(lower<Sg>(pre), lower_bind<Sg>(hole, k));
  }
  std::string wrap(const std::string& hole) const {
    return to_text(*pre) + " >> [" + hole + "] >>= " + to_text(k);
  }
};

template <class Sg>
Context<Sg> draw_context(Rng& rng, int depth, const GenOptions& opts, bool with_prefix) {
  ProgPtr pre = with_prefix ? gen_program(rng, depth / 2, opts) : p_ret(lit(0));
  return {pre, gen_kont(rng, depth, opts)};
}

/// Continuation over one bound variable as a tree function.
template <class Sg>
std::function<Free<Sg, int>(const int&)> as_fn(const Kont& k) {
  return [body = k.body, level = k.level](const int& x) {
    Env env(static_cast<std::size_t>(level), 0);
    env.push_back(x);
    return lower<Sg>(body, env);
  };
}

// ---------------------------------------------------------------------------

std::optional<Failure> nondet_trial(std::uint64_t ts, int d) {
  using Sg = NSig;
  using T = Free<Sg, int>;
  Rng rng(ts);
  ProgPtr pm = gen_program(rng, d, kPure);
  ProgPtr pn = gen_program(rng, d, kPure);
  ProgPtr po = gen_program(rng, d, kPure);
  Kont f = gen_kont(rng, d, kPure);
  auto ctx = draw_context<Sg>(rng, d, kPure, false);
  T m = lower<Sg>(pm), n = lower<Sg>(pn), o = lower<Sg>(po);
  auto ff = as_fn<Sg>(f);
  const std::string mt = to_text(*pm), nt = to_text(*pn), ot = to_text(*po), ft = to_text(f);
  std::vector<Instance<Sg>> laws{
      {"fail-left-identity", ctx.wrap("(fail | " + mt + ") = " + mt), ctx(alt(fail<Sg, int>(), m)), ctx(m)},
      {"fail-right-identity", ctx.wrap("(" + mt + " | fail) = " + mt), ctx(alt(m, fail<Sg, int>())), ctx(m)},
      {"or-associativity", ctx.wrap("((m | n) | o) = (m | (n | o)); m=" + mt + " n=" + nt + " o=" + ot),
       ctx(alt(alt(m, n), o)), ctx(alt(m, alt(n, o)))},
      {"right-distributivity", ctx.wrap("(m | n) >>= f = (m >>= f) | (n >>= f); m=" + mt + " n=" + nt + " f=" + ft),
       ctx(and_then(alt(m, n), ff)), ctx(alt(and_then(m, ff), and_then(n, ff)))},
      {"left-zero", ctx.wrap("fail >>= f = fail; f=" + ft), ctx(and_then(fail<Sg, int>(), ff)), ctx(fail<Sg, int>())},
  };
  return check_all(laws, [](const T& t) { return h_nd(t); });
}

std::optional<Failure> state_trial(std::uint64_t ts, int d) {
  using Sg = StateSig;
  using T = Free<Sg, int>;
  Rng rng(ts);
  const int a = gen_small(rng), b = gen_small(rng), s0 = gen_small(rng);
  ProgPtr q = gen_program(rng, d, kState);
  Kont k = gen_kont(rng, d, kState);
  ProgPtr k2 = gen_program(rng, d, kState, 2);  // body over x0, x1
  auto ctx = draw_context<Sg>(rng, d, kState, true);
  auto kf = as_fn<Sg>(k);
  const std::string qt = to_text(*q), kt = to_text(k);
  auto get_ = get<Sg>();
  std::vector<Instance<Sg>> laws{
      {"put-put", ctx.wrap("put a; put b; q = put b; q; a=" + std::to_string(a) + " b=" + std::to_string(b) + " q=" + qt),
       ctx(then(put<Sg>(a), then(put<Sg>(b), lower<Sg>(q)))), ctx(then(put<Sg>(b), lower<Sg>(q)))},
      {"put-get", ctx.wrap("put a; get >>= k = put a; k a; a=" + std::to_string(a) + " k=" + kt),
       ctx(then(put<Sg>(a), and_then(get_, kf))), ctx(then(put<Sg>(a), kf(a)))},
      {"get-put", ctx.wrap("get >>= put; q = q; q=" + qt),
       ctx(then(and_then(get_, [](const int& s) { return put<Sg>(s); }), lower<Sg>(q))), ctx(lower<Sg>(q))},
      {"get-get", ctx.wrap("get x0. get x1. k2 = get x0. k2[x1:=x0]; k2=" + to_text(*k2)),
       ctx(and_then(get_, [=](const int& x) {
         return and_then(get<Sg>(), [=](const int& y) { return lower<Sg>(k2, Env{x, y}); });
       })),
       ctx(and_then(get_, [=](const int& x) { return lower<Sg>(k2, Env{x, x}); }))},
  };
  return check_all(laws, [s0](const T& t) { return h_nil(h_ndf(h_state1(t, s0))); });
}

std::optional<Failure> localstate_trial(std::uint64_t ts, int d) {
  using Sg = StateSig;
  using T = Free<Sg, int>;
  Rng rng(ts);
  const int a = gen_small(rng), s0 = gen_small(rng);
  ProgPtr pm = gen_program(rng, d, kState);
  ProgPtr pn = gen_program(rng, d, kState);
  Kont k1 = gen_kont(rng, d, kState);
  Kont k2 = gen_kont(rng, d, kState);
  auto ctx = draw_context<Sg>(rng, d, kState, true);
  T m = lower<Sg>(pm), n = lower<Sg>(pn);
  auto f1 = as_fn<Sg>(k1);
  auto f2 = as_fn<Sg>(k2);
  const std::string at = std::to_string(a);
  std::vector<Instance<Sg>> laws{
      {"put-right-identity", ctx.wrap("put a; fail = fail; a=" + at), ctx(then(put<Sg>(a), fail<Sg, int>())),
       ctx(fail<Sg, int>())},
      {"put-left-distributivity",
       ctx.wrap("put a; (m | n) = (put a; m) | (put a; n); a=" + at + " m=" + to_text(*pm) + " n=" + to_text(*pn)),
       ctx(then(put<Sg>(a), alt(m, n))), ctx(alt(then(put<Sg>(a), m), then(put<Sg>(a), n)))},
      {"get-right-identity", ctx.wrap("get; fail = fail"), ctx(then(get<Sg>(), fail<Sg, int>())),
       ctx(fail<Sg, int>())},
      {"get-left-distributivity",
       ctx.wrap("get >>= (\\x -> k1 x | k2 x) = (get >>= k1) | (get >>= k2); k1=" + to_text(k1) + " k2=" +
                to_text(k2)),
       ctx(and_then(get<Sg>(), [=](const int& x) { return alt(f1(x), f2(x)); })),
       ctx(alt(and_then(get<Sg>(), f1), and_then(get<Sg>(), f2)))},
  };
  return check_all(laws, [s0](const T& t) { return h_nil(h_local(t, s0)); });
}

struct PutOr {
  std::string text;
  Free<StateSig, int> lhs;
  Free<StateSig, int> rhs;
};

/// (put a; m) | n  versus  put a; (m | n)
PutOr draw_put_or(Rng& rng, int d) {
  using Sg = StateSig;
  const int a = gen_small(rng);
  ProgPtr pm = gen_program(rng, d, kState);
  ProgPtr pn = gen_program(rng, d, kState);
  auto ctx = draw_context<Sg>(rng, d, kState, true);
  auto m = lower<Sg>(pm), n = lower<Sg>(pn);
  return {"put-or: " + ctx.wrap("(put a; m) | n = put a; (m | n); a=" + std::to_string(a) + " m=" + to_text(*pm) +
                                " n=" + to_text(*pn)),
          ctx(alt(then(put<Sg>(a), m), n)), ctx(then(put<Sg>(a), alt(m, n)))};
}

std::optional<Failure> globalstate_trial(std::uint64_t ts, int d) {
  Rng rng(ts);
  const int s0 = gen_small(rng);
  PutOr law = draw_put_or(rng, d);
  return compare(law.text, h_nil(h_global_with_state(law.lhs, s0)), h_nil(h_global_with_state(law.rhs, s0)));
}

std::optional<Failure> undo_trial(std::uint64_t ts, int) {
  Rng rng(ts);
  const int s = gen_small(rng, -1000, 1000), r = gen_small(rng, -1000, 1000);
  using IU = Undo<int, int>;
  if (auto f = compare("plus-minus int: s=" + std::to_string(s) + " r=" + std::to_string(r),
                       IU::revert(IU::apply(s, r), r), s)) {
    return f;
  }
  using queens::QueensState;
  using QU = Undo<QueensState, int>;
  QueensState q{gen_small(rng, 0, 8), {}};
  for (int i = 0; i < q.column; ++i) q.placed = q.placed.push(gen_small(rng, 1, 8));
  const int row = gen_small(rng, 1, 8);
  return compare("plus-minus queens: s=" + show_value(q) + " r=" + std::to_string(row), QU::revert(QU::apply(q, row), row),
                 q);
}

std::optional<Failure> modify_trial(std::uint64_t ts, int d) {
  using Sg = ModifySig;
  using T = Free<Sg, int>;
  Rng rng(ts);
  const int r = gen_small(rng), s0 = gen_small(rng);
  ProgPtr q = gen_program(rng, d, kModify);
  ProgPtr k2 = gen_program(rng, d, kModify, 2);
  auto ctx = draw_context<Sg>(rng, d, kModify, true);
  const std::string rt = std::to_string(r);
  auto ret_ = [](int x) { return T::leaf(x); };
  std::vector<Instance<Sg>> laws{
      {"mget-mget", ctx.wrap("mget x0. mget x1. k2 = mget x0. k2[x1:=x0]; k2=" + to_text(*k2)),
       ctx(and_then(mget<Sg>(), [=](const int& x) {
         return and_then(mget<Sg>(), [=](const int& y) { return lower<Sg>(k2, Env{x, y}); });
       })),
       ctx(and_then(mget<Sg>(), [=](const int& x) { return lower<Sg>(k2, Env{x, x}); }))},
      {"update-mget", ctx.wrap("mget >>= \\s -> update r; ret (s+r) = update r; mget; r=" + rt),
       ctx(and_then(mget<Sg>(), [=](const int& s) { return then(update<Sg>(r), ret_(s + r)); })),
       ctx(then(update<Sg>(r), and_then(mget<Sg>(), ret_)))},
      {"restore-mget", ctx.wrap("mget >>= \\s -> restore r; ret (s-r) = restore r; mget; r=" + rt),
       ctx(and_then(mget<Sg>(), [=](const int& s) { return then(restore<Sg>(r), ret_(s - r)); })),
       ctx(then(restore<Sg>(r), and_then(mget<Sg>(), ret_)))},
      {"update-restore", ctx.wrap("update r; restore r; q = q; r=" + rt + " q=" + to_text(*q)),
       ctx(then(update<Sg>(r), then(restore<Sg>(r), lower<Sg>(q)))), ctx(lower<Sg>(q))},
  };
  return check_all(laws, [s0](const T& t) { return h_nil(h_ndf(h_modify1(t, s0))); });
}

}  // namespace

Report check_laws(const std::string& suite, int trials, std::uint64_t seed, int depth) {
  TrialFn fn;
  if (suite == "nondet") fn = nondet_trial;
  if (suite == "state") fn = state_trial;
  if (suite == "localstate") fn = localstate_trial;
  if (suite == "globalstate") fn = globalstate_trial;
  if (suite == "undo") fn = undo_trial;
  if (suite == "modify") fn = modify_trial;
  if (!fn) throw std::invalid_argument("unknown law suite: " + suite);
  return run_trials("laws/" + suite, trials, seed, depth, fn);
}

std::optional<Failure> find_local_put_or_counterexample(std::uint64_t seed, int max_trials, int depth) {
  std::mt19937_64 master(seed);
  for (int i = 0; i < max_trials; ++i) {
    const std::uint64_t ts = master();
    Rng rng(ts);
    const int s0 = gen_small(rng);
    PutOr law = draw_put_or(rng, depth);
    if (auto f = compare(law.text + " s0=" + std::to_string(s0), h_nil(h_local(law.lhs, s0)),
                         h_nil(h_local(law.rhs, s0)))) {
      f->trial_seed = ts;
      f->depth = depth;
      return f;
    }
  }
  return std::nullopt;
}

}  // namespace effsim::difftest
