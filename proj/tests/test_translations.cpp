#include "doctest.h"
#include "effsim/translations.hpp"
#include "support.hpp"

using namespace testing;

namespace {

using NS = Sig<NondetF>;
using SN = Sig<StateF<int>, NondetF, NilF>;
using MN = Sig<ModifyF<int, int>, NondetF, NilF>;
using NSt = Sig<NondetF, StateF<int>, NilF>;
using TS = Sig<StateF<int>, StateF<int>, NondetF, NilF>;
using TrailSig = Sig<ModifyF<int, int>, NondetF, StateF<TrailStack<int>>, NilF>;
using P = std::pair<int, int>;
using Results = std::pair<std::vector<int>, int>;

const GenOptions kTwo{false, false, true};

struct Case {
  ProgPtr prog;
  int s;
};

Case draw(std::uint64_t base, int i, const GenOptions& opts, int depth = 6) {
  Rng rng(case_seed(base, i));
  ProgPtr p = gen_program(rng, depth, opts);
  return {p, gen_small(rng)};
}

TrailStack<int> trail_of(const std::vector<TrailEntry<int>>& top_first) {
  return {PList<TrailEntry<int>>::from_vector(top_first)};
}

TrailEntry<int> delta(int r) { return TrailEntry<int>{std::in_place_index<0>, r}; }

}  // namespace

TEST_CASE("state-restoring put") {
  auto with_r = then(put_restoring<SN>(1), then(ret<SN>(7), get<SN>()));
  CHECK(h_nil(h_global_with_state(with_r, 0)) == Results{{1}, 0});
  auto plain = then(put<SN>(1), then(ret<SN>(7), get<SN>()));
  CHECK(h_nil(h_global_with_state(plain, 0)) == Results{{1}, 1});

  // get >>= putR is observably different from ret () in a larger context.
  auto lhs = then(and_then(get<SN>(), [](const int& s) { return put_restoring<SN>(s); }), put<SN>(9));
  auto rhs = then(ret<SN>(Unit{}), put<SN>(9));
  CHECK(h_nil(h_global_with_state(lhs, 2)).second == 2);
  CHECK(h_nil(h_global_with_state(rhs, 2)).second == 9);
}

TEST_CASE("local2global") {
  CHECK(tree_equal(local2global(ret<SN>(4)), ret<SN>(4)));
  for (int i = 0; i < 1000; ++i) {
    auto [p, s] = draw(30, i, kStateOpts);
    auto t = lower<SN>(p);
    CHECK(h_nil(h_global(local2global(t), s)) == h_nil(h_local(t, s)));
  }
  for (int i = 0; i < 500; ++i) {
    auto [p, s] = draw(31, i, kStateOpts);
    auto out = h_nil(h_state1(h_ndf(swap_families(local2global(lower<SN>(p)))), s));
    CHECK(out.second == s);
  }
  auto t = alt(then(put<SN>(1), get<SN>()), get<SN>());
  CHECK(h_nil(h_global(local2global(t), 0)) == std::vector<int>{1, 0});
  CHECK(h_nil(h_global(local2global(t, Fault::skip_put_restore), 0)) == std::vector<int>{1, 1});
}

TEST_CASE("nondet2stateS and runND") {
  CHECK(run_nd(fail<NS, int>()).empty());
  CHECK(run_nd(alt(ret<NS>(1), ret<NS>(2))) == std::vector<int>{1, 2});
  for (int i = 0; i < 1000; ++i) {
    auto t = random_tree<NS>(case_seed(32, i), 6, kPureOpts);
    CHECK(run_nd(t) == h_nd(t));
  }
  using CS = ChoiceState<Sig<>, int>;
  const CS st{SnocList<int>::from_vector({4, 5}), {}};
  auto out = h_state_closed(pop_ss<CS>())(st);
  CHECK(out.second.results.to_vector() == std::vector<int>{4, 5});
  CHECK(out.second.stack.empty());
}

TEST_CASE("nondet2state and runNDf") {
  using NN = Sig<NondetF, NilF>;
  CHECK(h_nil(run_ndf(fail<NN, int>())).empty());
  for (int i = 0; i < 1000; ++i) {
    auto [p, s] = draw(33, i, kStateOpts);
    auto t = lower<NSt>(p);
    CHECK(h_nil(h_state1(run_ndf(t), s)) == h_nil(h_state1(h_ndf(t), s)));
  }
}

TEST_CASE("states2state") {
  for (int a = -2; a <= 2; ++a) {
    auto t = then(put<TS, 0>(a), get<TS, 1>());
    auto out = h_nil(h_ndf(h_state1(states2state(t), P{4, 6})));
    CHECK(out == std::vector<std::pair<int, P>>{{6, {a, 6}}});
  }
  for (int i = 0; i < 500; ++i) {
    Rng rng(case_seed(34, i));
    auto t = lower<TS>(gen_program(rng, 6, kTwo));
    const P s{gen_small(rng), gen_small(rng)};
    CHECK(h_nil(h_ndf(flatten(h_states_run(t))(s))) == h_nil(h_ndf(h_state1(states2state(t), s))));
  }
}

TEST_CASE("simulate") {
  CHECK(h_nil(simulate(fail<SN, int>(), 0)).empty());
  for (int i = 0; i < 1000; ++i) {
    auto [p, s] = draw(35, i, kStateOpts);
    auto t = lower<SN>(p);
    CHECK(h_nil(simulate(t, s)) == h_nil(h_local(t, s)));
  }
}

TEST_CASE("local2globalM") {
  CHECK(tree_equal(local2global_m(ret<MN>(4)), ret<MN>(4)));
  for (int i = 0; i < 1000; ++i) {
    auto [p, s] = draw(36, i, kModifyOpts);
    auto t = lower<MN>(p);
    CHECK(h_nil(h_global_m(local2global_m(t), s)) == h_nil(h_local_m(t, s)));
  }
  for (int i = 0; i < 500; ++i) {
    auto [p, s] = draw(37, i, kModifyOpts);
    CHECK(h_nil(h_modify1(h_ndf(swap_families(local2global_m(lower<MN>(p)))), s)).second == s);
  }
}

TEST_CASE("untrail") {
  auto run = [](const TrailStack<int>& t, int s) {
    return h_nil(h_state1(h_modify1(h_ndf(swap_families(untrail<TrailSig, int>())), s), t));
  };
  auto empty = run(TrailStack<int>{}, 5);
  CHECK(empty.first.first.size() == 1);
  CHECK(empty.first.second == 5);
  CHECK(empty.second.entries.empty());

  auto out = run(trail_of({delta(3), delta(5), TrailEntry<int>{Marker{}}}), 10);
  CHECK(out.first.second == 2);
  CHECK(out.second.entries.empty());

  auto partial = run(trail_of({delta(3), TrailEntry<int>{Marker{}}, delta(7)}), 10);
  CHECK(partial.first.second == 7);
  CHECK(partial.second == trail_of({delta(7)}));
}

TEST_CASE("hGlobalT") {
  auto t = alt(then(update<MN>(1), mget<MN>()), mget<MN>());
  CHECK(h_nil(h_global_t(t, 0)) == std::vector<int>{1, 0});
  CHECK(h_nil(h_global_t(fail<MN, int>(), 3)).empty());
  CHECK(h_nil(h_global_t(t, 0, Fault::untrailed_branch)) == std::vector<int>{1, 1});
  for (int i = 0; i < 1000; ++i) {
    auto [p, s] = draw(38, i, kModifyOpts);
    auto m = lower<MN>(p);
    CHECK(h_nil(h_global_t(m, s)) == h_nil(h_local_m(m, s)));
  }
}

TEST_CASE("simulateT") {
  CHECK(h_nil(simulate_t(fail<MN, int>(), 0)).empty());
  for (int i = 0; i < 1000; ++i) {
    auto [p, s] = draw(39, i, kModifyOpts);
    auto m = lower<MN>(p);
    CHECK(h_nil(simulate_t(m, s)) == h_nil(h_local_m(m, s)));
  }
}
