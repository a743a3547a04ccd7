#include "doctest.h"
#include "effsim/difftest/oracle.hpp"
#include "effsim/semantics.hpp"
#include "support.hpp"

using namespace testing;

namespace {

using NS = Sig<NondetF>;
using NN = Sig<NondetF, NilF>;
using S1 = Sig<StateF<int>, NilF>;
using SN = Sig<StateF<int>, NondetF, NilF>;
using MN = Sig<ModifyF<int, int>, NondetF, NilF>;
using SS = Sig<StateF<int>, StateF<int>, NilF>;
using P = std::pair<int, int>;

bool has_put(const Prog& p) { return constructs_used(p)[static_cast<std::size_t>(Prog::Kind::Put)]; }

}  // namespace

TEST_CASE("hND") {
  CHECK(h_nd(fail<NS, int>()).empty());
  CHECK(h_nd(alt(ret<NS>(1), alt(ret<NS>(2), ret<NS>(3)))) == std::vector<int>{1, 2, 3});
  for (int n = 0; n <= 10; ++n) {
    std::vector<int> xs;
    for (int i = 1; i <= n; ++i) xs.push_back(i);
    CHECK(h_nd(choose<NS>(xs)) == xs);
  }
}

TEST_CASE("hState1") {
  CHECK(h_nil(h_state1(get<S1>(), 5)) == P{5, 5});
  CHECK(h_nil(h_state1(then(put<S1>(9), get<S1>()), 0)) == P{9, 9});
  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    const int s = gen_small(rng, -1000, 1000);
    auto t = and_then(get<S1>(), [](const int& x) { return put<S1>(x); });
    CHECK(h_nil(h_state1(t, s)) == std::pair<Unit, int>{Unit{}, s});
  }
}

TEST_CASE("hNDf") {
  CHECK(h_nil(h_ndf(fail<NN, int>())).empty());
  for (int i = 0; i < 300; ++i) {
    ProgPtr p = gen_program(case_seed(20, i), 5, kPureOpts);
    CHECK(h_nil(h_ndf(lower<NN>(p))) == h_nd(lower<NS>(p)));
  }
  using NSt = Sig<NondetF, StateF<int>, NilF>;
  auto t = alt(get<NSt>(), ret<NSt>(1));
  CHECK(show(h_ndf(t), IntProbes{{0}}) == "get@0(0: ret [0,1])");
}

TEST_CASE("hNil") {
  CHECK(h_nil(ret<Sig<NilF>>(42)) == 42);
  CHECK(h_nil(h_state1(then(put<S1>(3), ret<S1>(8)), 0)) == P{8, 3});
  for (int v = -50; v < 50; ++v) CHECK(h_nil(ret<Sig<NilF>>(v)) == v);
}

TEST_CASE("hLocal") {
  auto t = then(put<SN>(42), alt(then(put<SN>(21), get<SN>()), get<SN>()));
  CHECK(h_nil(h_local(t, 0)) == std::vector<int>{21, 42});
  CHECK(h_nil(h_local(fail<SN, int>(), 3)).empty());
  for (int i = 0; i < 1000; ++i) {
    Rng rng(case_seed(21, i));
    ProgPtr p = gen_program(rng, 6, kStateOpts);
    const int s = gen_small(rng);
    CHECK(h_nil(h_local(lower<SN>(p), s)) == oracle_eval(*p, s, OracleMode::local).answers);
  }
}

TEST_CASE("hGlobal") {
  auto t = alt(then(put<SN>(1), get<SN>()), get<SN>());
  CHECK(h_nil(h_global(t, 0)) == std::vector<int>{1, 1});
  CHECK(h_nil(h_local(t, 0)) == std::vector<int>{1, 0});
  auto r = h_nil(h_global_with_state(then(put<SN>(6), fail<SN, int>()), 0));
  CHECK(r.first.empty());
  CHECK(r.second == 6);
  int put_free = 0;
  for (int i = 0; put_free < 500; ++i) {
    Rng rng(case_seed(22, i));
    ProgPtr p = gen_program(rng, 6, kStateOpts);
    if (has_put(*p)) continue;
    ++put_free;
    const int s = gen_small(rng);
    CHECK(h_nil(h_global(lower<SN>(p), s)) == h_nil(h_local(lower<SN>(p), s)));
  }
  for (int i = 0; i < 500; ++i) {
    Rng rng(case_seed(23, i));
    ProgPtr p = gen_program(rng, 6, kStateOpts);
    const int s = gen_small(rng);
    auto o = oracle_eval(*p, s, OracleMode::global);
    CHECK(h_nil(h_global_with_state(lower<SN>(p), s)) == std::pair<std::vector<int>, int>{o.answers, *o.final_state});
  }
}

TEST_CASE("hModify1") {
  using M1 = Sig<ModifyF<int, int>, NilF>;
  CHECK(h_nil(h_modify1(then(update<M1>(3), mget<M1>()), 10)) == P{13, 13});
  for (int r = -3; r <= 3; ++r) {
    auto t = then(update<M1>(r), restore<M1>(r));
    CHECK(h_nil(h_modify1(t, 5)) == std::pair<Unit, int>{Unit{}, 5});
  }
  for (int i = 0; i < 500; ++i) {
    Rng rng(case_seed(24, i));
    ProgPtr p = gen_program(rng, 6, kModifyOpts);
    const int s = gen_small(rng);
    auto t = lower<MN>(p);
    CHECK(h_nil(h_local_m(t, s)) == oracle_eval(*p, s, OracleMode::local).answers);
    auto o = oracle_eval(*p, s, OracleMode::global);
    CHECK(h_nil(h_global_m_with_state(t, s)) == std::pair<std::vector<int>, int>{o.answers, *o.final_state});
  }
}

TEST_CASE("hLocalM and hGlobalM") {
  auto t = alt(then(update<MN>(1), mget<MN>()), mget<MN>());
  CHECK(h_nil(h_local_m(t, 0)) == std::vector<int>{1, 0});
  CHECK(h_nil(h_global_m(t, 0)) == std::vector<int>{1, 1});
  for (int i = 0; i < 300; ++i) {
    Rng rng(case_seed(25, i));
    ProgPtr p = gen_program(rng, 6, kModifyOpts);
    const int s = gen_small(rng);
    auto encoded = lower<SN>(p, {}, ModifyEncoding::as_state);
    CHECK(h_nil(h_local_m(lower<MN>(p), s)) == h_nil(h_local(encoded, s)));
  }
}

TEST_CASE("hStates") {
  auto g = get<SS, 0>();
  CHECK(h_nil(h_states(g, 7, 9)) == std::pair<P, int>{{7, 7}, 9});
  for (int a = -2; a <= 2; ++a) {
    auto t = then(put<SS, 1>(5), get<SS, 1>());
    CHECK(h_nil(h_states(t, a, 8)) == std::pair<P, int>{{5, a}, 5});
  }
}

TEST_CASE("flatten and nest are inverse") {
  using TS = Sig<StateF<int>, StateF<int>, NondetF, NilF>;
  const GenOptions two{false, false, true};
  for (int i = 0; i < 200; ++i) {
    Rng rng(case_seed(26, i));
    auto t = lower<TS>(gen_program(rng, 5, two));
    const int s1 = gen_small(rng), s2 = gen_small(rng);
    auto nested = h_states_run(t);
    auto flat = flatten(nested);
    CHECK(h_nil(h_ndf(nest(flat)(s1)(s2))) == h_nil(h_ndf(nested(s1)(s2))));
    CHECK(h_nil(h_ndf(flatten(nest(flat))(P{s1, s2}))) == h_nil(h_ndf(flat(P{s1, s2}))));
  }
}
