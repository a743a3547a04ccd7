#include "doctest.h"
#include "effsim/difftest/checks.hpp"
#include "effsim/difftest/oracle.hpp"
#include "effsim/semantics.hpp"
#include "support.hpp"

using namespace testing;

namespace {

using SN = Sig<StateF<int>, NondetF, NilF>;
using S1 = Sig<StateF<int>, NilF>;
using NS = Sig<NondetF>;

std::string text_of(const ProgPtr& p) { return to_text(*p); }

}  // namespace

TEST_CASE("generator: depth 0 gives atoms") {
  for (std::uint64_t s = 0; s < 200; ++s) {
    auto p = gen_program(s, 0, kMixedOpts);
    CHECK((p->kind == Prog::Kind::Ret || p->kind == Prog::Kind::Fail));
    CHECK(depth_of(*p) == 0);
  }
}

TEST_CASE("generator: deterministic, bounded, family-respecting") {
  for (std::uint64_t s = 0; s < 300; ++s) {
    CHECK(text_of(gen_program(s, 6, kMixedOpts)) == text_of(gen_program(s, 6, kMixedOpts)));
    for (int d = 0; d <= 7; ++d) {
      auto p = gen_program(s, d, kMixedOpts);
      CHECK(node_count(*p) <= (std::size_t{1} << d));
      CHECK(depth_of(*p) <= static_cast<std::size_t>(d));
    }
    auto used = constructs_used(*gen_program(s, 6, kPureOpts));
    for (auto k : {Prog::Kind::GetBind, Prog::Kind::Put, Prog::Kind::MGetBind, Prog::Kind::Update}) {
      CHECK_FALSE(used[static_cast<std::size_t>(k)]);
    }
    auto state_only = constructs_used(*gen_program(s, 6, kStateOpts));
    CHECK_FALSE(state_only[static_cast<std::size_t>(Prog::Kind::MGetBind)]);
    CHECK_FALSE(state_only[static_cast<std::size_t>(Prog::Kind::Update)]);
  }
}

TEST_CASE("generator: every construct appears over 1000 seeds at depth 6") {
  std::vector<bool> seen(8, false);
  for (std::uint64_t s = 0; s < 1000; ++s) {
    auto used = constructs_used(*gen_program(s, 6, kMixedOpts));
    for (std::size_t k = 0; k < used.size(); ++k) seen[k] = seen[k] || used[k];
  }
  for (std::size_t k = 0; k < seen.size(); ++k) {
    CAPTURE(k);
    CHECK(seen[k]);
  }
}

TEST_CASE("printer") {
  auto p = p_or(p_put(lit(1), p_get(p_ret(var(0)))), p_get(p_ret(add(var(0), lit(-2)))));
  CHECK(text_of(p) == "(put 1; get x0. ret x0 | get x0. ret (x0+-2))");
  CHECK(text_of(p_seq(p_mget(p_update(sub(var(0), lit(1)), p_fail())), p_ret(lit(3)))) ==
        "(mget x0. update (x0-1); fail >> ret 3)");
}

TEST_CASE("lowering") {
  CHECK(tree_equal(lower<NS>(p_ret(lit(3))), ret<NS>(3)));
  auto t = lower<S1>(p_get(p_ret(add(var(0), lit(1)))));
  CHECK(h_nil(h_state1(t, 4)) == std::pair<int, int>{5, 4});
  CHECK_THROWS_AS(lower<NS>(p_get(p_ret(lit(0)))), ShapeError);
  CHECK_THROWS_AS(lower<S1>(p_or(p_ret(lit(0)), p_fail())), ShapeError);
  CHECK_THROWS_AS(lower<SN>(p_update(lit(1), p_ret(lit(0)))), ShapeError);
  CHECK_NOTHROW(lower<SN>(p_update(lit(1), p_ret(lit(0))), {}, ModifyEncoding::as_state));
}

TEST_CASE("oracle") {
  auto p = p_or(p_put(lit(1), p_get(p_ret(var(0)))), p_get(p_ret(var(0))));
  CHECK(oracle_eval(*p, 0, OracleMode::local).answers == std::vector<int>{1, 0});
  auto g = oracle_eval(*p, 0, OracleMode::global);
  CHECK(g.answers == std::vector<int>{1, 1});
  CHECK(g.final_state == 1);
  CHECK(oracle_eval(*p_fail(), 5, OracleMode::global).final_state == 5);
  CHECK_FALSE(oracle_eval(*p_fail(), 5, OracleMode::local).final_state.has_value());
  CHECK(h_nil(h_local(lower<SN>(p), 0)) == std::vector<int>{1, 0});
  CHECK(h_nil(h_global(lower<SN>(p), 0)) == std::vector<int>{1, 1});
}

TEST_CASE("oracle anchor") { CHECK(check_oracle(1000, 3).ok()); }

TEST_CASE("theorem suites pass at their default depth") {
  CHECK(check_theorem("T-localglobal", 1000, 42).ok());
  CHECK(check_theorem("T-fusedTF", 1000, 7).ok());
  for (const auto& id : theorem_ids()) {
    CAPTURE(id);
    CHECK(check_theorem(id, 200, 5).ok());
  }
  CHECK_THROWS_AS(check_theorem("T-nope", 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(check_theorem("T-fusedF", 1, 1, 6, Mutation::minus_as_plus), std::invalid_argument);
}

TEST_CASE("a broken local2global is caught within 200 trials") {
  auto r = check_theorem("T-localglobal", 200, 42, 6, Mutation::skip_put_restore);
  REQUIRE_FALSE(r.ok());
  const auto& f = r.failures.front();
  CHECK(f.depth <= 6);
  CHECK(f.lhs != f.rhs);
  CHECK_FALSE(f.ast_text.empty());
}

TEST_CASE("law suites") {
  for (const auto& s : law_suites()) {
    CAPTURE(s);
    CHECK(check_laws(s, 200, 9).ok());
  }
  auto cx = find_local_put_or_counterexample(9);
  REQUIRE(cx.has_value());
  CHECK(cx->lhs != cx->rhs);
}

TEST_CASE("lemma suites") {
  for (const auto& id : lemma_ids()) {
    CAPTURE(id);
    CHECK(check_lemma(id, 200, 10).ok());
  }
}

TEST_CASE("reports") {
  TrialFn fails_deep = [](std::uint64_t, int d) -> std::optional<Failure> {
    if (d < 3) return std::nullopt;
    Failure f;
    f.ast_text = "d" + std::to_string(d);
    f.lhs = "a";
    f.rhs = "b";
    return f;
  };
  auto r = run_trials("demo", 2, 1, 6, fails_deep);
  REQUIRE(r.failures.size() == 2);
  CHECK(r.failures[0].depth == 3);
  CHECK(r.failures[0].ast_text == "d3");
  auto j = to_json(r);
  CHECK(j["suite"] == "demo");
  CHECK(j["trials"] == 2);
  CHECK(j["failures"].size() == 2);
  CHECK(j["failures"][0].contains("trialSeed"));
  CHECK(j.dump().rfind("{\"suite\":\"demo\",\"seed\":1,\"trials\":2,\"failures\":", 0) == 0);

  TrialFn throws = [](std::uint64_t, int) -> std::optional<Failure> { throw std::runtime_error("boom"); };
  auto e = run_trials("boom", 1, 1, 0, throws);
  REQUIRE(e.failures.size() == 1);
  CHECK(e.failures[0].lhs.find("boom") != std::string::npos);
  CHECK(to_json(check_theorem("T-modify", 50, 3)).dump() == to_json(check_theorem("T-modify", 50, 3)).dump());
}

TEST_CASE("mutation names") {
  for (auto m : {Mutation::none, Mutation::skip_put_restore, Mutation::untrailed_branch, Mutation::minus_as_plus}) {
    CHECK(parse_mutation(to_string(m)) == m);
  }
  CHECK_FALSE(parse_mutation("bogus").has_value());
}
