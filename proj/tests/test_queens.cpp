#include <algorithm>
#include <cstdlib>

#include "doctest.h"
#include "effsim/machines.hpp"
#include "effsim/queens.hpp"
#include "effsim/semantics.hpp"
#include "effsim/translations.hpp"

using namespace effsim;
using namespace effsim::queens;

namespace {

const std::vector<Solution> kFour{{2, 4, 1, 3}, {3, 1, 4, 2}};
const std::vector<Solution> kFourRaw{{3, 1, 4, 2}, {2, 4, 1, 3}};

// Pairwise check: distinct rows, no two on a diagonal.
bool brute_valid(const std::vector<Row>& qs) {
  for (std::size_t i = 0; i < qs.size(); ++i) {
    for (std::size_t j = i + 1; j < qs.size(); ++j) {
      const int dc = static_cast<int>(j - i);
      if (qs[i] == qs[j] || std::abs(qs[i] - qs[j]) == dc) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("safe") {
  CHECK(safe(1, 1, {}));
  CHECK_FALSE(safe(2, 1, {1}));
  CHECK(safe(3, 1, {1}));
  CHECK_FALSE(safe(1, 1, {1}));
  CHECK_FALSE(safe(3, 1, {4, 1}));
}

TEST_CASE("valid") {
  CHECK(valid({}));
  CHECK(valid({2, 4, 1, 3}));
  CHECK_FALSE(valid({1, 2, 3, 4}));
  for (const auto& p : permutations(one_to(6))) CHECK(valid(p) == brute_valid(p));
}

TEST_CASE("permutations") {
  CHECK(permutations(one_to(3)) ==
        std::vector<std::vector<Row>>{{1, 2, 3}, {1, 3, 2}, {2, 1, 3}, {2, 3, 1}, {3, 1, 2}, {3, 2, 1}});
  CHECK(permutations(one_to(0)).size() == 1);
  CHECK(permutations(one_to(6)).size() == 720);
}

TEST_CASE("undo on queens states") {
  using U = Undo<QueensState, int>;
  QueensState s{2, PList<int>{}.push(1).push(3)};
  for (int r = 1; r <= 8; ++r) {
    CHECK(U::revert(U::apply(s, r), r) == s);
    CHECK(U::apply(s, r).column == 3);
  }
}

TEST_CASE("raw handler output lists rows most recent first") {
  const QueensState s0{};
  CHECK(h_nd(queens_naive(4)) == kFour);
  CHECK(h_nil(h_local(queens_backtrack(4), s0)) == kFourRaw);
  CHECK(h_nil(simulate(queens_backtrack(4), s0)) == kFourRaw);
  CHECK(h_nil(simulate_f(queens_backtrack(4), s0)) == kFourRaw);
  CHECK(h_nil(simulate_t(queens_m(4), s0)) == kFourRaw);
  CHECK(h_nil(simulate_tf(queens_m(4), s0)) == kFourRaw);
}

TEST_CASE("every pipeline gives the two solutions for n = 4 in order") {
  for (const auto& name : pipeline_names()) {
    CAPTURE(name);
    CHECK(run_pipeline(name, 4) == kFour);
  }
}

TEST_CASE("pipelines agree for small boards") {
  const std::vector<std::size_t> counts{1, 0, 0, 2, 10, 4};
  for (int n = 1; n <= 6; ++n) {
    const auto oracle = run_pipeline("naive", n);
    CHECK(oracle.size() == counts[static_cast<std::size_t>(n - 1)]);
    for (const auto& name : pipeline_names()) {
      CAPTURE(name);
      CAPTURE(n);
      CHECK(run_pipeline(name, n) == oracle);
    }
  }
  CHECK(run_pipeline("local", 4) == run_pipeline("global", 4));
  CHECK(run_pipeline("simT", 4) == run_pipeline("localM", 4));
  CHECK(run_pipeline("fusedTF", 6).size() == 4);
}

TEST_CASE("naive counts for n = 7 and 8") {
  CHECK(run_pipeline("naive", 7).size() == 40);
  CHECK(run_pipeline("fusedTF", 7).size() == 40);
  CHECK(run_pipeline("naive", 8).size() == 92);
}

TEST_CASE("bad arguments") {
  CHECK_THROWS_AS(run_pipeline("nope", 4), std::invalid_argument);
  CHECK_THROWS_AS(run_pipeline("local", 0), std::invalid_argument);
  CHECK_THROWS_AS(trace_pipeline("local", 4), std::invalid_argument);
}

TEST_CASE("traced machines") {
  auto tf = trace_pipeline("fusedTF", 4);
  CHECK(tf.solutions == kFour);
  CHECK_FALSE(tf.steps.empty());
  for (const auto& s : tf.steps) CHECK(s.markers == s.cp_stack);
  auto f = trace_pipeline("fusedF", 4);
  CHECK(f.solutions == kFour);
  CHECK(f.steps.back().results == 2);
  CHECK_THROWS_AS(trace_pipeline("fusedTF", 4, 10), StepBudgetExceeded);
}
