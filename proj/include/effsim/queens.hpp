#pragma once

// The n-queens running example: a generate-and-test program, a backtracking
// program over get/put state, and one over reversible updates.

#include <string>
#include <vector>

#include "effsim/effect.hpp"
#include "effsim/machines.hpp"
#include "effsim/plist.hpp"

namespace effsim::queens {

/// Current column and the rows placed so far, most recent first.
struct QueensState {
  int column = 0;
  PList<int> placed;

  friend bool operator==(const QueensState& a, const QueensState& b) {
    return a.column == b.column && a.placed == b.placed;
  }
};

std::ostream& operator<<(std::ostream& os, const QueensState& s);

using Row = int;
using Solution = std::vector<Row>;

bool safe(Row q, int n, const std::vector<Row>& qs);
bool valid(const std::vector<Row>& qs);

/// All permutations of xs in lexicographic order of positions.
std::vector<std::vector<Row>> permutations(std::vector<Row> xs);

std::vector<Row> one_to(int n);

}  // namespace effsim::queens

namespace effsim {

template <>
struct Undo<queens::QueensState, int> {
  static queens::QueensState apply(const queens::QueensState& s, int r) {
    return {s.column + 1, s.placed.push(r)};
  }
  static queens::QueensState revert(const queens::QueensState& s, int) {
    if (s.column == 0 || s.placed.empty()) defect("queens state reverted below column 0");
    return {s.column - 1, s.placed.pop()};
  }
};

}  // namespace effsim

namespace effsim::queens {

using NondetSig = Sig<NondetF>;
using StateSig = Sig<StateF<QueensState>, NondetF, NilF>;
using ModifySig = Sig<ModifyF<QueensState, int>, NondetF, NilF>;

/// `choose (permutations [1..n]) >>= filtr valid`.
Free<NondetSig, Solution> queens_naive(int n);

/// Backtracking search; each answer lists rows most recent first.
Free<StateSig, Solution> queens_backtrack(int n);

/// As queens_backtrack with `update r` in place of get/put.
Free<ModifySig, Solution> queens_m(int n);

const std::vector<std::string>& pipeline_names();

/// Solutions in column order (first column first), in search order.
/// Throws std::invalid_argument for an unknown name or n < 1.
std::vector<Solution> run_pipeline(const std::string& name, int n);

struct TracedRun {
  std::vector<Solution> solutions;
  std::vector<StepRecord> steps;
};

/// Runs a fused machine pipeline ("fusedF" or "fusedTF") with a step trace.
/// A budget of 0 is unbounded; exceeding it throws StepBudgetExceeded.
TracedRun trace_pipeline(const std::string& name, int n, std::size_t budget = 0);

}  // namespace effsim::queens
