#include "effsim/queens.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "effsim/machines.hpp"
#include "effsim/semantics.hpp"
#include "effsim/translations.hpp"

namespace effsim::queens {

std::ostream& operator<<(std::ostream& os, const QueensState& s) {
  return os << "(" << s.column << "," << show_value(s.placed.to_vector()) << ")";
}

bool safe(Row q, int n, const std::vector<Row>& qs) {
  for (std::size_t i = 0; i < qs.size(); ++i) {
    const int d = n + static_cast<int>(i);
    if (q == qs[i] || q == qs[i] + d || q == qs[i] - d) return false;
  }
  return true;
}

bool valid(const std::vector<Row>& qs) {
  for (std::size_t i = 0; i < qs.size(); ++i) {
    if (!safe(qs[i], 1, std::vector<Row>(qs.begin() + static_cast<std::ptrdiff_t>(i) + 1, qs.end()))) return false;
  }
  return true;
}

std::vector<std::vector<Row>> permutations(std::vector<Row> xs) {
  std::vector<std::size_t> idx(xs.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<std::vector<Row>> out;
  do {
    std::vector<Row> p;
    p.reserve(xs.size());
    for (std::size_t i : idx) p.push_back(xs[i]);
    out.push_back(std::move(p));
  } while (std::next_permutation(idx.begin(), idx.end()));
  return out;
}

std::vector<Row> one_to(int n) {
  std::vector<Row> xs(static_cast<std::size_t>(std::max(n, 0)));
  std::iota(xs.begin(), xs.end(), 1);
  return xs;
}

Free<NondetSig, Solution> queens_naive(int n) {
  return and_then(choose<NondetSig>(permutations(one_to(n))), [](const Solution& p) {
    return valid(p) ? ret<NondetSig>(p) : fail<NondetSig, Solution>();
  });
}

namespace {

Free<StateSig, Solution> loop(int n) {
  using Sg = StateSig;
  return and_then(get<Sg>(), [n](const QueensState& s) -> Free<Sg, Solution> {
    if (s.column >= n) return ret<Sg>(s.placed.to_vector());
    return and_then(choose<Sg>(one_to(n)), [n, sol = s.placed.to_vector()](const Row& r) {
      return and_then(guard<Sg>(safe(r, 1, sol)), [n, r](Unit) {
        return and_then(get<Sg>(), [n, r](const QueensState& cur) {
          return then(put<Sg>(Undo<QueensState, int>::apply(cur, r)), loop(n));
        });
      });
    });
  });
}

Free<ModifySig, Solution> loop_m(int n) {
  using Sg = ModifySig;
  return and_then(mget<Sg>(), [n](const QueensState& s) -> Free<Sg, Solution> {
    if (s.column >= n) return ret<Sg>(s.placed.to_vector());
    return and_then(choose<Sg>(one_to(n)), [n, sol = s.placed.to_vector()](const Row& r) {
      return and_then(guard<Sg>(safe(r, 1, sol)), [n, r](Unit) { return then(update<Sg>(r), loop_m(n)); });
    });
  });
}

std::vector<Solution> column_order(std::vector<Solution> sols) {
  for (auto& s : sols) std::reverse(s.begin(), s.end());
  return sols;
}

}  // namespace

Free<StateSig, Solution> queens_backtrack(int n) { return loop(n); }

Free<ModifySig, Solution> queens_m(int n) { return loop_m(n); }

const std::vector<std::string>& pipeline_names() {
  static const std::vector<std::string> names{"naive",  "local",   "global",  "sim",  "fusedF",
                                              "localM", "globalM", "globalT", "simT", "fusedTF"};
  return names;
}

std::vector<Solution> run_pipeline(const std::string& name, int n) {
  if (n < 1) throw std::invalid_argument("board size must be at least 1");
  const QueensState s0{};
  if (name == "naive") return h_nd(queens_naive(n));
  if (name == "local") return column_order(h_nil(h_local(queens_backtrack(n), s0)));
  if (name == "global") return column_order(h_nil(h_global(local2global(queens_backtrack(n)), s0)));
  if (name == "sim") return column_order(h_nil(simulate(queens_backtrack(n), s0)));
  if (name == "fusedF") return column_order(h_nil(simulate_f(queens_backtrack(n), s0)));
  if (name == "localM") return column_order(h_nil(h_local_m(queens_m(n), s0)));
  if (name == "globalM") return column_order(h_nil(h_global_m(local2global_m(queens_m(n)), s0)));
  if (name == "globalT") return column_order(h_nil(h_global_t(queens_m(n), s0)));
  if (name == "simT") return column_order(h_nil(simulate_t(queens_m(n), s0)));
  if (name == "fusedTF") return column_order(h_nil(simulate_tf(queens_m(n), s0)));
  throw std::invalid_argument("unknown pipeline: " + name);
}

TracedRun trace_pipeline(const std::string& name, int n, std::size_t budget) {
  if (n < 1) throw std::invalid_argument("board size must be at least 1");
  auto trace = std::make_shared<StepTrace>(budget);
  const QueensState s0{};
  TracedRun out;
  if (name == "fusedF") {
    out.solutions = column_order(h_nil(simulate_f(queens_backtrack(n), s0, trace)));
  } else if (name == "fusedTF") {
    out.solutions = column_order(h_nil(simulate_tf(queens_m(n), s0, trace)));
  } else {
    throw std::invalid_argument("pipeline has no machine trace: " + name);
  }
  out.steps = trace->steps();
  return out;
}

}  // namespace effsim::queens
