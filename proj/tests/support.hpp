#pragma once

// Random trees for property tests, built from generated programs.

#include <cstdint>

#include "effsim/difftest/ast.hpp"
#include "effsim/difftest/lower.hpp"
#include "effsim/effect.hpp"

namespace testing {

using namespace effsim;
using namespace effsim::difftest;

inline const GenOptions kPureOpts{};
inline const GenOptions kStateOpts{true, false, false};
inline const GenOptions kModifyOpts{false, true, false};
inline const GenOptions kMixedOpts{true, true, false};

template <class Sg>
Free<Sg, int> random_tree(std::uint64_t seed, int depth, const GenOptions& opts) {
  return lower<Sg>(gen_program(seed, depth, opts));
}

/// Seeds for the i-th case of a property.
inline std::uint64_t case_seed(std::uint64_t base, int i) { return base * 1000003u + static_cast<std::uint64_t>(i); }

}  // namespace testing
