#pragma once

#include <optional>
#include <random>
#include <string>

#include "effsim/difftest/ast.hpp"
#include "effsim/difftest/checks.hpp"
#include "effsim/difftest/lower.hpp"
#include "effsim/difftest/oracle.hpp"
#include "effsim/effect.hpp"
#include "effsim/machines.hpp"
#include "effsim/semantics.hpp"
#include "effsim/translations.hpp"

namespace effsim::difftest {

/// Restore defined as a second update.
struct FlippedUndo {
  static int apply(int s, int r) { return s + r; }
  static int revert(int s, int r) { return s + r; }
};

using NSig = Sig<NondetF>;
using StateSig = Sig<StateF<int>, NondetF, NilF>;
using ModifySig = Sig<ModifyF<int, int>, NondetF, NilF>;
using FlippedSig = Sig<ModifyF<int, int, FlippedUndo>, NondetF, NilF>;
using NondetStateSig = Sig<NondetF, StateF<int>, NilF>;
using TwoStateSig = Sig<StateF<int>, StateF<int>, NondetF, NilF>;

inline const GenOptions kPure{};
inline const GenOptions kState{true, false, false};
inline const GenOptions kModify{false, true, false};
inline const GenOptions kTwoStates{false, false, true};

template <class L, class R>
std::optional<Failure> compare(const std::string& text, const L& lhs, const R& rhs) {
  if (lhs == rhs) return std::nullopt;
  Failure f;
  f.ast_text = text;
  f.lhs = show_value(lhs);
  f.rhs = show_value(rhs);
  return f;
}

inline Fault fault_of(Mutation m) {
  switch (m) {
    case Mutation::skip_put_restore:
      return Fault::skip_put_restore;
    case Mutation::untrailed_branch:
      return Fault::untrailed_branch;
    default:
      return Fault::none;
  }
}

/// Calls `f.template operator()<Sg>()` with the modify signature the mutation selects.
template <class Fn>
auto with_modify_sig(Mutation m, Fn&& f) {
  if (m == Mutation::minus_as_plus) return f.template operator()<FlippedSig>();
  return f.template operator()<ModifySig>();
}

}  // namespace effsim::difftest
