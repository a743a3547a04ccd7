#pragma once

// Direct environment-passing evaluator, independent of trees and handlers.

#include <optional>
#include <vector>

#include "effsim/difftest/ast.hpp"

namespace effsim::difftest {

enum class OracleMode { local, global };

struct OracleOutcome {
  OracleMode mode = OracleMode::local;
  std::vector<int> answers;
  std::optional<int> final_state;  // global mode only

  friend bool operator==(const OracleOutcome&, const OracleOutcome&) = default;
};

/// MGetBind/Update act on the same integer state as GetBind/Put.
OracleOutcome oracle_eval(const Prog& p, int s0, OracleMode mode);

}  // namespace effsim::difftest
