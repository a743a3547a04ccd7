#pragma once

// First-order random programs over one integer state. Variables are
// de Bruijn levels: GetBind/MGetBind at scope depth d binds x<d>.

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace effsim::difftest {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Const, Var, Add, Sub };
  Kind kind = Kind::Const;
  int value = 0;  // constant, or variable level
  ExprPtr lhs;
  ExprPtr rhs;
};

struct Prog;
using ProgPtr = std::shared_ptr<const Prog>;

struct Prog {
  enum class Kind { Ret, Fail, Or, GetBind, Put, MGetBind, Update, Seq };
  Kind kind = Kind::Fail;
  ExprPtr expr;   // Ret, Put, Update
  ProgPtr first;  // Or left, Seq first, body of binders and Put/Update
  ProgPtr second; // Or right, Seq second
  int slot = 0;   // which state family for two-state targets (GetBind, Put)
};

/// A continuation `\x<level> -> body`, level = number of enclosing binders.
struct Kont {
  int level = 0;
  ProgPtr body;
};

using Env = std::vector<int>;

// Constructors.
ExprPtr lit(int c);
ExprPtr var(int level);
ExprPtr add(ExprPtr a, ExprPtr b);
ExprPtr sub(ExprPtr a, ExprPtr b);
ProgPtr p_ret(ExprPtr e);
ProgPtr p_fail();
ProgPtr p_or(ProgPtr l, ProgPtr r);
ProgPtr p_get(ProgPtr body, int slot = 0);
ProgPtr p_put(ExprPtr e, ProgPtr k, int slot = 0);
ProgPtr p_mget(ProgPtr body);
ProgPtr p_update(ExprPtr e, ProgPtr k);
ProgPtr p_seq(ProgPtr a, ProgPtr b);

int eval(const Expr& e, const Env& env);

std::string to_text(const Expr& e);
std::string to_text(const Prog& p);
std::string to_text(const Kont& k);

std::size_t node_count(const Prog& p);
std::size_t depth_of(const Prog& p);

/// Which constructs occur, indexed by Prog::Kind.
std::vector<bool> constructs_used(const Prog& p);

struct GenOptions {
  bool state = false;      // GetBind, Put
  bool modify = false;     // MGetBind, Update
  bool two_states = false; // random slot on GetBind/Put
};

using Rng = std::mt19937_64;

/// Deterministic in the rng state. Node count is at most 2^depth.
ProgPtr gen_program(Rng& rng, int depth, const GenOptions& opts, int scope = 0);
ProgPtr gen_program(std::uint64_t seed, int depth, const GenOptions& opts);
ExprPtr gen_expr(Rng& rng, int scope, int depth = 2);
Kont gen_kont(Rng& rng, int depth, const GenOptions& opts, int scope = 0);
int gen_small(Rng& rng, int lo = -3, int hi = 3);

}  // namespace effsim::difftest
