#include "effsim/difftest/ast.hpp"

#include <algorithm>

namespace effsim::difftest {

ExprPtr lit(int c) { return std::make_shared<const Expr>(Expr{Expr::Kind::Const, c, nullptr, nullptr}); }
ExprPtr var(int level) { return std::make_shared<const Expr>(Expr{Expr::Kind::Var, level, nullptr, nullptr}); }
ExprPtr add(ExprPtr a, ExprPtr b) {
  return std::make_shared<const Expr>(Expr{Expr::Kind::Add, 0, std::move(a), std::move(b)});
}
ExprPtr sub(ExprPtr a, ExprPtr b) {
  return std::make_shared<const Expr>(Expr{Expr::Kind::Sub, 0, std::move(a), std::move(b)});
}

namespace {
ProgPtr node(Prog::Kind k, ExprPtr e, ProgPtr a, ProgPtr b, int slot = 0) {
  return std::make_shared<const Prog>(Prog{k, std::move(e), std::move(a), std::move(b), slot});
}
}  // namespace

ProgPtr p_ret(ExprPtr e) { return node(Prog::Kind::Ret, std::move(e), nullptr, nullptr); }
ProgPtr p_fail() { return node(Prog::Kind::Fail, nullptr, nullptr, nullptr); }
ProgPtr p_or(ProgPtr l, ProgPtr r) { return node(Prog::Kind::Or, nullptr, std::move(l), std::move(r)); }
ProgPtr p_get(ProgPtr body, int slot) { return node(Prog::Kind::GetBind, nullptr, std::move(body), nullptr, slot); }
ProgPtr p_put(ExprPtr e, ProgPtr k, int slot) {
  return node(Prog::Kind::Put, std::move(e), std::move(k), nullptr, slot);
}
ProgPtr p_mget(ProgPtr body) { return node(Prog::Kind::MGetBind, nullptr, std::move(body), nullptr); }
ProgPtr p_update(ExprPtr e, ProgPtr k) { return node(Prog::Kind::Update, std::move(e), std::move(k), nullptr); }
ProgPtr p_seq(ProgPtr a, ProgPtr b) { return node(Prog::Kind::Seq, nullptr, std::move(a), std::move(b)); }

int eval(const Expr& e, const Env& env) {
  switch (e.kind) {
    case Expr::Kind::Const:
      return e.value;
    case Expr::Kind::Var:
      return env.at(static_cast<std::size_t>(e.value));
    case Expr::Kind::Add:
      return eval(*e.lhs, env) + eval(*e.rhs, env);
    case Expr::Kind::Sub:
      return eval(*e.lhs, env) - eval(*e.rhs, env);
  }
  return 0;
}

std::string to_text(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Const:
      return std::to_string(e.value);
    case Expr::Kind::Var:
      return "x" + std::to_string(e.value);
    case Expr::Kind::Add:
      return "(" + to_text(*e.lhs) + "+" + to_text(*e.rhs) + ")";
    case Expr::Kind::Sub:
      return "(" + to_text(*e.lhs) + "-" + to_text(*e.rhs) + ")";
  }
  return "?";
}

namespace {

std::string text_at(const Prog& p, int scope) {
  auto slot = [&] { return p.slot == 0 ? std::string() : "#" + std::to_string(p.slot); };
  switch (p.kind) {
    case Prog::Kind::Ret:
      return "ret " + to_text(*p.expr);
    case Prog::Kind::Fail:
      return "fail";
    case Prog::Kind::Or:
      return "(" + text_at(*p.first, scope) + " | " + text_at(*p.second, scope) + ")";
    case Prog::Kind::GetBind:
      return "get" + slot() + " x" + std::to_string(scope) + ". " + text_at(*p.first, scope + 1);
    case Prog::Kind::Put:
      return "put" + slot() + " " + to_text(*p.expr) + "; " + text_at(*p.first, scope);
    case Prog::Kind::MGetBind:
      return "mget x" + std::to_string(scope) + ". " + text_at(*p.first, scope + 1);
    case Prog::Kind::Update:
      return "update " + to_text(*p.expr) + "; " + text_at(*p.first, scope);
    case Prog::Kind::Seq:
      return "(" + text_at(*p.first, scope) + " >> " + text_at(*p.second, scope) + ")";
  }
  return "?";
}

}  // namespace

std::string to_text(const Prog& p) { return text_at(p, 0); }

std::string to_text(const Kont& k) {
  return "\\x" + std::to_string(k.level) + " -> " + text_at(*k.body, k.level + 1);
}

std::size_t node_count(const Prog& p) {
  std::size_t n = 1;
  if (p.first) n += node_count(*p.first);
  if (p.second) n += node_count(*p.second);
  return n;
}

std::size_t depth_of(const Prog& p) {
  std::size_t d = 0;
  if (p.first) d = std::max(d, 1 + depth_of(*p.first));
  if (p.second) d = std::max(d, 1 + depth_of(*p.second));
  return d;
}

std::vector<bool> constructs_used(const Prog& p) {
  std::vector<bool> used(8, false);
  auto go = [&](auto& self, const Prog& q) -> void {
    used[static_cast<std::size_t>(q.kind)] = true;
    if (q.first) self(self, *q.first);
    if (q.second) self(self, *q.second);
  };
  go(go, p);
  return used;
}

int gen_small(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

ExprPtr gen_expr(Rng& rng, int scope, int depth) {
  // weights: constant 2, variable 2 (when bound), + 1, - 1 (when depth allows)
  const int vars = scope > 0 ? 2 : 0;
  const int ops = depth > 0 ? 2 : 0;
  const int roll = gen_small(rng, 0, 2 + vars + ops - 1);
  if (roll < 2) return lit(gen_small(rng));
  if (roll < 2 + vars) return var(gen_small(rng, 0, scope - 1));
  ExprPtr a = gen_expr(rng, scope, depth - 1);
  ExprPtr b = gen_expr(rng, scope, depth - 1);
  return roll == 2 + vars ? add(std::move(a), std::move(b)) : sub(std::move(a), std::move(b));
}

namespace {

ProgPtr gen(Rng& rng, int depth, std::size_t budget, const GenOptions& opts, int scope) {
  if (depth <= 0 || budget < 2) {
    return gen_small(rng, 0, 4) == 0 ? p_fail() : p_ret(gen_expr(rng, scope));
  }
  struct Choice {
    Prog::Kind kind;
    int weight;
  };
  std::vector<Choice> menu{{Prog::Kind::Ret, 1}, {Prog::Kind::Fail, 1}};
  if (budget >= 3) {
    menu.push_back({Prog::Kind::Or, 3});
    menu.push_back({Prog::Kind::Seq, 2});
  }
  if (opts.state || opts.two_states) {
    menu.push_back({Prog::Kind::GetBind, 2});
    menu.push_back({Prog::Kind::Put, 3});
  }
  if (opts.modify) {
    menu.push_back({Prog::Kind::MGetBind, 2});
    menu.push_back({Prog::Kind::Update, 3});
  }
  int total = 0;
  for (const auto& c : menu) total += c.weight;
  int roll = gen_small(rng, 0, total - 1);
  Prog::Kind kind = menu.back().kind;
  for (const auto& c : menu) {
    if (roll < c.weight) {
      kind = c.kind;
      break;
    }
    roll -= c.weight;
  }
  auto slot = [&] { return opts.two_states ? gen_small(rng, 0, 1) : 0; };
  const std::size_t rest = budget - 1;
  switch (kind) {
    case Prog::Kind::Ret:
      return p_ret(gen_expr(rng, scope));
    case Prog::Kind::Fail:
      return p_fail();
    case Prog::Kind::Or:
    case Prog::Kind::Seq: {
      const std::size_t left = rest / 2;
      ProgPtr a = gen(rng, depth - 1, left, opts, scope);
      ProgPtr b = gen(rng, depth - 1, rest - left, opts, scope);
      return kind == Prog::Kind::Or ? p_or(std::move(a), std::move(b)) : p_seq(std::move(a), std::move(b));
    }
    case Prog::Kind::GetBind: {
      const int s = slot();
      return p_get(gen(rng, depth - 1, rest, opts, scope + 1), s);
    }
    case Prog::Kind::Put: {
      const int s = slot();
      ExprPtr e = gen_expr(rng, scope);
      return p_put(std::move(e), gen(rng, depth - 1, rest, opts, scope), s);
    }
    case Prog::Kind::MGetBind:
      return p_mget(gen(rng, depth - 1, rest, opts, scope + 1));
    case Prog::Kind::Update: {
      ExprPtr e = gen_expr(rng, scope);
      return p_update(std::move(e), gen(rng, depth - 1, rest, opts, scope));
    }
  }
  return p_fail();
}

}  // namespace

ProgPtr gen_program(Rng& rng, int depth, const GenOptions& opts, int scope) {
  const std::size_t budget = depth >= 62 ? SIZE_MAX : (std::size_t{1} << std::max(depth, 0));
  return gen(rng, depth, budget, opts, scope);
}

ProgPtr gen_program(std::uint64_t seed, int depth, const GenOptions& opts) {
  Rng rng(seed);
  return gen_program(rng, depth, opts);
}

Kont gen_kont(Rng& rng, int depth, const GenOptions& opts, int scope) {
  return Kont{scope, gen_program(rng, depth, opts, scope + 1)};
}

}  // namespace effsim::difftest
