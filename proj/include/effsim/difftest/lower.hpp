#pragma once

// Lowering of generated programs to effect trees over an integer state.

#include <string>
#include <utility>

#include "effsim/difftest/ast.hpp"
#include "effsim/effect.hpp"

namespace effsim::difftest {

/// How MGetBind/Update are realized.
enum class ModifyEncoding {
  native,    // ModifyF operations
  as_state,  // get / put on the StateF family
};

namespace detail {

/// Index of the state family addressed by a slot; npos when absent.
template <class Sg, int Slot>
constexpr std::size_t slot_index() {
  constexpr std::size_t i0 = state_index_v<Sg>;
  if constexpr (Slot == 0 || i0 == npos) {
    return i0;
  } else if constexpr (i0 + 1 < Sg::size) {
    if constexpr (is_state_family<family_at_t<i0 + 1, Sg>>::value) return i0 + 1;
    return npos;
  } else {
    return npos;
  }
}

template <class Sg>
void check_families(const Prog& p, ModifyEncoding enc) {
  auto need = [&](bool ok, const char* what) {
    if (!ok) throw ShapeError(std::string("program uses ") + what + " but the target signature lacks it");
  };
  switch (p.kind) {
    case Prog::Kind::Ret:
      break;
    case Prog::Kind::Fail:
    case Prog::Kind::Or:
      need(nondet_index_v<Sg> != npos, "nondeterminism");
      break;
    case Prog::Kind::GetBind:
    case Prog::Kind::Put:
      need((p.slot == 0 ? slot_index<Sg, 0>() : slot_index<Sg, 1>()) != npos, "state");
      break;
    case Prog::Kind::MGetBind:
    case Prog::Kind::Update:
      need(enc == ModifyEncoding::native ? modify_index_v<Sg> != npos : state_index_v<Sg> != npos, "modify");
      break;
    case Prog::Kind::Seq:
      break;
  }
  if (p.first) check_families<Sg>(*p.first, enc);
  if (p.second) check_families<Sg>(*p.second, enc);
}

template <class Sg>
struct Lowerer {
  using T = Free<Sg, int>;
  ModifyEncoding enc;

  template <std::size_t I>
  T get_then(const ProgPtr& body, const Env& env) const {
    static_assert(std::is_same_v<typename family_at_t<I, Sg>::state_type, int>);
    return and_then(get<Sg, I>(), [self = *this, body, env](const int& x) {
      Env inner = env;
      inner.push_back(x);
      return self.go(body, inner);
    });
  }

  template <std::size_t I>
  T put_then(int v, const ProgPtr& k, const Env& env) const {
    return then(put<Sg, I>(v), go(k, env));
  }

  T state_op(const Prog& p, const Env& env) const {
    if constexpr (slot_index<Sg, 0>() != npos) {
      if (p.slot == 0) {
        if (p.kind == Prog::Kind::GetBind) return get_then<slot_index<Sg, 0>()>(p.first, env);
        return put_then<slot_index<Sg, 0>()>(eval(*p.expr, env), p.first, env);
      }
    }
    if constexpr (slot_index<Sg, 1>() != npos) {
      if (p.kind == Prog::Kind::GetBind) return get_then<slot_index<Sg, 1>()>(p.first, env);
      return put_then<slot_index<Sg, 1>()>(eval(*p.expr, env), p.first, env);
    }
    defect("state operation without a state family");
  }

  T modify_op(const Prog& p, const Env& env) const {
    if (enc == ModifyEncoding::as_state) {
      if constexpr (state_index_v<Sg> != npos) {
        constexpr std::size_t I = state_index_v<Sg>;
        if (p.kind == Prog::Kind::MGetBind) return get_then<I>(p.first, env);
        const int r = eval(*p.expr, env);
        return and_then(get<Sg, I>(), [self = *this, r, k = p.first, env](const int& s) {
          return then(put<Sg, I>(s + r), self.go(k, env));
        });
      }
    } else if constexpr (modify_index_v<Sg> != npos) {
      constexpr std::size_t I = modify_index_v<Sg>;
      if (p.kind == Prog::Kind::MGetBind) {
        return and_then(mget<Sg, I>(), [self = *this, body = p.first, env](const int& x) {
          Env inner = env;
          inner.push_back(x);
          return self.go(body, inner);
        });
      }
      return then(update<Sg, I>(eval(*p.expr, env)), go(p.first, env));
    }
    defect("modify operation without a target family");
  }

  T go(const ProgPtr& p, const Env& env) const {
    switch (p->kind) {
      case Prog::Kind::Ret:
        return T::leaf(eval(*p->expr, env));
      case Prog::Kind::Fail:
        if constexpr (nondet_index_v<Sg> != npos) return fail<Sg, int>();
        break;
      case Prog::Kind::Or:
        if constexpr (nondet_index_v<Sg> != npos) return alt(go(p->first, env), go(p->second, env));
        break;
      case Prog::Kind::GetBind:
      case Prog::Kind::Put:
        return state_op(*p, env);
      case Prog::Kind::MGetBind:
      case Prog::Kind::Update:
        return modify_op(*p, env);
      case Prog::Kind::Seq:
        return then(go(p->first, env), go(p->second, env));
    }
    defect("operation without a target family");
  }
};

}  // namespace detail

/// Throws ShapeError when the program uses a family the signature lacks.
template <class Sg>
Free<Sg, int> lower(const ProgPtr& p, const Env& env = {}, ModifyEncoding enc = ModifyEncoding::native) {
  detail::check_families<Sg>(*p, enc);
  return detail::Lowerer<Sg>{enc}.go(p, env);
}

/// `m >>= k` for a lowered continuation.
template <class Sg>
Free<Sg, int> lower_bind(const Free<Sg, int>& m, const Kont& k, const Env& env = {},
                         ModifyEncoding enc = ModifyEncoding::native) {
  detail::check_families<Sg>(*k.body, enc);
  return and_then(m, [body = k.body, env, enc](const int& x) {
    Env inner = env;
    inner.push_back(x);
    return detail::Lowerer<Sg>{enc}.go(body, inner);
  });
}

}  // namespace effsim::difftest
