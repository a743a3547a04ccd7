#include <stdexcept>

#include "common.hpp"

namespace effsim::difftest {

const std::vector<std::string>& lemma_ids() {
  static const std::vector<std::string> ids{"state-restored", "modify-restored", "pop-extract", "stack-eval",
                                            "dist-bind",      "trail-tracks",    "untrail-undos",
                                            "state-stack-restored"};
  return ids;
}

namespace {

using CS = ChoiceState<Sig<>, int>;
using Comp = comp_of<CS>;
using Trail = TrailStack<int>;
using Entry = TrailEntry<int>;
using TrailSig = Sig<ModifyF<int, int>, NondetF, StateF<Trail>, NilF>;

// ---------------------------------------------------------------------------
// Choicepoint machine

struct Machine {
  std::vector<int> results;
  std::size_t stack = 0;
  friend bool operator==(const Machine&, const Machine&) = default;
};

std::string show_machine(const Machine& m) {
  return "(" + show_value(m.results) + ", stack " + std::to_string(m.stack) + ")";
}

Machine run_cs(const Comp& p, const CS& st) {
  CS out = h_state_closed(p)(st).second;
  return {out.results.to_vector(), out.stack.size()};
}

struct MachineDraw {
  std::string text;
  Comp p;
  CS st;
};

// A machine tree from a random program, plus a random result list and
// choicepoint stack built from further programs.
MachineDraw draw_machine(Rng& rng, int d) {
  ProgPtr src = gen_program(rng, d, kPure);
  std::string text = "p=" + to_text(*src);
  std::vector<int> xs(static_cast<std::size_t>(gen_small(rng, 0, 3)));
  for (int& x : xs) x = gen_small(rng);
  PList<Comp> stack;
  const int depth = gen_small(rng, 0, 2);
  for (int i = 0; i < depth; ++i) {
    ProgPtr q = gen_program(rng, d / 2, kPure);
    text += " stack" + std::to_string(i) + "=" + to_text(*q);
    stack = stack.push(nondet2state_s(lower<NSig>(q)));
  }
  text += " xs=" + show_value(xs);
  return {text, nondet2state_s(lower<NSig>(src)), CS{SnocList<int>::from_vector(xs), stack}};
}

std::optional<Failure> compare_machines(const std::string& text, const Machine& a, const Machine& b) {
  if (a == b) return std::nullopt;
  Failure f;
  f.ast_text = text;
  f.lhs = show_machine(a);
  f.rhs = show_machine(b);
  return f;
}

std::optional<Failure> pop_extract(std::uint64_t ts, int d) {
  Rng rng(ts);
  auto [text, p, st] = draw_machine(rng, d);
  const Machine lhs = run_cs(p, st);
  const ResultList<int> extracted = extract_s<int>(h_state_closed(p));
  const SnocList<int> xs = SnocList<int>::from_vector(concat(st.results.to_vector(), extracted));
  return compare_machines(text, lhs, run_cs(pop_ss<CS>(), CS{xs, st.stack}));
}

std::optional<Failure> stack_eval(std::uint64_t ts, int d) {
  Rng rng(ts);
  auto [text, p, st] = draw_machine(rng, d);
  ProgPtr qsrc = gen_program(rng, d, kPure);
  Comp q = nondet2state_s(lower<NSig>(qsrc));
  const std::string qt = " q=" + to_text(*qsrc);
  const int x = gen_small(rng);
  const SnocList<int> xs = st.results;

  if (auto f = compare_machines("append x=" + std::to_string(x) + " " + text, run_cs(append_ss<CS>(x, p), st),
                                run_cs(p, CS{xs.append(x), st.stack}))) {
    return f;
  }
  if (auto f = compare_machines("pop1 " + text, run_cs(pop_ss<CS>(), CS{xs, {}}),
                                Machine{xs.to_vector(), 0})) {
    return f;
  }
  if (auto f = compare_machines("pop2 " + text + qt, run_cs(pop_ss<CS>(), CS{xs, st.stack.push(q)}),
                                run_cs(q, st))) {
    return f;
  }
  return compare_machines("push " + text + qt, run_cs(push_ss<CS>(q, p), st), run_cs(p, CS{xs, st.stack.push(q)}));
}

// ---------------------------------------------------------------------------
// Restoration and distributivity

std::optional<Failure> state_restored(std::uint64_t ts, int d) {
  Rng rng(ts);
  ProgPtr p = gen_program(rng, d, kState);
  const int s = gen_small(rng);
  auto out = h_nil(h_state1(h_ndf(swap_families(local2global(lower<StateSig>(p)))), s));
  return compare(to_text(*p) + " s=" + std::to_string(s), out.second, s);
}

std::optional<Failure> modify_restored(std::uint64_t ts, int d) {
  Rng rng(ts);
  ProgPtr p = gen_program(rng, d, kModify);
  const int s = gen_small(rng);
  auto out = h_nil(h_modify1(h_ndf(swap_families(local2global_m(lower<ModifySig>(p)))), s));
  return compare(to_text(*p) + " s=" + std::to_string(s), out.second, s);
}

std::optional<Failure> dist_bind(std::uint64_t ts, int d) {
  Rng rng(ts);
  ProgPtr p = gen_program(rng, d, kState);
  Kont k = gen_kont(rng, d, kState);
  ProgPtr pm = gen_program(rng, d, kModify);
  Kont km = gen_kont(rng, d, kModify);
  const int s = gen_small(rng);
  {
    using Sg = StateSig;
    auto t = lower<Sg>(p);
    auto lhs = h_state1(lower_bind<Sg>(t, k), s);
    auto rhs = and_then(h_state1(t, s), [k](const std::pair<int, int>& xs) {
      return h_state1(lower<Sg>(k.body, Env{xs.first}), xs.second);
    });
    if (auto f = compare("state: " + to_text(*p) + " >>= " + to_text(k), h_nil(h_ndf(lhs)), h_nil(h_ndf(rhs)))) {
      return f;
    }
  }
  using Sg = ModifySig;
  auto t = lower<Sg>(pm);
  auto lhs = h_modify1(lower_bind<Sg>(t, km), s);
  auto rhs = and_then(h_modify1(t, s), [km](const std::pair<int, int>& xs) {
    return h_modify1(lower<Sg>(km.body, Env{xs.first}), xs.second);
  });
  return compare("modify: " + to_text(*pm) + " >>= " + to_text(km), h_nil(h_ndf(lhs)), h_nil(h_ndf(rhs)));
}

// ---------------------------------------------------------------------------
// Trail

template <class A>
auto run_trail(const Free<TrailSig, A>& p, int s, const Trail& t) {
  return h_nil(h_state1(h_modify1(h_ndf(swap_families(p)), s), t));
}

std::string show_trail(const Trail& t) {
  std::string out = "[";
  bool first = true;
  for (const Entry& e : t.entries.to_vector()) {
    if (!first) out += ",";
    first = false;
    out += std::holds_alternative<Marker>(e) ? std::string("M") : std::to_string(std::get<0>(e));
  }
  return out + "]";
}

Trail random_trail(Rng& rng) {
  PList<Entry> entries;
  const int n = gen_small(rng, 0, 4);
  for (int i = 0; i < n; ++i) {
    entries = gen_small(rng, 0, 3) == 0 ? entries.push(Entry{Marker{}})
                                        : entries.push(Entry{std::in_place_index<0>, gen_small(rng)});
  }
  return {entries};
}

Trail extend(const Trail& t, const std::vector<Entry>& ys) {
  PList<Entry> out = t.entries;
  for (auto it = ys.rbegin(); it != ys.rend(); ++it) out = out.push(*it);
  return {out};
}

std::optional<Failure> trail_tracks(std::uint64_t ts, int d) {
  Rng rng(ts);
  ProgPtr p = gen_program(rng, d, kModify);
  const int s = gen_small(rng);
  const Trail t = random_trail(rng);
  const std::string text = to_text(*p) + " s=" + std::to_string(s) + " t=" + show_trail(t);
  auto tr = local2trail(lower<ModifySig>(p));
  auto base = run_trail(tr, s, Trail{});
  auto with_t = run_trail(tr, s, t);

  const std::vector<Entry> ys = base.second.entries.to_vector();
  int expected = s;
  for (auto it = ys.rbegin(); it != ys.rend(); ++it) {
    if (std::holds_alternative<Marker>(*it)) {
      Failure f;
      f.ast_text = text;
      f.lhs = "residual trail " + show_trail(base.second);
      f.rhs = "only deltas";
      return f;
    }
    expected = Undo<int, int>::apply(expected, std::get<0>(*it));
  }
  if (auto f = compare("results: " + text, with_t.first.first, base.first.first)) return f;
  if (auto f = compare("state: " + text, with_t.first.second, expected)) return f;
  if (with_t.second == extend(t, ys)) return std::nullopt;
  Failure f;
  f.ast_text = "trail: " + text;
  f.lhs = show_trail(with_t.second);
  f.rhs = show_trail(extend(t, ys));
  return f;
}

std::optional<Failure> untrail_undoes(std::uint64_t ts, int) {
  Rng rng(ts);
  const int s = gen_small(rng);
  const Trail rest = random_trail(rng);
  std::vector<int> rs(static_cast<std::size_t>(gen_small(rng, 0, 5)));
  for (int& r : rs) r = gen_small(rng);
  std::vector<Entry> ys;
  for (int r : rs) ys.push_back(Entry{std::in_place_index<0>, r});
  ys.push_back(Entry{Marker{}});
  const Trail t = extend(rest, ys);
  int expected = s;
  for (int r : rs) expected = Undo<int, int>::revert(expected, r);

  const std::string text = "s=" + std::to_string(s) + " t=" + show_trail(t);
  auto out = run_trail(untrail<TrailSig, int>(), s, t);
  if (auto f = compare("answers: " + text, out.first.first.size(), std::size_t{1})) return f;
  if (auto f = compare("state: " + text, out.first.second, expected)) return f;
  if (out.second == rest) return std::nullopt;
  Failure f;
  f.ast_text = "trail: " + text;
  f.lhs = show_trail(out.second);
  f.rhs = show_trail(rest);
  return f;
}

std::optional<Failure> state_stack_restored(std::uint64_t ts, int d) {
  Rng rng(ts);
  ProgPtr p = gen_program(rng, d, kModify);
  const int s = gen_small(rng);
  const Trail t = random_trail(rng);
  const std::string text = to_text(*p) + " s=" + std::to_string(s) + " t=" + show_trail(t);
  auto tr = local2trail(lower<ModifySig>(p));

  auto r1 = run_trail(push_stack<TrailSig, 2, int>(Entry{Marker{}}), s, t);
  auto r2 = run_trail(tr, r1.first.second, r1.second);
  auto r3 = run_trail(untrail<TrailSig, int>(), r2.first.second, r2.second);
  auto base = run_trail(tr, s, Trail{});

  if (auto f = compare("results: " + text, r2.first.first, base.first.first)) return f;
  if (auto f = compare("state: " + text, r3.first.second, s)) return f;
  if (r3.second == t) return std::nullopt;
  Failure f;
  f.ast_text = "trail: " + text;
  f.lhs = show_trail(r3.second);
  f.rhs = show_trail(t);
  return f;
}

}  // namespace

Report check_lemma(const std::string& id, int trials, std::uint64_t seed, int depth) {
  TrialFn fn;
  if (id == "state-restored") fn = state_restored;
  if (id == "modify-restored") fn = modify_restored;
  if (id == "pop-extract") fn = pop_extract;
  if (id == "stack-eval") fn = stack_eval;
  if (id == "dist-bind") fn = dist_bind;
  if (id == "trail-tracks") fn = trail_tracks;
  if (id == "untrail-undos") fn = untrail_undoes;
  if (id == "state-stack-restored") fn = state_stack_restored;
  if (!fn) throw std::invalid_argument("unknown lemma: " + id);
  return run_trials("lemma/" + id, trials, seed, depth, fn);
}

}  // namespace effsim::difftest
