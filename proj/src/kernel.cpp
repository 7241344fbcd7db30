#include "lattc/kernel.hpp"

#include <algorithm>

#include "lattc/report.hpp"

namespace lattc {

std::string_view type_error_name(TypeErrorKind k) {
  switch (k) {
    case TypeErrorKind::VarLevelError: return "VarLevelError";
    case TypeErrorKind::GateError: return "GateError";
    case TypeErrorKind::LevelJoinError: return "LevelJoinError";
    case TypeErrorKind::ConversionError: return "ConversionError";
    case TypeErrorKind::UniverseError: return "UniverseError";
    case TypeErrorKind::DestructorLevelError: return "DestructorLevelError";
    case TypeErrorKind::EqObserverError: return "EqObserverError";
    case TypeErrorKind::FuelExhausted: return "FuelExhausted";
    case TypeErrorKind::ScopeError: return "ScopeError";
  }
  return "TypeError";
}

std::vector<std::string> Context::names() const {
  std::vector<std::string> out;
  for (const auto& e : entries_) out.push_back(e.name);
  return out;
}

namespace {

const Level kBase{};

TermPtr v(std::uint32_t i) { return mk::var(i); }
TermPtr u0() { return mk::universe(0); }
TermPtr ap(TermPtr f, TermPtr a) { return mk::app(std::move(f), kBase, std::move(a)); }
TermPtr arrow(TermPtr dom, TermPtr cod) { return mk::pi("_", kBase, std::move(dom), std::move(cod)); }

}  // namespace

TermPtr equiv_type(Level l, const TermPtr& x, const TermPtr& y) {
  auto to = arrow(x, shift(y, 1));
  auto from = arrow(shift(y, 1), shift(x, 2));
  auto sect = mk::pi("x", kBase, shift(x, 2), mk::eq(l, shift(x, 3), ap(v(1), ap(v(2), v(0))), v(0)));
  auto retr = mk::pi("y", kBase, shift(y, 3), mk::eq(l, shift(y, 4), ap(v(3), ap(v(2), v(0))), v(0)));
  return mk::sigma("f", kBase, to, mk::sigma("g", kBase, from, mk::sigma("s", kBase, sect, retr)));
}

TermPtr gated_schema(Gated g, Level l) {
  switch (g) {
    case Gated::K: {
      // (A : Type 0) (a : A) (P : Eq A a a -> Type 0) (p : Eq A a a) -> P refl -> P p
      auto d = mk::pi("d", kBase, ap(v(1), mk::refl()), ap(v(2), v(1)));
      auto p = mk::pi("p", kBase, mk::eq(l, v(2), v(1), v(1)), d);
      auto P = mk::pi("P", kBase, arrow(mk::eq(l, v(1), v(0), v(0)), u0()), p);
      return mk::pi("A", kBase, u0(), mk::pi("a", kBase, v(0), P));
    }
    case Gated::Em:
      return mk::pi("A", kBase, u0(), mk::node(Kind::Sum, {v(0), arrow(v(0), mk::node(Kind::Void))}));
    case Gated::FunextAx: {
      auto fam = arrow(v(0), u0());
      auto f = mk::pi("x", kBase, v(1), ap(v(1), v(0)));
      auto gg = mk::pi("x", kBase, v(2), ap(v(2), v(0)));
      auto h = mk::pi("x", kBase, v(3), mk::eq(l, ap(v(3), v(0)), ap(v(2), v(0)), ap(v(1), v(0))));
      auto concl = mk::eq(l, mk::pi("x", kBase, v(4), ap(v(4), v(0))), v(2), v(1));
      return mk::pi("A", kBase, u0(),
                    mk::pi("B", kBase, fam,
                           mk::pi("f", kBase, f, mk::pi("g", kBase, gg, mk::pi("h", kBase, h, concl)))));
    }
    case Gated::UaAx:
      return mk::pi("A", kBase, u0(),
                    mk::pi("B", kBase, u0(),
                           mk::pi("e", kBase, equiv_type(l, v(1), v(0)), mk::eq(l, u0(), v(2), v(1)))));
  }
  return nullptr;
}

void Checker::require(const Judgement& j, Level need, TypeErrorKind kind, const std::string& what, SourceSpan span,
                      bool raisable) const {
  if (need.subset_of(j.obs) || j.mode == Mode::Type) return;
  std::string msg = what + " needs level " + lat_.format(need) + " but the observer is " + lat_.format(j.obs);
  std::optional<LevelDemand> demand;
  if (raisable) demand = LevelDemand{j.anchor, need.minus(j.obs), need, what};
  throw TypeError(kind, msg, span, demand);
}

void Checker::record(const Judgement& j, const std::string& name, bool gated) {
  const bool use = j.mode == Mode::Term && j.relevant;
  if (gated) {
    (use ? usage_.gated_uses : usage_.gated_mentions).insert(name);
  } else {
    (use ? usage_.global_uses : usage_.global_mentions).insert(name);
  }
}

TermPtr Checker::whnf_in(const Judgement& j, const TermPtr& t) {
  if (j.mode == Mode::Type) return whnf(env_, t, fuel_, ReductionSet{true, false});
  return whnf(env_, t, fuel_);
}

bool Checker::conv_in(const Judgement& j, const TermPtr& a, const TermPtr& b) {
  if (j.mode == Mode::Type) return convert(env_, std::nullopt, a, b, fuel_, ReductionSet{true, false});
  return convert(env_, j.obs, a, b, fuel_);
}

void Checker::mismatch(Context& ctx, const TermPtr& t, const TermPtr& got, const TermPtr& want) {
  const auto names = ctx.names();
  TermPtr g = whnf(env_, got, fuel_), w = whnf(env_, want, fuel_);
  if (g->kind == Kind::Universe && w->kind == Kind::Universe)
    throw TypeError(TypeErrorKind::UniverseError,
                    "universe mismatch: Type " + std::to_string(g->index) + " is not Type " + std::to_string(w->index),
                    t->span);
  throw TypeError(TypeErrorKind::ConversionError,
                  "type mismatch: expected " + print_term(want, lat_, names) + " but found " +
                      print_term(got, lat_, names),
                  t->span);
}

// Judgement for a subterm checked at join(obs, l): arguments, scrutinees, pair components.
Judgement Checker::raised(const Judgement& j, Level l, SourceSpan span) const {
  Judgement out = j;
  out.relevant = j.relevant && l.subset_of(j.obs);
  if (auto up = lat_.join(j.obs, l)) {
    out.obs = *up;
  } else if (j.mode == Mode::Term) {
    throw TypeError(TypeErrorKind::LevelJoinError,
                    "observer " + lat_.format(j.obs) + " cannot be joined with argument level " + lat_.format(l), span);
  }
  return out;
}

void Checker::gate_check(Gated g, const Judgement& j, SourceSpan span) {
  const std::string name(gated_name(g));
  auto home = lat_.home(name);
  if (!home) {
    if (j.mode == Mode::Type) return;
    throw TypeError(TypeErrorKind::GateError, name + " has no home level in this lattice", span);
  }
  if (home->subset_of(j.obs) || j.mode == Mode::Type) return;
  throw TypeError(TypeErrorKind::GateError,
                  name + " lives at " + lat_.format(*home) + ", not usable at observer " + lat_.format(j.obs), span,
                  LevelDemand{j.anchor, home->minus(j.obs), *home, name});
}

std::pair<TermPtr, std::uint32_t> Checker::universe_of(Context& ctx, const Judgement& j, const TermPtr& t) {
  auto [e, ty] = infer(ctx, j, t);
  TermPtr w = whnf_in(j, ty);
  if (w->kind != Kind::Universe)
    throw TypeError(TypeErrorKind::UniverseError,
                    "expected a type, but " + print_term(t, lat_, ctx.names()) + " has type " +
                        print_term(ty, lat_, ctx.names()),
                    t->span);
  return {e, w->index};
}

std::pair<TermPtr, std::uint32_t> Checker::wf_type(Context& ctx, const Judgement& j, const TermPtr& t) {
  Judgement tj = j;
  tj.mode = Mode::Type;
  return universe_of(ctx, tj, t);
}

namespace {

// Pops context entries pushed inside a scope, including on exceptions.
class Scope {
 public:
  explicit Scope(Context& ctx) : ctx_(ctx) {}
  Scope(Context& ctx, ContextEntry e) : ctx_(ctx) { push(std::move(e)); }
  ~Scope() {
    while (n_-- > 0) ctx_.pop();
  }
  Scope(const Scope&) = delete;
  Scope& operator=(const Scope&) = delete;
  void push(ContextEntry e) {
    ctx_.push(std::move(e));
    ++n_;
  }

 private:
  Context& ctx_;
  std::size_t n_ = 0;
};

TermPtr at(TermPtr t, SourceSpan span) {
  auto copy = std::make_shared<Term>(*t);
  copy->span = span;
  return copy;
}

TermPtr type0(Kind k) { return mk::node(k); }

}  // namespace

std::pair<TermPtr, TermPtr> Checker::infer(Context& ctx, const Judgement& j, const TermPtr& t) {
  const auto& a = t->args;
  switch (t->kind) {
    case Kind::Var: {
      if (t->index >= ctx.size()) throw TypeError(TypeErrorKind::ScopeError, "unbound variable", t->span);
      const auto& e = ctx.at(t->index);
      require(j, e.level, TypeErrorKind::VarLevelError, "variable " + e.name, t->span);
      return {t, ctx.type_of(t->index)};
    }
    case Kind::Global: {
      const GlobalEntry* g = env_.find(t->name);
      if (g == nullptr) throw TypeError(TypeErrorKind::ScopeError, "unknown global " + t->name, t->span);
      require(j, g->level, TypeErrorKind::VarLevelError, "global " + t->name, t->span);
      record(j, t->name, false);
      return {t, g->type};
    }
    case Kind::Gated: {
      gate_check(t->gated, j, t->span);
      const std::string name(gated_name(t->gated));
      record(j, name, true);
      Level l = j.obs;
      if (auto home = lat_.home(name); home && !home->subset_of(j.obs)) l = lat_.join(j.obs, *home).value_or(*home);
      return {t, gated_schema(t->gated, l)};
    }
    case Kind::Universe:
      return {t, mk::universe(t->index + 1)};
    case Kind::Pi:
    case Kind::Sigma: {
      const Level l = t->level.value_or(Level{});
      auto [dom, i] = universe_of(ctx, j, a[0]);
      Scope s(ctx, {t->name, l, dom});
      auto [cod, k] = universe_of(ctx, j, a[1]);
      auto out = std::make_shared<Term>(*rebuild(*t, {dom, cod}));
      out->level = l;
      return {out, mk::universe(std::max(i, k))};
    }
    case Kind::App: {
      auto [f, tf] = infer(ctx, j, a[0]);
      TermPtr w = whnf_in(j, tf);
      if (w->kind != Kind::Pi)
        throw TypeError(TypeErrorKind::ConversionError,
                        "not a function: " + print_term(a[0], lat_, ctx.names()) + " has type " +
                            print_term(tf, lat_, ctx.names()),
                        t->span);
      const Level dl = w->level.value_or(Level{});
      if (t->level && *t->level != dl)
        throw TypeError(TypeErrorKind::ConversionError,
                        "argument annotated ^" + print_level(*t->level, lat_) + " but the function expects ^" +
                            print_level(dl, lat_),
                        t->span);
      TermPtr arg = check(ctx, raised(j, dl, t->span), a[1], w->args[0]);
      return {at(mk::app(f, dl, arg), t->span), subst(w->args[1], arg)};
    }
    case Kind::Eq: {
      const Level lo = t->level.value_or(Level{});
      auto [A, i] = universe_of(ctx, j, a[0]);
      Judgement sj = j;
      sj.obs = lo;
      sj.anchor = -1;
      sj.relevant = j.relevant && lo.subset_of(j.obs);
      TermPtr lhs = check(ctx, sj, a[1], A);
      TermPtr rhs = check(ctx, sj, a[2], A);
      return {rebuild(*t, {A, lhs, rhs}), mk::universe(i)};
    }
    case Kind::J:
      return infer_j(ctx, j, t);
    case Kind::Absurd: {
      auto [A, i] = wf_type(ctx, j, a[1]);
      TermPtr b = check_absurd_scrutinee(ctx, j, a[0]);
      return {rebuild(*t, {b, A}), A};
    }
    case Kind::Void:
    case Kind::Unit:
    case Kind::Bool:
    case Kind::Nat:
      return {t, mk::universe(0)};
    case Kind::List: {
      auto [A, i] = universe_of(ctx, j, a[0]);
      return {rebuild(*t, {A}), mk::universe(i)};
    }
    case Kind::Sum: {
      auto [A, i] = universe_of(ctx, j, a[0]);
      auto [B, k] = universe_of(ctx, j, a[1]);
      return {rebuild(*t, {A, B}), mk::universe(std::max(i, k))};
    }
    case Kind::Tt:
      return {t, type0(Kind::Unit)};
    case Kind::True:
    case Kind::False:
      return {t, type0(Kind::Bool)};
    case Kind::Zero:
      return {t, type0(Kind::Nat)};
    case Kind::Succ:
      return {rebuild(*t, {check(ctx, j, a[0], type0(Kind::Nat))}), type0(Kind::Nat)};
    case Kind::Cons: {
      auto [x, A] = infer(ctx, j, a[0]);
      auto list = mk::node(Kind::List, {A});
      return {rebuild(*t, {x, check(ctx, j, a[1], list)}), list};
    }
    case Kind::UnitRec:
    case Kind::BoolRec:
    case Kind::NatRec:
    case Kind::ListRec:
    case Kind::SumRec:
    case Kind::SigRec:
      return infer_eliminator(ctx, j, t);
    case Kind::Name:
      throw TypeError(TypeErrorKind::ScopeError, "unresolved name " + t->name, t->span);
    default:
      throw TypeError(TypeErrorKind::ConversionError,
                      "cannot infer the type of " + print_term(t, lat_, ctx.names()) + "; it needs an expected type",
                      t->span);
  }
}

TermPtr Checker::check(Context& ctx, const Judgement& j, const TermPtr& t, const TermPtr& expected) {
  auto shape = [&](Kind want, const char* what) {
    TermPtr w = whnf_in(j, expected);
    if (w->kind != want)
      throw TypeError(TypeErrorKind::ConversionError,
                      std::string(what) + " checked against non-matching type " +
                          print_term(expected, lat_, ctx.names()),
                      t->span);
    return w;
  };
  auto same_level = [&](const TermPtr& w) {
    const Level l = w->level.value_or(Level{});
    if (t->level && *t->level != l)
      throw TypeError(TypeErrorKind::ConversionError,
                      "level ^" + print_level(*t->level, lat_) + " does not match the expected ^" +
                          print_level(l, lat_),
                      t->span);
    return l;
  };
  switch (t->kind) {
    case Kind::Lam: {
      TermPtr w = shape(Kind::Pi, "lambda");
      const Level l = same_level(w);
      Scope s(ctx, {t->name, l, w->args[0]});
      TermPtr body = check(ctx, j, t->args[0], w->args[1]);
      return at(mk::lam(t->name, l, body), t->span);
    }
    case Kind::Pair: {
      TermPtr w = shape(Kind::Sigma, "pair");
      const Level l = same_level(w);
      TermPtr fst = check(ctx, raised(j, l, t->span), t->args[0], w->args[0]);
      TermPtr snd = check(ctx, j, t->args[1], subst(w->args[1], fst));
      auto out = std::make_shared<Term>(*rebuild(*t, {fst, snd}));
      out->level = l;
      return out;
    }
    case Kind::Refl: {
      TermPtr w = shape(Kind::Eq, "refl");
      const Level lo = w->level.value_or(Level{});
      if (j.mode == Mode::Term) {
        check_refl(env_, lat_, lo, w->args[1], w->args[2], fuel_, t->span);
      } else if (!conv_in(j, w->args[1], w->args[2])) {
        throw TypeError(TypeErrorKind::ConversionError,
                        "refl: sides differ: " + print_term(w->args[1], lat_, ctx.names()) + " vs " +
                            print_term(w->args[2], lat_, ctx.names()),
                        t->span);
      }
      return t;
    }
    case Kind::Nil:
      shape(Kind::List, "nil");
      return t;
    case Kind::Inl:
    case Kind::Inr: {
      TermPtr w = shape(Kind::Sum, t->kind == Kind::Inl ? "inl" : "inr");
      return rebuild(*t, {check(ctx, j, t->args[0], w->args[t->kind == Kind::Inl ? 0 : 1])});
    }
    default:
      break;
  }
  auto [e, ty] = infer(ctx, j, t);
  if (!conv_in(j, ty, expected)) mismatch(ctx, t, ty, expected);
  return e;
}

Checker::Family Checker::check_family(Context& ctx, const Judgement& j, const TermPtr& p,
                                      const std::vector<TermPtr>& domains) {
  Judgement tj = j;
  tj.mode = Mode::Type;
  Family fam;
  std::vector<std::string> names;
  Scope scope(ctx);
  TermPtr cur = p;
  std::size_t k = 0;
  for (; k < domains.size() && cur->kind == Kind::Lam; ++k) {
    const Level l = cur->level.value_or(Level{});
    fam.levels.push_back(l);
    names.push_back(cur->name);
    scope.push({cur->name, l, domains[k]});
    cur = cur->args[0];
  }
  TermPtr body;
  if (k == domains.size()) {
    body = universe_of(ctx, tj, cur).first;
  } else {
    // Motive given as a function value: eta-expand the remaining arguments.
    auto [e, ty] = infer(ctx, tj, cur);
    TermPtr w = whnf_in(tj, ty);
    const std::size_t rest = domains.size() - k;
    for (std::size_t m = k; m < domains.size(); ++m) {
      if (w->kind != Kind::Pi || !conv_in(tj, w->args[0], domains[m]))
        throw TypeError(TypeErrorKind::ConversionError,
                        "motive does not accept the eliminated type: " + print_term(ty, lat_, ctx.names()),
                        p->span);
      const Level l = w->level.value_or(Level{});
      fam.levels.push_back(l);
      names.push_back("x");
      scope.push({"x", l, domains[m]});
      w = whnf_in(tj, w->args[1]);
    }
    if (w->kind != Kind::Universe)
      throw TypeError(TypeErrorKind::UniverseError, "motive does not produce a type", p->span);
    body = shift(e, static_cast<int>(rest));
    for (std::size_t m = k; m < domains.size(); ++m)
      body = mk::app(body, fam.levels[m], mk::var(static_cast<std::uint32_t>(domains.size() - 1 - m)));
  }
  for (std::size_t m = domains.size(); m-- > 0;) body = mk::lam(names[m], fam.levels[m], body);
  fam.motive = body;
  return fam;
}

TermPtr Checker::check_scrutinee(Context& ctx, const Judgement& j, const TermPtr& t, Level ls,
                                 const TermPtr& expected) {
  return check(ctx, raised(j, ls, t->span), t, expected);
}

std::pair<TermPtr, TermPtr> Checker::infer_scrutinee(Context& ctx, const Judgement& j, const TermPtr& t, Level ls) {
  return infer(ctx, raised(j, ls, t->span), t);
}

std::pair<TermPtr, TermPtr> Checker::infer_eliminator(Context& ctx, const Judgement& j, const TermPtr& t) {
  const auto& a = t->args;
  const Level ls = t->level.value_or(Level{});
  const Level base{};
  std::string what = t->kind == Kind::SigRec ? "sigrec" : print_term(mk::node(t->kind, {}), lat_);
  require(j, ls, TypeErrorKind::DestructorLevelError, "eliminating at " + print_level(ls, lat_) + " with " + what,
          t->span);

  TermPtr scrut, scrut_type;
  switch (t->kind) {
    case Kind::UnitRec: scrut_type = type0(Kind::Unit); break;
    case Kind::BoolRec: scrut_type = type0(Kind::Bool); break;
    case Kind::NatRec: scrut_type = type0(Kind::Nat); break;
    default: break;
  }
  if (scrut_type) {
    scrut = check_scrutinee(ctx, j, a[0], ls, scrut_type);
  } else {
    auto [s, ty] = infer_scrutinee(ctx, j, a[0], ls);
    scrut = s;
    scrut_type = whnf_in(j, ty);
    const Kind want = t->kind == Kind::ListRec ? Kind::List : t->kind == Kind::SumRec ? Kind::Sum : Kind::Sigma;
    if (scrut_type->kind != want)
      throw TypeError(TypeErrorKind::ConversionError,
                      what + " scrutinee has type " + print_term(ty, lat_, ctx.names()), a[0]->span);
  }

  Family fam = check_family(ctx, j, a[1], {scrut_type});
  const TermPtr& P = fam.motive;
  const Level lp = fam.levels[0];
  // Motive applied to `x`, with P shifted under `n` binders.
  auto motive = [&](int n, TermPtr x) { return mk::app(shift(P, n), lp, std::move(x)); };

  std::vector<TermPtr> out{scrut, P};
  switch (t->kind) {
    case Kind::UnitRec:
      out.push_back(check(ctx, j, a[2], motive(0, mk::node(Kind::Tt))));
      break;
    case Kind::BoolRec:
      out.push_back(check(ctx, j, a[2], motive(0, mk::node(Kind::True))));
      out.push_back(check(ctx, j, a[3], motive(0, mk::node(Kind::False))));
      break;
    case Kind::NatRec: {
      out.push_back(check(ctx, j, a[2], motive(0, mk::node(Kind::Zero))));
      auto step = mk::pi("k", ls, type0(Kind::Nat),
                         mk::pi("ih", base, motive(1, mk::var(0)), motive(2, mk::node(Kind::Succ, {mk::var(1)}))));
      out.push_back(check(ctx, j, a[3], step));
      break;
    }
    case Kind::ListRec: {
      const TermPtr& A = scrut_type->args[0];
      out.push_back(check(ctx, j, a[2], motive(0, mk::node(Kind::Nil))));
      auto step = mk::pi(
          "x", ls, A,
          mk::pi("xs", ls, mk::node(Kind::List, {shift(A, 1)}),
                 mk::pi("ih", base, motive(2, mk::var(0)),
                        motive(3, mk::node(Kind::Cons, {mk::var(2), mk::var(1)})))));
      out.push_back(check(ctx, j, a[3], step));
      break;
    }
    case Kind::SumRec: {
      out.push_back(check(ctx, j, a[2],
                          mk::pi("a", ls, scrut_type->args[0], motive(1, mk::node(Kind::Inl, {mk::var(0)})))));
      out.push_back(check(ctx, j, a[3],
                          mk::pi("b", ls, scrut_type->args[1], motive(1, mk::node(Kind::Inr, {mk::var(0)})))));
      break;
    }
    case Kind::SigRec: {
      const Level lx = scrut_type->level.value_or(Level{});
      auto pair = mk::node(Kind::Pair, {mk::var(1), mk::var(0)}, lx);
      auto step = mk::pi("x", lx, scrut_type->args[0], mk::pi("y", ls, scrut_type->args[1], motive(2, pair)));
      out.push_back(check(ctx, j, a[2], step));
      break;
    }
    default:
      break;
  }
  auto elab = std::make_shared<Term>(*rebuild(*t, std::move(out)));
  elab->level = ls;
  return {elab, motive(0, scrut)};
}

std::pair<TermPtr, TermPtr> Checker::infer_j(Context& ctx, const Judgement& j, const TermPtr& t) {
  const auto& a = t->args;
  const Level le = t->level.value_or(Level{});
  require(j, le, TypeErrorKind::EqObserverError, "J on an equality at " + print_level(le, lat_), t->span);
  auto [e, ty] = infer_scrutinee(ctx, j, a[0], le);
  TermPtr w = whnf_in(j, ty);
  if (w->kind != Kind::Eq)
    throw TypeError(TypeErrorKind::ConversionError,
                    "J scrutinee is not an equality: " + print_term(ty, lat_, ctx.names()), a[0]->span);
  const Level lo = w->level.value_or(Level{});
  if (j.mode == Mode::Term && !j.obs.subset_of(lo))
    throw TypeError(TypeErrorKind::EqObserverError,
                    "J at observer " + lat_.format(j.obs) + " cannot eliminate an equality observed at " +
                        lat_.format(lo),
                    t->span);
  const TermPtr& A = w->args[0];
  const TermPtr& lhs = w->args[1];
  const TermPtr& rhs = w->args[2];
  Family fam = check_family(ctx, j, a[1], {A, mk::eq(lo, shift(A, 1), shift(lhs, 1), mk::var(0))});
  auto motive = [&](TermPtr x, TermPtr p) {
    return mk::app(mk::app(fam.motive, fam.levels[0], std::move(x)), fam.levels[1], std::move(p));
  };
  TermPtr d = check(ctx, j, a[2], motive(lhs, mk::refl()));
  auto elab = std::make_shared<Term>(*rebuild(*t, {e, fam.motive, d}));
  elab->level = le;
  return {elab, motive(rhs, e)};
}

// The absurd scrutinee may live at any level: search upward from {} for one that checks.
TermPtr Checker::check_absurd_scrutinee(Context& ctx, const Judgement& j, const TermPtr& b) {
  const int anchor = new_anchor();
  Level lb{};
  for (;;) {
    const Usage saved = usage_;
    try {
      return check(ctx, Judgement{lb, j.mode, anchor, false}, b, type0(Kind::Void));
    } catch (const TypeError& e) {
      if (!e.demand() || e.demand()->anchor != anchor) throw;
      usage_ = saved;
      auto next = lat_.try_canonicalize(lb.unite(e.demand()->missing));
      if (!next)
        throw TypeError(TypeErrorKind::LevelJoinError,
                        "absurd scrutinee needs " + lat_.format(lb.unite(e.demand()->missing)) +
                            ", which is not a legal level",
                        b->span);
      lb = *next;
    }
  }
}

CheckedDecl check_at(const GlobalEnv& env, const Lattice& lat, const Declaration& d, Level l, int anchor,
                     std::uint64_t fuel) {
  Fuel f(fuel);
  Checker c(env, lat, f);
  c.set_next_anchor(std::max(anchor, 0) + 1);
  Context ctx;
  try {
    CheckedDecl out;
    out.type = c.wf_type(ctx, Judgement{l, Mode::Type, anchor, false}, d.type).first;
    if (d.body) out.body = c.check(ctx, Judgement{l, Mode::Term, anchor, true}, d.body, out.type);
    out.usage = c.usage();
    return out;
  } catch (const TypeError& e) {
    if (e.span()) throw;
    throw TypeError(e.type_kind(), e.what(), d.span, e.demand());
  }
}

void check_declaration(GlobalEnv& env, const Lattice& lat, const Declaration& d, std::uint64_t fuel) {
  if (d.kind == DeclKind::Assertion) return;
  const Level l = d.level.value_or(Level{});
  CheckedDecl c = check_at(env, lat, d, l, -1, fuel);
  GlobalEntry e;
  e.name = d.name;
  e.kind = d.kind;
  e.level = l;
  e.type = c.type;
  e.body = c.body;
  e.span = d.span;
  e.position = static_cast<std::uint32_t>(env.size());
  e.report = build_report(env, d.name, d.kind, l, c.usage);
  env.add(std::move(e));
}

}  // namespace lattc
