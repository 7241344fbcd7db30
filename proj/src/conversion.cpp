#include "lattc/conversion.hpp"

#include "lattc/syntax.hpp"

namespace lattc {

void Fuel::consume() {
  if (remaining_ == 0) throw TypeError(TypeErrorKind::FuelExhausted, "reduction fuel exhausted");
  --remaining_;
}

namespace {

Level level_or_base(const Term& t) { return t.level.value_or(Level{}); }

std::optional<TermPtr> iota(const GlobalEnv& env, const TermPtr& t, Fuel& fuel, ReductionSet rs) {
  const auto& a = t->args;
  TermPtr s = whnf(env, a[0], fuel, rs);
  const Level ls = level_or_base(*t);
  switch (t->kind) {
    case Kind::UnitRec:
      if (s->kind == Kind::Tt) return a[2];
      break;
    case Kind::BoolRec:
      if (s->kind == Kind::True) return a[2];
      if (s->kind == Kind::False) return a[3];
      break;
    case Kind::NatRec:
      if (s->kind == Kind::Zero) return a[2];
      if (s->kind == Kind::Succ) {
        auto rec = rebuild(*t, {s->args[0], a[1], a[2], a[3]});
        return mk::app(mk::app(a[3], ls, s->args[0]), Level{}, rec);
      }
      break;
    case Kind::ListRec:
      if (s->kind == Kind::Nil) return a[2];
      if (s->kind == Kind::Cons) {
        auto rec = rebuild(*t, {s->args[1], a[1], a[2], a[3]});
        return mk::app(mk::app(mk::app(a[3], ls, s->args[0]), ls, s->args[1]), Level{}, rec);
      }
      break;
    case Kind::SumRec:
      if (s->kind == Kind::Inl) return mk::app(a[2], ls, s->args[0]);
      if (s->kind == Kind::Inr) return mk::app(a[3], ls, s->args[0]);
      break;
    case Kind::SigRec:
      if (s->kind == Kind::Pair) return mk::app(mk::app(a[2], level_or_base(*s), s->args[0]), ls, s->args[1]);
      break;
    case Kind::J:
      if (s->kind == Kind::Refl) return a[2];
      break;
    default:
      break;
  }
  return std::nullopt;
}

// One head step, or nullopt when `t` is already in whnf.
std::optional<TermPtr> step(const GlobalEnv& env, const TermPtr& t, Fuel& fuel, ReductionSet rs, bool head_delta) {
  switch (t->kind) {
    case Kind::App: {
      const auto& fn = t->args[0];
      if (fn->kind == Kind::Lam) return subst(fn->args[0], t->args[1]);
      if (auto r = step(env, fn, fuel, rs, head_delta)) return mk::app(*r, t->level, t->args[1]);
      if (rs.gated_delta) {
        Spine sp = spine_of(t);
        if (sp.head->kind == Kind::Gated && sp.head->gated == Gated::K && sp.args.size() == 5) {
          if (whnf(env, sp.args[3].second, fuel, rs)->kind == Kind::Refl) return sp.args[4].second;
        }
      }
      return std::nullopt;
    }
    case Kind::Global: {
      if (!head_delta) return std::nullopt;
      const GlobalEntry* e = env.find(t->name);
      if (e == nullptr || !e->body) return std::nullopt;
      return e->body;
    }
    default:
      if (is_eliminator(t->kind)) return iota(env, t, fuel, rs);
      return std::nullopt;
  }
}

TermPtr whnf_with(const GlobalEnv& env, TermPtr t, Fuel& fuel, ReductionSet rs, bool head_delta) {
  while (auto r = step(env, t, fuel, rs, head_delta)) {
    fuel.consume();
    t = *r;
  }
  return t;
}

// Unfold the global at the head of an application spine, if it has a body.
std::optional<TermPtr> unfold_head(const GlobalEnv& env, const TermPtr& t) {
  Spine sp = spine_of(t);
  if (sp.head->kind != Kind::Global) return std::nullopt;
  const GlobalEntry* e = env.find(sp.head->name);
  if (e == nullptr || !e->body) return std::nullopt;
  return apply_spine(e->body, sp.args);
}

class Converter {
 public:
  Converter(const GlobalEnv& env, Fuel& fuel, ReductionSet rs) : env_(env), fuel_(fuel), rs_(rs) {}

  bool conv(Observer obs, TermPtr a, TermPtr b) {
    if (alpha_equal(a, b)) return true;
    a = whnf_with(env_, a, fuel_, rs_, false);
    b = whnf_with(env_, b, fuel_, rs_, false);
    for (;;) {
      if (shallow(obs, a, b)) return true;
      auto ua = rs_.delta_global ? unfold_head(env_, a) : std::nullopt;
      auto ub = rs_.delta_global ? unfold_head(env_, b) : std::nullopt;
      if (!ua && !ub) return false;
      fuel_.consume();
      if (ua) a = whnf_with(env_, *ua, fuel_, rs_, false);
      if (ub) b = whnf_with(env_, *ub, fuel_, rs_, false);
    }
  }

 private:
  // Compare at the argument's own level unless the observer cannot see it.
  bool conv_at(Observer obs, const std::optional<Level>& annotated, const TermPtr& a, const TermPtr& b) {
    const Level l = annotated.value_or(Level{});
    if (!obs) return conv(std::nullopt, a, b);
    if (obs->strictly_below(l)) return true;
    return conv(l, a, b);
  }

  bool shallow(Observer obs, const TermPtr& a, const TermPtr& b) {
    if (a->kind != b->kind) return false;
    switch (a->kind) {
      case Kind::Var:
      case Kind::Universe:
        return a->index == b->index;
      case Kind::Global:
        return a->name == b->name;
      case Kind::Gated:
        return a->gated == b->gated;
      case Kind::App: {
        Spine sa = spine_of(a), sb = spine_of(b);
        if (sa.args.size() != sb.args.size()) return false;
        if (!conv(obs, sa.head, sb.head)) return false;
        for (std::size_t i = 0; i < sa.args.size(); ++i) {
          if (sa.args[i].first.value_or(Level{}) != sb.args[i].first.value_or(Level{})) return false;
          if (!conv_at(obs, sa.args[i].first, sa.args[i].second, sb.args[i].second)) return false;
        }
        return true;
      }
      default:
        break;
    }
    if (a->level.value_or(Level{}) != b->level.value_or(Level{})) return false;
    if (a->args.size() != b->args.size()) return false;
    for (std::size_t i = 0; i < a->args.size(); ++i) {
      if (i == 0 && is_eliminator(a->kind)) {
        if (!conv_at(obs, a->level, a->args[0], b->args[0])) return false;
      } else if (!conv(obs, a->args[i], b->args[i])) {
        return false;
      }
    }
    return true;
  }

  const GlobalEnv& env_;
  Fuel& fuel_;
  ReductionSet rs_;
};

}  // namespace

TermPtr whnf(const GlobalEnv& env, const TermPtr& t, Fuel& fuel, ReductionSet rs) {
  return whnf_with(env, t, fuel, rs, rs.delta_global);
}

bool convert(const GlobalEnv& env, Observer obs, const TermPtr& a, const TermPtr& b, Fuel& fuel, ReductionSet rs) {
  return Converter(env, fuel, rs).conv(obs, a, b);
}

void check_refl(const GlobalEnv& env, const Lattice& lat, Level lo, const TermPtr& a, const TermPtr& b, Fuel& fuel,
                std::optional<SourceSpan> span) {
  if (convert(env, lo, a, b, fuel)) return;
  throw TypeError(TypeErrorKind::ConversionError,
                  "refl: sides are distinguishable at observer " + lat.format(lo) + ": " +
                      print_term(whnf(env, a, fuel), lat) + " vs " + print_term(whnf(env, b, fuel), lat),
                  span);
}

}  // namespace lattc
