#include "lattc/term.hpp"

#include <algorithm>
#include <functional>

namespace lattc {

std::string_view gated_name(Gated g) {
  switch (g) {
    case Gated::K: return "K";
    case Gated::Em: return "em";
    case Gated::FunextAx: return "funext_ax";
    case Gated::UaAx: return "ua_ax";
  }
  return "?";
}

std::optional<Gated> gated_from_name(std::string_view name) {
  if (name == "K") return Gated::K;
  if (name == "em") return Gated::Em;
  if (name == "funext_ax") return Gated::FunextAx;
  if (name == "ua_ax") return Gated::UaAx;
  return std::nullopt;
}

bool is_eliminator(Kind k) {
  switch (k) {
    case Kind::UnitRec:
    case Kind::BoolRec:
    case Kind::NatRec:
    case Kind::ListRec:
    case Kind::SumRec:
    case Kind::SigRec:
    case Kind::J:
      return true;
    default:
      return false;
  }
}

unsigned binders_over(Kind k, std::size_t i) {
  switch (k) {
    case Kind::Pi:
    case Kind::Sigma:
      return i == 1 ? 1 : 0;
    case Kind::Lam:
      return 1;
    default:
      return 0;
  }
}

namespace mk {

TermPtr node(Kind k, std::vector<TermPtr> args, std::optional<Level> level, std::string name) {
  auto t = std::make_shared<Term>();
  t->kind = k;
  t->args = std::move(args);
  t->level = level;
  t->name = std::move(name);
  return t;
}

TermPtr var(std::uint32_t i, std::string name) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::Var;
  t->index = i;
  t->name = std::move(name);
  return t;
}

TermPtr global(std::string name) { return node(Kind::Global, {}, std::nullopt, std::move(name)); }

TermPtr universe(std::uint32_t i) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::Universe;
  t->index = i;
  return t;
}

TermPtr gated(Gated g) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::Gated;
  t->gated = g;
  return t;
}

TermPtr pi(std::string name, std::optional<Level> level, TermPtr dom, TermPtr cod) {
  return node(Kind::Pi, {std::move(dom), std::move(cod)}, level, std::move(name));
}
TermPtr lam(std::string name, std::optional<Level> level, TermPtr body) {
  return node(Kind::Lam, {std::move(body)}, level, std::move(name));
}
TermPtr sigma(std::string name, std::optional<Level> level, TermPtr dom, TermPtr cod) {
  return node(Kind::Sigma, {std::move(dom), std::move(cod)}, level, std::move(name));
}
TermPtr app(TermPtr fn, std::optional<Level> level, TermPtr arg) {
  return node(Kind::App, {std::move(fn), std::move(arg)}, level);
}
TermPtr eq(Level observer, TermPtr type, TermPtr lhs, TermPtr rhs) {
  return node(Kind::Eq, {std::move(type), std::move(lhs), std::move(rhs)}, observer);
}
TermPtr refl() { return node(Kind::Refl); }
TermPtr nat(unsigned n) {
  TermPtr t = node(Kind::Zero);
  for (unsigned i = 0; i < n; ++i) t = node(Kind::Succ, {t});
  return t;
}

}  // namespace mk

TermPtr rebuild(const Term& t, std::vector<TermPtr> args) {
  auto out = std::make_shared<Term>(t);
  out->args = std::move(args);
  return out;
}

TermPtr with_level(const Term& t, std::optional<Level> level) {
  auto out = std::make_shared<Term>(t);
  out->level = level;
  return out;
}

namespace {

// Generic bottom-up map over variables; `on_var(term, depth)` returns a replacement or null.
TermPtr map_vars(const TermPtr& t, std::uint32_t depth,
                 const std::function<TermPtr(const Term&, std::uint32_t)>& on_var) {
  if (t->kind == Kind::Var) {
    auto r = on_var(*t, depth);
    return r ? r : t;
  }
  if (t->args.empty()) return t;
  std::vector<TermPtr> args;
  args.reserve(t->args.size());
  bool changed = false;
  for (std::size_t i = 0; i < t->args.size(); ++i) {
    auto c = map_vars(t->args[i], depth + binders_over(t->kind, i), on_var);
    changed = changed || c != t->args[i];
    args.push_back(std::move(c));
  }
  return changed ? rebuild(*t, std::move(args)) : t;
}

}  // namespace

TermPtr shift(const TermPtr& t, int delta, std::uint32_t cutoff) {
  if (delta == 0) return t;
  return map_vars(t, cutoff, [delta](const Term& v, std::uint32_t depth) -> TermPtr {
    if (v.index < depth) return nullptr;
    auto out = std::make_shared<Term>(v);
    out->index = static_cast<std::uint32_t>(static_cast<int>(v.index) + delta);
    return out;
  });
}

TermPtr subst(const TermPtr& body, const TermPtr& value) {
  return map_vars(body, 0, [&value](const Term& v, std::uint32_t depth) -> TermPtr {
    if (v.index < depth) return nullptr;
    if (v.index == depth) return shift(value, static_cast<int>(depth));
    auto out = std::make_shared<Term>(v);
    out->index = v.index - 1;
    return out;
  });
}

bool occurs(const TermPtr& t, std::uint32_t index) {
  if (t->kind == Kind::Var) return t->index == index;
  for (std::size_t i = 0; i < t->args.size(); ++i)
    if (occurs(t->args[i], index + binders_over(t->kind, i))) return true;
  return false;
}

bool alpha_equal(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (a->kind != b->kind || a->level != b->level || a->args.size() != b->args.size()) return false;
  switch (a->kind) {
    case Kind::Var:
    case Kind::Universe:
      if (a->index != b->index) return false;
      break;
    case Kind::Global:
    case Kind::Name:
      if (a->name != b->name) return false;
      break;
    case Kind::Gated:
      if (a->gated != b->gated) return false;
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!alpha_equal(a->args[i], b->args[i])) return false;
  return true;
}

Spine spine_of(const TermPtr& t) {
  Spine s;
  TermPtr cur = t;
  while (cur->kind == Kind::App) {
    s.args.emplace_back(cur->level, cur->args[1]);
    cur = cur->args[0];
  }
  s.head = cur;
  std::reverse(s.args.begin(), s.args.end());
  return s;
}

TermPtr apply_spine(TermPtr head, const std::vector<std::pair<std::optional<Level>, TermPtr>>& args,
                    std::size_t from) {
  for (std::size_t i = from; i < args.size(); ++i) head = mk::app(head, args[i].first, args[i].second);
  return head;
}

}  // namespace lattc
