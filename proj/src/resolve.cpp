#include <functional>
#include <set>

#include "lattc/syntax.hpp"

namespace lattc {

namespace {

Level resolve_level(const LevelExpr& l, const Lattice& lat) {
  try {
    if (l.alias) {
      auto a = lat.alias(*l.alias);
      if (!a) throw LevelError("UnknownExtension", "unknown level alias \"" + *l.alias + "\"", l.span);
      return *a;
    }
    return lat.canonicalize(std::span<const std::string>(l.ids));
  } catch (const LevelError& e) {
    if (e.span()) throw;
    throw LevelError(e.kind(), e.what(), l.span);
  }
}

class Resolver {
 public:
  Resolver(const Lattice& lat, std::function<bool(std::string_view)> is_global)
      : lat_(lat), is_global_(std::move(is_global)) {}

  TermPtr run(const ExprPtr& e, std::vector<std::string>& locals) {
    auto t = std::make_shared<Term>();
    t->kind = e->kind;
    t->span = e->span;
    if (e->level) t->level = resolve_level(*e->level, lat_);
    switch (e->kind) {
      case Kind::Name: {
        for (std::size_t i = locals.size(); i-- > 0;) {
          if (locals[i] == e->name) {
            t->kind = Kind::Var;
            t->index = static_cast<std::uint32_t>(locals.size() - 1 - i);
            t->name = e->name;
            return t;
          }
        }
        if (!is_global_(e->name)) throw Error("ScopeError", "unknown identifier \"" + e->name + "\"", e->span);
        t->kind = Kind::Global;
        t->name = e->name;
        return t;
      }
      case Kind::Universe:
        t->index = e->number;
        return t;
      case Kind::Gated:
        t->gated = e->gated;
        return t;
      default:
        break;
    }
    t->name = e->name;
    for (std::size_t i = 0; i < e->args.size(); ++i) {
      const unsigned n = binders_over(e->kind, i);
      for (unsigned k = 0; k < n; ++k) locals.push_back(e->name);
      t->args.push_back(run(e->args[i], locals));
      locals.resize(locals.size() - n);
    }
    return t;
  }

 private:
  const Lattice& lat_;
  std::function<bool(std::string_view)> is_global_;
};

}  // namespace

TermPtr resolve_expr(const ExprPtr& e, const Lattice& lat, const GlobalEnv& env,
                     const std::vector<std::string>& locals) {
  std::vector<std::string> scope = locals;
  return Resolver(lat, [&](std::string_view n) { return env.contains(n); }).run(e, scope);
}

std::vector<Declaration> resolve(const SurfaceModule& m, const Lattice& lat, const GlobalEnv& env) {
  std::set<std::string, std::less<>> seen;
  Resolver r(lat, [&](std::string_view n) { return env.contains(n) || seen.count(n) > 0; });
  std::vector<Declaration> out;
  for (const auto& sd : m.decls) {
    Declaration d;
    d.kind = sd.kind;
    d.name = sd.name;
    d.span = sd.span;
    if (sd.kind == DeclKind::Assertion) {
      if (!env.contains(sd.name) && seen.count(sd.name) == 0)
        throw Error("ScopeError", "assertion about unknown declaration \"" + sd.name + "\"", sd.span);
      d.asserted = resolve_level(sd.asserted, lat);
      out.push_back(std::move(d));
      continue;
    }
    if (env.contains(sd.name) || seen.count(sd.name) > 0)
      throw Error("ScopeError", "duplicate declaration \"" + sd.name + "\"", sd.span);
    if (sd.level) d.level = resolve_level(*sd.level, lat);
    std::vector<std::string> locals;
    d.type = r.run(sd.type, locals);
    if (sd.body) d.body = r.run(sd.body, locals);
    seen.insert(sd.name);
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace lattc
