#include "lattc/elaborate.hpp"

namespace lattc {

namespace {

bool defaults_to_base(Kind k) {
  switch (k) {
    case Kind::Lam:
    case Kind::Pi:
    case Kind::Sigma:
    case Kind::J:
      return true;
    default:
      return is_eliminator(k);
  }
}

ExprPtr annotate(const ExprPtr& e) {
  if (!e) return e;
  auto out = std::make_shared<Expr>(*e);
  if (!out->level && defaults_to_base(out->kind)) out->level = LevelExpr{{}, std::nullopt, e->span};
  for (auto& a : out->args) a = annotate(a);
  return out;
}

}  // namespace

SurfaceDecl default_annotations(const SurfaceDecl& d) {
  SurfaceDecl out = d;
  out.type = annotate(d.type);
  out.body = annotate(d.body);
  return out;
}

ExprPtr default_annotations(const ExprPtr& e) { return annotate(e); }

SurfaceModule default_annotations(const SurfaceModule& m) {
  SurfaceModule out;
  for (const auto& d : m.decls) out.decls.push_back(default_annotations(d));
  return out;
}

Level infer_level(const GlobalEnv& env, const Lattice& lat, const Declaration& d, std::uint64_t fuel) {
  constexpr int kAnchor = 0;
  Level l{};
  std::string why;
  for (;;) {
    try {
      check_at(env, lat, d, l, kAnchor, fuel);
      return l;
    } catch (const TypeError& e) {
      if (!e.demand() || e.demand()->anchor != kAnchor) throw;
      const LevelDemand& dm = *e.demand();
      why += (why.empty() ? "" : "; ") + dm.contributor + " needs " + lat.format(dm.required);
      const Level raw = l.unite(dm.missing);
      auto next = lat.try_canonicalize(raw);
      if (!next) {
        std::string clash;
        if (auto c = lat.conflict(lat.closure(raw))) clash = " ({" + c->first + "," + c->second + "} are incompatible)";
        throw TypeError(TypeErrorKind::LevelJoinError,
                        d.name + " has no legal level" + clash + ": " + why, e.span());
      }
      l = *next;
    }
  }
}

Level elaborate_declaration(GlobalEnv& env, const Lattice& lat, const Declaration& d, std::uint64_t fuel) {
  if (d.kind == DeclKind::Assertion) return Level{};
  Declaration fixed = d;
  if (!fixed.level) fixed.level = infer_level(env, lat, d, fuel);
  check_declaration(env, lat, fixed, fuel);
  return *fixed.level;
}

}  // namespace lattc
