#pragma once

#include "lattc/elaborate.hpp"
#include "support.hpp"

namespace lattc::testing {

/// A context built from surface strings, plus helpers to check terms in it.
struct Fixture {
  const Lattice& lat;
  GlobalEnv env;
  Context ctx;
  std::vector<std::string> names;

  explicit Fixture(const Lattice& l) : lat(l) {}

  TermPtr parse(const std::string& s) const {
    return resolve_expr(default_annotations(parse_expr(s)), lat, env, names);
  }

  Level level(const std::string& s) const {
    auto e = parse_expr("fun x^" + s + " => x");
    return *resolve_expr(e, lat, env, {})->level;
  }

  Fixture& bind(const std::string& name, const std::string& lvl, const std::string& type) {
    Fuel fuel;
    Checker c(env, lat, fuel);
    ctx.push({name, level(lvl), c.wf_type(ctx, Judgement{level(lvl), Mode::Type, -1, false}, parse(type)).first});
    names.push_back(name);
    return *this;
  }

  Fixture& define(const std::string& src) {
    for (const auto& d : resolve(default_annotations(parse_module(src)), lat, env)) elaborate_declaration(env, lat, d);
    return *this;
  }

  /// Empty string on success, otherwise the error kind.
  std::string check(const std::string& lvl, const std::string& t, const std::string& type, Mode mode = Mode::Term) {
    try {
      Fuel fuel;
      Checker c(env, lat, fuel);
      // Types are elaborated first, as for declarations.
      auto ty = c.wf_type(ctx, Judgement{level(lvl), Mode::Type, -1, false}, parse(type)).first;
      c.check(ctx, Judgement{level(lvl), mode, -1, mode == Mode::Term}, parse(t), ty);
      return "";
    } catch (const Error& e) {
      return e.kind();
    }
  }

  bool convert(const std::string& lvl, const std::string& a, const std::string& b) {
    Fuel fuel;
    return lattc::convert(env, level(lvl), parse(a), parse(b), fuel);
  }
};

}  // namespace lattc::testing
