#include "doctest.h"
#include "lattc/elaborate.hpp"
#include "lattc/report.hpp"
#include "support.hpp"

using namespace lattc;
using namespace lattc::testing;

namespace {

std::vector<Declaration> load(const std::string& src, const Lattice& lat, const GlobalEnv& env) {
  return resolve(default_annotations(parse_module(src)), lat, env);
}

// Level of a single declaration, or the error kind.
std::string inferred(const std::string& src, const Lattice& lat = std_lattice()) {
  GlobalEnv env;
  try {
    auto ds = load(src, lat, env);
    Level l{};
    for (const auto& d : ds) l = elaborate_declaration(env, lat, d);
    return lat.format(l);
  } catch (const Error& e) {
    return e.kind();
  }
}

}  // namespace

TEST_CASE("default annotations fill binders and scrutinees with bottom") {
  const Lattice& lat = std_lattice();
  auto t = resolve_expr(default_annotations(parse_expr("fun x y^{uip} => x")), lat, {}, {});
  REQUIRE(t->kind == Kind::Lam);
  CHECK(*t->level == Level{});
  CHECK(*t->args[0]->level == lvl(lat, {"uip"}));

  auto pi = resolve_expr(default_annotations(parse_expr("(x : Nat) -> Nat")), lat, {}, {});
  CHECK(*pi->level == Level{});
  auto rec = resolve_expr(default_annotations(parse_expr("natrec 0 (fun _ => Nat) 0 (fun k ih => ih)")), lat, {}, {});
  CHECK(*rec->level == Level{});

  // The declaration level stays open.
  auto m = default_annotations(parse_module("def id : (A : Type 0) -> A -> A := fun A x => x"));
  CHECK_FALSE(resolve(m, lat, {})[0].level.has_value());
}

TEST_CASE("least levels") {
  CHECK(inferred("def id : (A : Type 0) -> A -> A := fun A x => x") == "{}");
  CHECK(inferred("def dec : (A : Type 0) -> Sum A (A -> Void) := fun A => em A") == "{cl}");
  CHECK(inferred("def fe : (B : Nat -> Type 0) -> (f : (x : Nat) -> B x) -> (g : (x : Nat) -> B x) -> "
                 "((x : Nat) -> Eq^{funext} (B x) (f x) (g x)) -> Eq^{funext} ((x : Nat) -> B x) f g := "
                 "funext_ax Nat") == "{funext}");
  // A type mentioning em is still checkable at bottom.
  CHECK(inferred("def r : (A : Type 0) -> Eq^{cl} (Sum A (A -> Void)) (em A) (em A) := fun A => refl") == "{}");
  // Explicit levels are kept, not inferred.
  CHECK(inferred("def id :^{uip} (A : Type 0) -> A -> A := fun A x => x") == "{uip}");
}

TEST_CASE("inference reports incompatible requirements") {
  const std::string src = slurp(corpus_path("uip_plus_ua.ltc"));
  CHECK(inferred(src) == "LevelJoinError");
  try {
    GlobalEnv env;
    for (const auto& d : load(src, std_lattice(), env)) elaborate_declaration(env, std_lattice(), d);
  } catch (const Error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("K") != std::string::npos);
    CHECK(msg.find("ua") != std::string::npos);
  }
}

TEST_CASE("inferred level is the least one that checks") {
  const Lattice& lat = std_lattice();
  for (const auto& f : positive_corpus()) {
    if (f.chain) continue;
    GlobalEnv env;
    for (const auto& d : load(slurp(corpus_path(f.rel)), lat, env)) {
      if (d.kind == DeclKind::Assertion) continue;
      if (d.level) {
        check_declaration(env, lat, d);
        continue;
      }
      const Level least = infer_level(env, lat, d);
      for (Level l : lat.legal_levels()) {
        bool ok = true;
        try {
          check_at(env, lat, d, l, -1);
        } catch (const Error&) {
          ok = false;
        }
        // J keeps observers at or below the equality's level, so success is not upward closed.
        if (l == least) CHECK_MESSAGE(ok, d.name);
        if (ok) CHECK_MESSAGE(least.subset_of(l), d.name << " at " << lat.format(l));
      }
      Declaration fixed = d;
      fixed.level = least;
      check_declaration(env, lat, fixed);
    }
  }
}

TEST_CASE("assertions") {
  const Lattice& lat = std_lattice();
  GlobalEnv env;
  auto ds = load(
      "def dec : (A : Type 0) -> Sum A (A -> Void) := fun A => em A\n"
      "def id : (A : Type 0) -> A -> A := fun A x => x\n"
      "assert_level dec <= {cl,uip}\n"
      "assert_level dec <= {uip}\n"
      "assert_level id <= {}\n",
      lat, env);
  for (std::size_t i = 0; i < 2; ++i) elaborate_declaration(env, lat, ds[i]);
  auto a = check_assertion(env, lat, ds[2]);
  CHECK(a.ok);
  auto b = check_assertion(env, lat, ds[3]);
  CHECK_FALSE(b.ok);
  CHECK(b.actual == lvl(lat, {"cl"}));
  CHECK(b.offending == std::vector<std::string>{"cl"});
  CHECK(check_assertion(env, lat, ds[4]).ok);
}
