#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lattc/error.hpp"
#include "lattc/lattice.hpp"

namespace lattc {

enum class Gated : std::uint8_t { K, Em, FunextAx, UaAx };

std::string_view gated_name(Gated g);
std::optional<Gated> gated_from_name(std::string_view name);

// Child layout per kind (binder children marked *):
//   Pi [dom, cod*]   Lam [body*]   Sigma [dom, cod*]   App [fn, arg]
//   Eq [type, lhs, rhs]   J [eq, motive, base]   Absurd [scrut, type]
//   UnitRec [u, motive, c]   BoolRec [b, motive, t, f]   NatRec [n, motive, z, s]
//   ListRec [l, motive, nil, cons]   SumRec [s, motive, l, r]   SigRec [p, motive, f]
//   Succ [n]  List [A]  Cons [x, xs]  Sum [A, B]  Inl [a]  Inr [b]  Pair [a, b]
// `level` holds the binder / argument / observer / scrutinee / component level.
enum class Kind : std::uint8_t {
  Var, Global, Name, Universe, Gated,
  Pi, Lam, App, Sigma, Pair, SigRec,
  Eq, Refl, J,
  Void, Absurd,
  Unit, Tt, UnitRec,
  Bool, True, False, BoolRec,
  Nat, Zero, Succ, NatRec,
  List, Nil, Cons, ListRec,
  Sum, Inl, Inr, SumRec,
};

bool is_eliminator(Kind k);
/// Number of binders introduced over child `i` of a node of kind `k`.
unsigned binders_over(Kind k, std::size_t i);

struct Term;
using TermPtr = std::shared_ptr<const Term>;

/// Core term: locally nameless with de Bruijn indices; `name` keeps binder hints.
struct Term {
  Kind kind = Kind::Var;
  std::uint32_t index = 0;  // Var: de Bruijn index; Universe: universe index
  Gated gated = Gated::K;
  std::optional<Level> level;
  std::string name;
  std::vector<TermPtr> args;
  SourceSpan span;
};

namespace mk {
TermPtr node(Kind k, std::vector<TermPtr> args = {}, std::optional<Level> level = std::nullopt, std::string name = {});
TermPtr var(std::uint32_t i, std::string name = {});
TermPtr global(std::string name);
TermPtr universe(std::uint32_t i);
TermPtr gated(Gated g);
TermPtr pi(std::string name, std::optional<Level> level, TermPtr dom, TermPtr cod);
TermPtr lam(std::string name, std::optional<Level> level, TermPtr body);
TermPtr sigma(std::string name, std::optional<Level> level, TermPtr dom, TermPtr cod);
TermPtr app(TermPtr fn, std::optional<Level> level, TermPtr arg);
TermPtr eq(Level observer, TermPtr type, TermPtr lhs, TermPtr rhs);
TermPtr refl();
TermPtr nat(unsigned n);
}  // namespace mk

/// Copy of `t` with children replaced.
TermPtr rebuild(const Term& t, std::vector<TermPtr> args);
TermPtr with_level(const Term& t, std::optional<Level> level);

/// Shift free indices >= cutoff by `delta`.
TermPtr shift(const TermPtr& t, int delta, std::uint32_t cutoff = 0);
/// Instantiate index 0 of `body` with `value`, lowering the other free indices.
TermPtr subst(const TermPtr& body, const TermPtr& value);
bool occurs(const TermPtr& t, std::uint32_t index);

/// Structural equality ignoring binder names and spans (alpha-equivalence).
bool alpha_equal(const TermPtr& a, const TermPtr& b);

/// Head and arguments (level, arg) of an application spine.
struct Spine {
  TermPtr head;
  std::vector<std::pair<std::optional<Level>, TermPtr>> args;
};
Spine spine_of(const TermPtr& t);
TermPtr apply_spine(TermPtr head, const std::vector<std::pair<std::optional<Level>, TermPtr>>& args, std::size_t from = 0);

}  // namespace lattc
