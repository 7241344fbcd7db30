#pragma once

// Random well-typed terms over a fixed context, for the downgrade and subsumption properties.

#include <random>
#include <utility>
#include <vector>

#include "lattc/kernel.hpp"

namespace lattc::testing {

class TermGen {
 public:
  enum class Ty { Nat, Bool, Void, Fun, Fun2 };

  struct Slot {
    std::string name;
    Level level;
    Ty ty;
    Level dom;   // Fun: domain level; Fun2: second domain level
  };

  TermGen(const Lattice& lat, std::uint32_t seed, bool allow_em) : lat_(lat), rng_(seed), em_(allow_em) {
    levels_ = lat.legal_levels();
    for (Level l : levels_) {
      const std::string tag = std::to_string(l.bits());
      slots_.push_back({"n" + tag, l, Ty::Nat, {}});
      slots_.push_back({"b" + tag, l, Ty::Bool, {}});
      slots_.push_back({"f" + tag, l, Ty::Fun, pick_level()});
    }
    slots_.push_back({"g", Level{}, Ty::Fun2, levels_.back()});
    slots_.push_back({"v", levels_.back(), Ty::Void, {}});
  }

  /// Context matching the generator's variables.
  Context context() const {
    Context ctx;
    for (const auto& s : slots_) ctx.push({s.name, s.level, type_of(s)});
    return ctx;
  }

  const std::vector<Level>& levels() const { return levels_; }

  TermPtr nat(int depth) { return gen(depth, nullptr).first; }

  /// Two terms sharing structure, diverging at random subterms.
  std::pair<TermPtr, TermPtr> nat_pair(int depth) {
    std::pair<TermPtr, TermPtr> out;
    auto p = gen(depth, &out);
    (void)p;
    return out;
  }

 private:
  static TermPtr nat_t() { return mk::node(Kind::Nat); }

  TermPtr type_of(const Slot& s) const {
    switch (s.ty) {
      case Ty::Nat: return nat_t();
      case Ty::Bool: return mk::node(Kind::Bool);
      case Ty::Void: return mk::node(Kind::Void);
      case Ty::Fun: return mk::pi("x", s.dom, nat_t(), nat_t());
      case Ty::Fun2: return mk::pi("x", Level{}, nat_t(), mk::pi("y", s.dom, nat_t(), nat_t()));
    }
    return nullptr;
  }

  Level pick_level() { return levels_[pick(levels_.size())]; }
  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }

  TermPtr var_of(Ty ty) {
    std::vector<std::size_t> hits;
    for (std::size_t i = 0; i < slots_.size(); ++i)
      if (slots_[i].ty == ty) hits.push_back(i);
    if (hits.empty()) return nullptr;
    const std::size_t i = hits[pick(hits.size())];
    return mk::var(static_cast<std::uint32_t>(slots_.size() - 1 - i), slots_[i].name);
  }

  const Slot* slot_for(const TermPtr& v) const { return &slots_[slots_.size() - 1 - v->index]; }

  // Runs `body` with extra bound variables in scope.
  template <class F>
  auto under(std::vector<Slot> extra, F body) {
    for (auto& s : extra) slots_.push_back(std::move(s));
    auto r = body();
    slots_.resize(slots_.size() - extra.size());
    return r;
  }

  using Pair = std::pair<TermPtr, TermPtr>;

  // With `pair` set, returns both sides; otherwise first only.
  Pair gen(int depth, Pair* pair) {
    Pair r = pair != nullptr && coin(0.15) ? Pair{gen(depth, nullptr).first, gen(depth, nullptr).first}
                                           : shaped(depth, pair != nullptr);
    if (pair != nullptr) *pair = r;
    return r;
  }

  Pair same(TermPtr t) { return {t, t}; }

  Pair sub(int depth, bool paired) {
    if (!paired) return {gen(depth, nullptr).first, nullptr};
    Pair p;
    gen(depth, &p);
    return p;
  }

  Pair shaped(int depth, bool paired) {
    auto both = [&](auto make, Pair x) { return Pair{make(x.first), paired ? make(x.second) : nullptr}; };
    const int choice = depth <= 0 ? static_cast<int>(pick(2)) : static_cast<int>(pick(9));
    switch (choice) {
      case 0:
        return same(var_of(Ty::Nat));
      case 1:
        return same(mk::nat(static_cast<unsigned>(pick(3))));
      case 2:
        return both([](TermPtr a) { return mk::node(Kind::Succ, {a}); }, sub(depth - 1, paired));
      case 3: {
        TermPtr f = var_of(Ty::Fun);
        const Level dom = slot_for(f)->dom;
        const bool annotate = coin(0.7);
        return both([&](TermPtr a) { return mk::app(f, annotate ? std::optional<Level>(dom) : std::nullopt, a); },
                    sub(depth - 1, paired));
      }
      case 4: {
        TermPtr g = var_of(Ty::Fun2);
        const Level dom = slot_for(g)->dom;
        Pair x = sub(depth - 1, paired), y = sub(depth - 1, paired);
        auto mkapp = [&](TermPtr a, TermPtr b) { return mk::app(mk::app(g, Level{}, a), dom, b); };
        return {mkapp(x.first, y.first), paired ? mkapp(x.second, y.second) : nullptr};
      }
      case 5: {
        const Level ls = pick_level();
        Pair n = sub(depth - 1, paired), z = sub(depth - 1, paired);
        Pair s = under({{"k", ls, Ty::Nat, {}}, {"ih", Level{}, Ty::Nat, {}}}, [&] { return sub(depth - 1, paired); });
        auto motive = mk::lam("_", Level{}, nat_t());
        auto mkrec = [&](TermPtr a, TermPtr b, TermPtr c) {
          return mk::node(Kind::NatRec, {a, motive, b, mk::lam("k", ls, mk::lam("ih", Level{}, c))}, ls);
        };
        return {mkrec(n.first, z.first, s.first), paired ? mkrec(n.second, z.second, s.second) : nullptr};
      }
      case 6: {
        const Level ls = pick_level();
        TermPtr b = coin(0.5) ? var_of(Ty::Bool) : mk::node(coin(0.5) ? Kind::True : Kind::False);
        Pair t = sub(depth - 1, paired), f = sub(depth - 1, paired);
        auto motive = mk::lam("_", Level{}, nat_t());
        auto mkrec = [&](TermPtr x, TermPtr y) { return mk::node(Kind::BoolRec, {b, motive, x, y}, ls); };
        return {mkrec(t.first, f.first), paired ? mkrec(t.second, f.second) : nullptr};
      }
      case 7:
        return same(mk::node(Kind::Absurd, {var_of(Ty::Void), nat_t()}));
      default: {
        if (!em_) return same(mk::nat(static_cast<unsigned>(pick(3))));
        // sumrec^ls (em Nat) (fun _ => Nat) (fun a => ...) (fun na => absurd (na n) Nat)
        const Level ls = pick_level();
        auto scrut = mk::app(mk::gated(Gated::Em), Level{}, nat_t());
        Pair l = under({{"a", ls, Ty::Nat, {}}}, [&] { return sub(depth - 1, paired); });
        auto motive = mk::lam("_", Level{}, nat_t());
        auto right = mk::lam("na", ls, mk::node(Kind::Absurd, {mk::app(mk::var(0), Level{}, mk::nat(0)), nat_t()}));
        auto mkrec = [&](TermPtr x) {
          return mk::node(Kind::SumRec, {scrut, motive, mk::lam("a", ls, x), right}, ls);
        };
        return {mkrec(l.first), paired ? mkrec(l.second) : nullptr};
      }
    }
  }

  const Lattice& lat_;
  std::mt19937 rng_;
  bool em_;
  std::vector<Level> levels_;
  std::vector<Slot> slots_;
};

}  // namespace lattc::testing
