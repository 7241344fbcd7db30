#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lattc/conversion.hpp"
#include "lattc/env.hpp"
#include "lattc/syntax.hpp"
#include "lattc/type_error.hpp"

namespace lattc {

struct ContextEntry {
  std::string name;
  Level level;
  TermPtr type;  // scoped over the entries before it
};

class Context {
 public:
  void push(ContextEntry e) { entries_.push_back(std::move(e)); }
  void pop() { entries_.pop_back(); }
  std::size_t size() const { return entries_.size(); }
  const ContextEntry& at(std::uint32_t index) const { return entries_[entries_.size() - 1 - index]; }
  /// Type of variable `index`, shifted into the current scope.
  TermPtr type_of(std::uint32_t index) const { return shift(at(index).type, static_cast<int>(index) + 1); }
  std::vector<std::string> names() const;

 private:
  std::vector<ContextEntry> entries_;
};

enum class Mode { Term, Type };

/// Observer level plus the position's mode. `anchor` names the level search that may
/// raise `obs` (-1: fixed); `relevant` is false under arguments checked above the
/// declaration's own level, where occurrences count as mentions.
struct Judgement {
  Level obs;
  Mode mode = Mode::Term;
  int anchor = -1;
  bool relevant = true;
};

/// Direct occurrences collected while checking one declaration.
struct Usage {
  std::set<std::string> gated_uses;
  std::set<std::string> gated_mentions;
  std::set<std::string> global_uses;
  std::set<std::string> global_mentions;
};

/// Closed type schema of a gated constant, with equality observer `l`.
TermPtr gated_schema(Gated g, Level l);
TermPtr equiv_type(Level l, const TermPtr& x, const TermPtr& y);

class Checker {
 public:
  Checker(const GlobalEnv& env, const Lattice& lat, Fuel& fuel) : env_(env), lat_(lat), fuel_(fuel) {}

  /// Returns `t` with application and pair levels filled in.
  TermPtr check(Context& ctx, const Judgement& j, const TermPtr& t, const TermPtr& expected);
  std::pair<TermPtr, TermPtr> infer(Context& ctx, const Judgement& j, const TermPtr& t);
  /// Checks `t` in type mode and returns it with its universe index.
  std::pair<TermPtr, std::uint32_t> wf_type(Context& ctx, const Judgement& j, const TermPtr& t);
  void gate_check(Gated g, const Judgement& j, SourceSpan span);

  const Usage& usage() const { return usage_; }
  int new_anchor() { return next_anchor_++; }
  void set_next_anchor(int a) { next_anchor_ = a; }

 private:
  struct Family {
    TermPtr motive;
    std::vector<Level> levels;
  };

  Family check_family(Context& ctx, const Judgement& j, const TermPtr& p, const std::vector<TermPtr>& domains);
  std::pair<TermPtr, std::uint32_t> universe_of(Context& ctx, const Judgement& j, const TermPtr& t);
  TermPtr check_scrutinee(Context& ctx, const Judgement& j, const TermPtr& t, Level ls, const TermPtr& expected);
  std::pair<TermPtr, TermPtr> infer_scrutinee(Context& ctx, const Judgement& j, const TermPtr& t, Level ls);
  std::pair<TermPtr, TermPtr> infer_eliminator(Context& ctx, const Judgement& j, const TermPtr& t);
  std::pair<TermPtr, TermPtr> infer_j(Context& ctx, const Judgement& j, const TermPtr& t);
  TermPtr check_absurd_scrutinee(Context& ctx, const Judgement& j, const TermPtr& b);
  Judgement raised(const Judgement& j, Level l, SourceSpan span) const;

  void require(const Judgement& j, Level need, TypeErrorKind kind, const std::string& what, SourceSpan span,
               bool raisable = true) const;
  void record(const Judgement& j, const std::string& name, bool gated);
  TermPtr whnf_in(const Judgement& j, const TermPtr& t);
  bool conv_in(const Judgement& j, const TermPtr& a, const TermPtr& b);
  [[noreturn]] void mismatch(Context& ctx, const TermPtr& t, const TermPtr& got, const TermPtr& want);

  const GlobalEnv& env_;
  const Lattice& lat_;
  Fuel& fuel_;
  Usage usage_;
  int next_anchor_ = 1;
};

/// Result of checking one declaration at a fixed level.
struct CheckedDecl {
  TermPtr type;
  TermPtr body;
  Usage usage;
};

/// Checks `d` at level `l`; level errors inside carry demands for `anchor`.
CheckedDecl check_at(const GlobalEnv& env, const Lattice& lat, const Declaration& d, Level l, int anchor,
                     std::uint64_t fuel = kDefaultFuel);

/// Checks `d` at its (already known) level and appends it to `env`.
void check_declaration(GlobalEnv& env, const Lattice& lat, const Declaration& d, std::uint64_t fuel = kDefaultFuel);

}  // namespace lattc
