#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lattc/env.hpp"
#include "lattc/term.hpp"

namespace lattc {

/// `{a,b}` literal or alias name, as written.
struct LevelExpr {
  std::vector<std::string> ids;
  std::optional<std::string> alias;
  SourceSpan span;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Surface term. Kinds mirror the core; identifiers are Kind::Name and binders keep names.
struct Expr {
  Kind kind = Kind::Name;
  std::string name;
  std::uint32_t number = 0;  // Universe index
  Gated gated = Gated::K;
  std::optional<LevelExpr> level;
  std::vector<ExprPtr> args;
  SourceSpan span;
};

struct SurfaceDecl {
  DeclKind kind = DeclKind::Definition;
  std::string name;
  std::optional<LevelExpr> level;
  ExprPtr type;
  ExprPtr body;
  LevelExpr asserted;
  SourceSpan span;
};

struct SurfaceModule {
  std::vector<SurfaceDecl> decls;
};

/// Resolved declaration. `level` is nullopt when it is left for inference.
struct Declaration {
  DeclKind kind = DeclKind::Definition;
  std::string name;
  std::optional<Level> level;
  TermPtr type;
  TermPtr body;
  Level asserted;
  SourceSpan span;
};

/// Line/column lookup for diagnostics.
class SourceFile {
 public:
  SourceFile(std::string name, std::string text);
  const std::string& name() const { return name_; }
  const std::string& text() const { return text_; }
  std::pair<std::size_t, std::size_t> line_col(std::uint32_t offset) const;
  std::string locate(const std::optional<SourceSpan>& span) const;

 private:
  std::string name_;
  std::string text_;
  std::vector<std::uint32_t> line_starts_;
};

SurfaceModule parse_module(std::string_view text);
bool is_reserved_word(std::string_view word);
ExprPtr parse_expr(std::string_view text);

/// Names become indices or global references; level expressions become canonical Levels.
std::vector<Declaration> resolve(const SurfaceModule& m, const Lattice& lat, const GlobalEnv& env);
TermPtr resolve_expr(const ExprPtr& e, const Lattice& lat, const GlobalEnv& env,
                     const std::vector<std::string>& locals = {});

/// Prints surface syntax that re-parses to an alpha-equivalent term. `names` are the
/// context's binder hints, innermost last.
std::string print_term(const TermPtr& t, const Lattice& lat, const std::vector<std::string>& names = {});
std::string print_declaration(const Declaration& d, const Lattice& lat);
std::string print_level(Level l, const Lattice& lat);

}  // namespace lattc
