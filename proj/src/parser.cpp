#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "lattc/syntax.hpp"

namespace lattc {

namespace {

enum class Tok { Ident, Number, Sym, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceSpan span;
};

enum class LevelSlot { None, Optional, Required };

struct Keyword {
  Kind kind;
  unsigned arity;
  LevelSlot level;
};

const std::map<std::string, Keyword, std::less<>>& keywords() {
  static const std::map<std::string, Keyword, std::less<>> table = {
      {"Void", {Kind::Void, 0, LevelSlot::None}},       {"Unit", {Kind::Unit, 0, LevelSlot::None}},
      {"Bool", {Kind::Bool, 0, LevelSlot::None}},       {"Nat", {Kind::Nat, 0, LevelSlot::None}},
      {"tt", {Kind::Tt, 0, LevelSlot::None}},           {"true", {Kind::True, 0, LevelSlot::None}},
      {"false", {Kind::False, 0, LevelSlot::None}},     {"zero", {Kind::Zero, 0, LevelSlot::None}},
      {"nil", {Kind::Nil, 0, LevelSlot::None}},         {"refl", {Kind::Refl, 0, LevelSlot::None}},
      {"K", {Kind::Gated, 0, LevelSlot::None}},         {"em", {Kind::Gated, 0, LevelSlot::None}},
      {"funext_ax", {Kind::Gated, 0, LevelSlot::None}}, {"ua_ax", {Kind::Gated, 0, LevelSlot::None}},
      {"succ", {Kind::Succ, 1, LevelSlot::None}},       {"List", {Kind::List, 1, LevelSlot::None}},
      {"inl", {Kind::Inl, 1, LevelSlot::None}},         {"inr", {Kind::Inr, 1, LevelSlot::None}},
      {"Sum", {Kind::Sum, 2, LevelSlot::None}},         {"cons", {Kind::Cons, 2, LevelSlot::None}},
      {"pair", {Kind::Pair, 2, LevelSlot::Optional}},   {"absurd", {Kind::Absurd, 2, LevelSlot::None}},
      {"Eq", {Kind::Eq, 3, LevelSlot::Required}},       {"J", {Kind::J, 3, LevelSlot::Optional}},
      {"unitrec", {Kind::UnitRec, 3, LevelSlot::Optional}},
      {"boolrec", {Kind::BoolRec, 4, LevelSlot::Optional}},
      {"natrec", {Kind::NatRec, 4, LevelSlot::Optional}},
      {"listrec", {Kind::ListRec, 4, LevelSlot::Optional}},
      {"sumrec", {Kind::SumRec, 4, LevelSlot::Optional}},
      {"sigrec", {Kind::SigRec, 3, LevelSlot::Optional}},
  };
  return table;
}

bool reserved(std::string_view word) { return is_reserved_word(word); }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.span.begin = static_cast<std::uint32_t>(pos_);
      if (pos_ >= src_.size()) {
        t.kind = Tok::End;
        t.span.end = t.span.begin;
        out.push_back(t);
        return out;
      }
      char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_' || src_[pos_] == '\''))
          ++pos_;
        t.kind = Tok::Ident;
        t.text = std::string(src_.substr(start, pos_ - start));
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        t.kind = Tok::Number;
        t.text = std::string(src_.substr(start, pos_ - start));
      } else {
        static const char* multi[] = {":=", "->", "=>", "<="};
        t.kind = Tok::Sym;
        for (const char* m : multi) {
          if (src_.substr(pos_, 2) == m) {
            t.text = m;
            break;
          }
        }
        if (t.text.empty()) {
          if (std::string_view("(){},:^").find(c) == std::string_view::npos)
            throw ParseError(std::string("unexpected character '") + c + "'",
                             SourceSpan{t.span.begin, t.span.begin + 1});
          t.text = std::string(1, c);
        }
        pos_ += t.text.size();
      }
      t.span.end = static_cast<std::uint32_t>(pos_);
      out.push_back(std::move(t));
    }
  }

 private:
  void skip_space() {
    while (pos_ < src_.size()) {
      if (std::isspace(static_cast<unsigned char>(src_[pos_]))) {
        ++pos_;
      } else if (src_.substr(pos_, 2) == "--") {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

std::shared_ptr<Expr> make(Kind k, SourceSpan span) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->span = span;
  return e;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(Lexer(src).run()) {}

  SurfaceModule module() {
    SurfaceModule m;
    while (peek().kind != Tok::End) m.decls.push_back(decl());
    return m;
  }

  ExprPtr whole_term() {
    auto t = term();
    if (peek().kind != Tok::End) fail({"end of input"});
    return t;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool is_sym(std::string_view s, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::Sym && peek(ahead).text == s;
  }
  bool is_word(std::string_view s) const { return peek().kind == Tok::Ident && peek().text == s; }

  [[noreturn]] void fail(const std::vector<std::string>& expected) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    std::string msg = "expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) msg += (i ? " or " : "") + expected[i];
    throw ParseError(msg + ", found " + found, t.span);
  }

  Token expect_sym(std::string_view s) {
    if (!is_sym(s)) fail({"'" + std::string(s) + "'"});
    return next();
  }

  Token expect_name() {
    if (peek().kind != Tok::Ident || reserved(peek().text)) fail({"identifier"});
    return next();
  }

  SurfaceDecl decl() {
    SurfaceDecl d;
    d.span.begin = peek().span.begin;
    if (is_word("def") || is_word("postulate")) {
      d.kind = next().text == "def" ? DeclKind::Definition : DeclKind::Postulate;
      d.name = expect_name().text;
      if (is_sym("^")) d.level = level();
      expect_sym(":");
      if (is_sym("^")) {
        if (d.level) throw ParseError("declaration level given twice", peek().span);
        d.level = level();
      }
      d.type = term();
      if (d.kind == DeclKind::Definition) {
        expect_sym(":=");
        d.body = term();
      }
    } else if (is_word("assert_level")) {
      next();
      d.kind = DeclKind::Assertion;
      d.name = expect_name().text;
      expect_sym("<=");
      d.asserted = levelset();
    } else {
      fail({"'def'", "'postulate'", "'assert_level'"});
    }
    d.span.end = toks_[pos_ - 1].span.end;
    return d;
  }

  LevelExpr level() {
    expect_sym("^");
    return levelset();
  }

  LevelExpr levelset() {
    LevelExpr l;
    l.span.begin = peek().span.begin;
    if (is_sym("{")) {
      next();
      if (!is_sym("}")) {
        for (;;) {
          if (peek().kind != Tok::Ident) fail({"extension id"});
          l.ids.push_back(next().text);
          if (is_sym(",")) {
            next();
            continue;
          }
          break;
        }
      }
      expect_sym("}");
    } else if (peek().kind == Tok::Ident && !reserved(peek().text)) {
      l.alias = next().text;
    } else {
      fail({"'{'", "level alias"});
    }
    l.span.end = toks_[pos_ - 1].span.end;
    return l;
  }

  SourceSpan from(std::uint32_t begin) const { return SourceSpan{begin, toks_[pos_ - 1].span.end}; }

  ExprPtr term() {
    const std::uint32_t begin = peek().span.begin;
    if (is_word("fun")) {
      next();
      struct B {
        std::string name;
        std::optional<LevelExpr> level;
      };
      std::vector<B> binders;
      while (!is_sym("=>")) {
        B b{expect_name().text, std::nullopt};
        if (is_sym("^")) b.level = level();
        binders.push_back(std::move(b));
      }
      if (binders.empty()) fail({"binder"});
      expect_sym("=>");
      ExprPtr body = term();
      for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
        auto lam = make(Kind::Lam, from(begin));
        lam->name = it->name;
        lam->level = it->level;
        lam->args = {body};
        body = lam;
      }
      return body;
    }
    if (is_word("Sigma")) {
      next();
      auto [name, lvl, dom] = binder_group();
      expect_sym(",");
      auto cod = term();
      auto s = make(Kind::Sigma, from(begin));
      s->name = name;
      s->level = lvl;
      s->args = {dom, cod};
      return s;
    }
    if (is_sym("(") && peek(1).kind == Tok::Ident && is_sym(":", 2)) {
      auto [name, lvl, dom] = binder_group();
      expect_sym("->");
      auto cod = term();
      auto p = make(Kind::Pi, from(begin));
      p->name = name;
      p->level = lvl;
      p->args = {dom, cod};
      return p;
    }
    auto lhs = application();
    if (is_sym("->")) {
      next();
      auto cod = term();
      auto p = make(Kind::Pi, from(begin));
      p->name = "_";
      p->args = {lhs, cod};
      return p;
    }
    return lhs;
  }

  std::tuple<std::string, std::optional<LevelExpr>, ExprPtr> binder_group() {
    expect_sym("(");
    std::string name = expect_name().text;
    expect_sym(":");
    std::optional<LevelExpr> lvl;
    if (is_sym("^")) lvl = level();
    auto dom = term();
    expect_sym(")");
    return {name, lvl, dom};
  }

  bool starts_atom() const {
    const Token& t = peek();
    if (t.kind == Tok::Number) return true;
    if (t.kind == Tok::Sym) return t.text == "(";
    if (t.kind != Tok::Ident) return false;
    auto kw = keywords().find(t.text);
    if (kw != keywords().end()) return kw->second.arity == 0;
    return !reserved(t.text);
  }

  ExprPtr application() {
    const std::uint32_t begin = peek().span.begin;
    ExprPtr head = app_head();
    while (starts_atom()) {
      auto arg = atom();
      auto a = make(Kind::App, {});
      a->args = {head, arg};
      if (is_sym("^")) a->level = level();
      a->span = from(begin);
      head = a;
    }
    if (is_sym("^")) throw ParseError("a level annotation must follow an application argument", peek().span);
    return head;
  }

  ExprPtr app_head() {
    const std::uint32_t begin = peek().span.begin;
    if (is_word("Type")) {
      next();
      if (peek().kind != Tok::Number) fail({"universe index"});
      auto u = make(Kind::Universe, {});
      u->number = static_cast<std::uint32_t>(std::stoul(next().text));
      u->span = from(begin);
      return u;
    }
    if (peek().kind == Tok::Ident) {
      auto kw = keywords().find(peek().text);
      if (kw != keywords().end() && kw->second.arity > 0) {
        next();
        auto e = make(kw->second.kind, {});
        if (kw->second.level != LevelSlot::None && is_sym("^")) e->level = level();
        if (kw->second.level == LevelSlot::Required && !e->level) fail({"'^' level for " + kw->first});
        for (unsigned i = 0; i < kw->second.arity; ++i) {
          if (!starts_atom()) fail({"argument to " + kw->first});
          e->args.push_back(atom());
        }
        e->span = from(begin);
        return e;
      }
    }
    if (!starts_atom()) fail({"term"});
    return atom();
  }

  ExprPtr atom() {
    const std::uint32_t begin = peek().span.begin;
    if (peek().kind == Tok::Number) {
      Token t = next();
      unsigned long n = std::stoul(t.text);
      if (n > 10000) throw ParseError("numeral too large", t.span);
      ExprPtr e = make(Kind::Zero, t.span);
      for (unsigned long i = 0; i < n; ++i) {
        auto s = make(Kind::Succ, t.span);
        s->args = {e};
        e = s;
      }
      return e;
    }
    if (is_sym("(")) {
      next();
      auto inner = term();
      expect_sym(")");
      return inner;
    }
    Token t = next();
    auto kw = keywords().find(t.text);
    if (kw != keywords().end()) {
      auto e = make(kw->second.kind, t.span);
      if (e->kind == Kind::Gated) e->gated = *gated_from_name(t.text);
      return e;
    }
    auto e = make(Kind::Name, from(begin));
    e->name = t.text;
    return e;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

bool is_reserved_word(std::string_view word) {
  static const std::set<std::string, std::less<>> words = {"def", "postulate", "assert_level", "fun", "Sigma", "Type"};
  return words.count(word) > 0 || keywords().count(word) > 0;
}

SurfaceModule parse_module(std::string_view text) { return Parser(text).module(); }

ExprPtr parse_expr(std::string_view text) { return Parser(text).whole_term(); }

SourceFile::SourceFile(std::string name, std::string text) : name_(std::move(name)), text_(std::move(text)) {
  line_starts_.push_back(0);
  for (std::size_t i = 0; i < text_.size(); ++i)
    if (text_[i] == '\n') line_starts_.push_back(static_cast<std::uint32_t>(i + 1));
}

std::pair<std::size_t, std::size_t> SourceFile::line_col(std::uint32_t offset) const {
  auto it = std::upper_bound(line_starts_.begin(), line_starts_.end(), offset);
  std::size_t line = static_cast<std::size_t>(it - line_starts_.begin());
  return {line, offset - line_starts_[line - 1] + 1};
}

std::string SourceFile::locate(const std::optional<SourceSpan>& span) const {
  if (!span) return name_;
  auto [line, col] = line_col(span->begin);
  return name_ + ":" + std::to_string(line) + ":" + std::to_string(col);
}

}  // namespace lattc
