#include <set>

#include "lattc/syntax.hpp"

namespace lattc {

namespace {

std::string_view keyword_of(Kind k) {
  switch (k) {
    case Kind::Void: return "Void";
    case Kind::Unit: return "Unit";
    case Kind::Bool: return "Bool";
    case Kind::Nat: return "Nat";
    case Kind::Tt: return "tt";
    case Kind::True: return "true";
    case Kind::False: return "false";
    case Kind::Zero: return "zero";
    case Kind::Nil: return "nil";
    case Kind::Refl: return "refl";
    case Kind::Succ: return "succ";
    case Kind::List: return "List";
    case Kind::Inl: return "inl";
    case Kind::Inr: return "inr";
    case Kind::Sum: return "Sum";
    case Kind::Cons: return "cons";
    case Kind::Pair: return "pair";
    case Kind::Absurd: return "absurd";
    case Kind::Eq: return "Eq";
    case Kind::J: return "J";
    case Kind::UnitRec: return "unitrec";
    case Kind::BoolRec: return "boolrec";
    case Kind::NatRec: return "natrec";
    case Kind::ListRec: return "listrec";
    case Kind::SumRec: return "sumrec";
    case Kind::SigRec: return "sigrec";
    default: return "";
  }
}

void collect_globals(const TermPtr& t, std::set<std::string>& out) {
  if (t->kind == Kind::Global) out.insert(t->name);
  for (const auto& a : t->args) collect_globals(a, out);
}

std::optional<unsigned> numeral(const TermPtr& t) {
  unsigned n = 0;
  const Term* cur = t.get();
  while (cur->kind == Kind::Succ) {
    ++n;
    cur = cur->args[0].get();
  }
  if (cur->kind != Kind::Zero) return std::nullopt;
  return n;
}

enum Prec { kTerm = 0, kApp = 1, kAtom = 2 };

class Printer {
 public:
  Printer(const Lattice& lat, std::vector<std::string> names) : lat_(lat), names_(std::move(names)) {}

  std::string print(const TermPtr& t, Prec ctx) {
    std::string s;
    Prec p = render(t, s);
    return p < ctx ? "(" + s + ")" : s;
  }

 private:
  std::string lvl(const std::optional<Level>& l) const { return l ? "^" + print_level(*l, lat_) : ""; }

  std::string fresh(const std::string& hint, const TermPtr& body) {
    if (hint == "_" && !occurs(body, 0)) return hint;
    std::string base = hint.empty() || hint == "_" ? "x" : hint;
    std::set<std::string> globals;
    collect_globals(body, globals);
    auto clash = [&](const std::string& n) {
      if (is_reserved_word(n) || globals.count(n) > 0) return true;
      for (const auto& m : names_)
        if (m == n) return true;
      return false;
    };
    std::string name = base;
    for (unsigned i = 1; clash(name); ++i) name = base + std::to_string(i);
    return name;
  }

  std::string under(const std::string& name, const TermPtr& body, Prec ctx) {
    names_.push_back(name);
    std::string s = print(body, ctx);
    names_.pop_back();
    return s;
  }

  Prec render(const TermPtr& t, std::string& out) {
    switch (t->kind) {
      case Kind::Var:
        if (t->index < names_.size()) {
          out = names_[names_.size() - 1 - t->index];
        } else {
          out = "#" + std::to_string(t->index);
        }
        return kAtom;
      case Kind::Global:
      case Kind::Name:
        out = t->name;
        return kAtom;
      case Kind::Gated:
        out = std::string(gated_name(t->gated));
        return kAtom;
      case Kind::Universe:
        out = "Type " + std::to_string(t->index);
        return kApp;
      case Kind::Lam: {
        out = "fun";
        std::size_t pushed = 0;
        TermPtr cur = t;
        while (cur->kind == Kind::Lam) {
          std::string n = fresh(cur->name, cur->args[0]);
          out += " " + n + lvl(cur->level);
          names_.push_back(n);
          ++pushed;
          cur = cur->args[0];
        }
        out += " => " + print(cur, kTerm);
        names_.resize(names_.size() - pushed);
        return kTerm;
      }
      case Kind::Pi: {
        const auto& cod = t->args[1];
        if (!t->level && !occurs(cod, 0)) {
          out = print(t->args[0], kApp) + " -> " + under("_", cod, kTerm);
          return kTerm;
        }
        std::string n = fresh(t->name, cod);
        out = "(" + n + " :" + lvl(t->level) + " " + print(t->args[0], kTerm) + ") -> " + under(n, cod, kTerm);
        return kTerm;
      }
      case Kind::Sigma: {
        std::string n = fresh(t->name, t->args[1]);
        out = "Sigma (" + n + " :" + lvl(t->level) + " " + print(t->args[0], kTerm) + "), " +
              under(n, t->args[1], kTerm);
        return kTerm;
      }
      case Kind::App: {
        Spine sp = spine_of(t);
        out = print(sp.head, kApp);
        for (const auto& [l, a] : sp.args) out += " " + print(a, kAtom) + lvl(l);
        return kApp;
      }
      default:
        break;
    }
    if (auto n = numeral(t)) {
      out = std::to_string(*n);
      return kAtom;
    }
    out = std::string(keyword_of(t->kind));
    if (t->args.empty()) return kAtom;
    out += lvl(t->level);
    for (const auto& a : t->args) out += " " + print(a, kAtom);
    return kApp;
  }

  const Lattice& lat_;
  std::vector<std::string> names_;
};

}  // namespace

std::string print_level(Level l, const Lattice& lat) {
  for (const auto& [name, level] : lat.config().aliases) {
    if (is_reserved_word(name)) continue;
    if (lat.alias(name) == l) return name;
  }
  return lat.format(l);
}

std::string print_term(const TermPtr& t, const Lattice& lat, const std::vector<std::string>& names) {
  return Printer(lat, names).print(t, kTerm);
}

std::string print_declaration(const Declaration& d, const Lattice& lat) {
  if (d.kind == DeclKind::Assertion) return "assert_level " + d.name + " <= " + print_level(d.asserted, lat);
  std::string s = d.kind == DeclKind::Definition ? "def " : "postulate ";
  s += d.name + " :";
  if (d.level) s += "^" + print_level(*d.level, lat);
  s += " " + print_term(d.type, lat);
  if (d.body) s += " :=\n  " + print_term(d.body, lat);
  return s;
}

}  // namespace lattc
