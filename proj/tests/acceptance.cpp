// One pass/fail line per acceptance criterion; exit status is nonzero if any fails.

#include <filesystem>
#include <algorithm>
#include <functional>
#include <iostream>
#include <map>
#include <set>

#include "generators.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace lattc;
using namespace lattc::testing;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

bool declared_ok(const FileOutcome& r, const std::string& name) {
  for (const auto& d : r.decls)
    if (d.name == name && d.kind != DeclKind::Assertion) return !d.error;
  return false;
}

Verdict judgement_suite() {
  const std::map<std::string, std::vector<std::string>> expected = {
      {"chain_examples.ltc", {"k", "predId", "kConst", "head"}},
      {"base.ltc", {"trueNotFalse", "surj", "idSurj"}},
      {"k_about.ltc", {"kComputes"}},
  };
  std::string missing;
  int n = 0;
  for (const auto& f : positive_corpus()) {
    auto it = expected.find(f.rel);
    if (it == expected.end()) continue;
    FileOutcome r = check_corpus(f);
    for (const auto& name : it->second) {
      ++n;
      if (!declared_ok(r, name)) missing += " " + name;
    }
  }
  if (!missing.empty()) return {false, "failed:" + missing};
  return {true, std::to_string(n) + " judgements check"};
}

Verdict negative_suite() {
  namespace fs = std::filesystem;
  const std::set<std::string> required = {"VarLevelError", "GateError", "LevelJoinError", "DestructorLevelError",
                                          "EqObserverError"};
  std::set<std::string> seen;
  std::string wrong;
  int n = 0;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(corpus_path("negative"))) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& p : files) {
    const std::string text = slurp(p.string());
    const std::string want = header(text, "expect");
    const bool chain = header(text, "lattice") == "chain.json";
    FileOutcome r = check_source(SourceFile(p.filename().string(), text), chain ? chain_lattice() : std_lattice(), {});
    std::string got = r.fatal ? r.fatal->kind : "";
    for (const auto& d : r.decls)
      if (d.error) got = d.error->kind;
    ++n;
    if (got != want) wrong += " " + p.filename().string() + "(" + (got.empty() ? "accepted" : got) + ")";
    if (got == want) seen.insert(got);
  }
  for (const auto& k : required)
    if (!seen.count(k)) wrong += " no case for " + k;
  if (!wrong.empty()) return {false, wrong};
  return {true, std::to_string(n) + " files fail with their expected error"};
}

Verdict lattice_oracle() {
  const Lattice& lat = std_lattice();
  Oracle o(lat.config());
  auto mine = lat.legal_levels();
  auto theirs = o.legal();
  if (mine.size() != theirs.size()) return {false, "legal level counts differ"};
  std::size_t pairs = 0, bad = 0;
  for (auto a : theirs)
    for (auto b : theirs) {
      ++pairs;
      const Level la = lat.canonicalize(std::vector<std::string>(a.begin(), a.end()));
      const Level lb = lat.canonicalize(std::vector<std::string>(b.begin(), b.end()));
      if (lat.leq(la, lb) != o.leq(a, b)) ++bad;
      if (lat.names(lat.meet(la, lb)) != o.as_vector(o.meet(a, b))) ++bad;
      auto j = lat.join(la, lb);
      auto oj = o.join(a, b);
      if (j.has_value() != oj.has_value() || (j && lat.names(*j) != o.as_vector(*oj))) ++bad;
    }
  // Canonicalization of every raw subset, legal or not.
  for (const auto& raw : o.powerset()) {
    std::uint64_t bits = 0;
    for (const auto& id : raw) bits |= std::uint64_t{1} << *lat.index_of(id);
    auto c = lat.try_canonicalize(Level::from_bits(bits));
    auto oc = o.canonical(raw);
    if (c.has_value() != oc.has_value() || (c && lat.names(*c) != o.as_vector(*oc))) ++bad;
  }
  if (bad) return {false, std::to_string(bad) + " disagreements"};
  return {true, std::to_string(pairs) + " pairs of " + std::to_string(theirs.size()) + " legal levels agree"};
}

Verdict downgrade() {
  const Lattice& lat = chain_lattice();
  GlobalEnv env;
  TermGen gen(lat, 20240611u, true);
  Context ctx = gen.context();
  std::size_t pairs = 0, convertible = 0, bad = 0, ill = 0, level_sensitive = 0;
  for (int i = 0; pairs < 1500 && i < 20000; ++i) {
    auto [a, b] = gen.nat_pair(3);
    bool typed = true;
    for (const auto& t : {a, b}) {
      try {
        Fuel f;
        Checker c(env, lat, f);
        c.check(ctx, Judgement{lat.legal_levels().back(), Mode::Type, -1, false}, t, mk::node(Kind::Nat));
      } catch (const TypeError&) {
        typed = false;
      }
    }
    if (!typed) {
      ++ill;
      continue;
    }
    ++pairs;
    std::size_t yes = 0;
    for (Level hi : lat.legal_levels()) {
      Fuel f;
      if (!convert(env, hi, a, b, f)) continue;
      ++yes;
      ++convertible;
      for (Level lo : lat.legal_levels()) {
        if (!lo.subset_of(hi)) continue;
        Fuel g;
        if (!convert(env, lo, a, b, g)) ++bad;
      }
    }
    if (yes > 0 && yes < lat.legal_levels().size()) ++level_sensitive;
  }
  if (ill) return {false, std::to_string(ill) + " generated terms were ill-typed"};
  if (pairs < 1000) return {false, "only " + std::to_string(pairs) + " pairs"};
  if (bad) return {false, std::to_string(bad) + " counterexamples"};
  return {true, std::to_string(pairs) + " pairs, " + std::to_string(convertible) +
                    " convertible (pair, observer) cases, " +
                    std::to_string(level_sensitive) + " pairs equal only below the top, 0 counterexamples"};
}

Verdict subsumption() {
  std::size_t checked = 0, join_failures = 0;
  std::string bad;
  for (const Lattice* lat : {&chain_lattice(), &std_lattice()}) {
    GlobalEnv env;
    TermGen gen(*lat, 7u + static_cast<unsigned>(lat->size()), true);
    Context ctx = gen.context();
    const auto levels = lat->legal_levels();
    std::size_t here = 0;
    for (int i = 0; here < 700 && i < 20000; ++i) {
      TermPtr t = gen.nat(3);
      std::vector<std::optional<std::string>> outcome;
      for (Level l : levels) {
        try {
          Fuel f;
          Checker c(env, *lat, f);
          c.check(ctx, Judgement{l, Mode::Term, -1, true}, t, mk::node(Kind::Nat));
          outcome.push_back(std::nullopt);
        } catch (const TypeError& e) {
          outcome.push_back(e.kind());
        }
      }
      bool any = false;
      for (std::size_t lo = 0; lo < levels.size(); ++lo) {
        if (outcome[lo]) continue;
        any = true;
        for (std::size_t hi = 0; hi < levels.size(); ++hi) {
          if (!levels[lo].subset_of(levels[hi]) || !outcome[hi]) continue;
          if (*outcome[hi] == "LevelJoinError") {
            ++join_failures;
          } else if (bad.size() < 200) {
            bad += " " + *outcome[hi] + " at " + lat->format(levels[hi]) + ":" + print_term(t, *lat, ctx.names());
          }
        }
      }
      if (any) ++here;
    }
    checked += here;
  }
  if (!bad.empty()) return {false, bad};
  if (checked < 1000) return {false, "only " + std::to_string(checked) + " checked terms"};
  return {true, std::to_string(checked) + " checked terms; raising only ever added " +
                    std::to_string(join_failures) + " LevelJoinError failures"};
}

Verdict minimality() {
  std::size_t defs = 0;
  std::string bad;
  for (const auto& f : positive_corpus()) {
    const Lattice& lat = lattice_for(f);
    const SourceFile src(f.rel, slurp(corpus_path(f.rel)));
    GlobalEnv env;
    for (const auto& d : load_module(src, lat, env)) {
      if (d.kind == DeclKind::Assertion) continue;
      Declaration open = d;
      open.level.reset();
      const Level inferred = infer_level(env, lat, open);
      ++defs;
      for (Level l : lat.legal_levels()) {
        bool ok = true;
        try {
          check_at(env, lat, d, l, -1);
        } catch (const TypeError&) {
          ok = false;
        }
        if (ok && !inferred.subset_of(l)) bad += " " + d.name + " checks at " + lat.format(l);
        if (l == inferred && !ok) bad += " " + d.name + " fails at its inferred level";
      }
      elaborate_declaration(env, lat, d);
    }
  }
  if (!bad.empty()) return {false, bad};
  return {true, std::to_string(defs) + " definitions: inferred level is the least that checks"};
}

bool mentions_user(const TermPtr& t, const std::set<std::string>& users) {
  if (t->kind == Kind::Gated && t->gated == Gated::Em) return true;
  if (t->kind == Kind::Global && users.count(t->name)) return true;
  for (const auto& a : t->args)
    if (mentions_user(a, users)) return true;
  return false;
}

Verdict fidelity() {
  FileOutcome r = check_corpus({"classical.ltc", false});
  if (r.exit_code != 0) return {false, "classical corpus does not check"};
  std::set<std::string> users;
  for (const GlobalEntry* e : r.env.entries())
    if (e->body && mentions_user(e->body, users)) users.insert(e->name);
  std::string bad;
  for (const GlobalEntry* e : r.env.entries()) {
    const bool uses = e->report.term_uses.count("em") > 0;
    if (uses != (users.count(e->name) > 0)) bad += " " + e->name;
  }
  FileOutcome k = check_corpus({"k_about.ltc", false});
  const GlobalEntry* kc = k.env.find("kComputes");
  if (kc == nullptr || kc->report.term_uses.count("K") || !kc->report.type_mentions.count("K"))
    bad += " kComputes";
  if (!bad.empty()) return {false, "wrong reports:" + bad};
  return {true, std::to_string(users.size()) + " transitive em users report em; kComputes mentions K only in types"};
}

Verdict round_trip() {
  namespace fs = std::filesystem;
  std::vector<std::pair<std::string, bool>> files;
  for (const auto& f : positive_corpus()) files.push_back({corpus_path(f.rel), f.chain});
  files.push_back({corpus_path("uip_plus_ua.ltc"), false});
  for (const auto& e : fs::directory_iterator(corpus_path("negative"))) {
    const std::string text = slurp(e.path().string());
    const std::string want = header(text, "expect");
    if (want == "ParseError" || want == "ScopeError") continue;
    files.push_back({e.path().string(), header(text, "lattice") == "chain.json"});
  }
  std::size_t decls = 0;
  std::string bad;
  for (const auto& [path, chain] : files) {
    const Lattice& lat = chain ? chain_lattice() : std_lattice();
    auto first = resolve(parse_module(slurp(path)), lat, {});
    std::string printed;
    for (const auto& d : first) printed += print_declaration(d, lat) + "\n\n";
    std::vector<Declaration> second;
    try {
      second = resolve(parse_module(printed), lat, {});
    } catch (const Error& e) {
      bad += " " + path + ": " + e.what();
      continue;
    }
    if (second.size() != first.size()) {
      bad += " " + path + ": declaration count";
      continue;
    }
    for (std::size_t i = 0; i < first.size(); ++i) {
      const auto &a = first[i], &b = second[i];
      ++decls;
      const bool same = a.kind == b.kind && a.name == b.name && a.level == b.level && a.asserted == b.asserted &&
                        (a.type == nullptr) == (b.type == nullptr) && (!a.type || alpha_equal(a.type, b.type)) &&
                        (a.body == nullptr) == (b.body == nullptr) && (!a.body || alpha_equal(a.body, b.body));
      if (!same) bad += " " + a.name;
    }
  }
  if (!bad.empty()) return {false, bad};
  return {true, std::to_string(decls) + " declarations in " + std::to_string(files.size()) + " files round-trip"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"judgement suite", judgement_suite},
      {"negative suite", negative_suite},
      {"lattice oracle equivalence", lattice_oracle},
      {"downgrade property", downgrade},
      {"qualified subsumption", subsumption},
      {"inference minimality", minimality},
      {"assumptions fidelity", fidelity},
      {"round-trip", round_trip},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += v.pass ? 0 : 1;
    std::cout << "criterion " << i + 1 << " [" << (v.pass ? "PASS" : "FAIL") << "] " << criteria[i].first << ": "
              << v.detail << "\n";
  }
  return failed == 0 ? 0 : 1;
}
