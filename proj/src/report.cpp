#include "lattc/report.hpp"

#include <algorithm>

#include "json.hpp"

namespace lattc {

AssumptionReport build_report(const GlobalEnv& env, const std::string& name, DeclKind kind, Level level,
                              const Usage& usage) {
  AssumptionReport r;
  r.level = level;
  std::set<std::string> mentions = usage.gated_mentions;
  r.term_uses = usage.gated_uses;
  if (kind == DeclKind::Postulate) r.term_uses.insert(name);
  for (const auto& g : usage.global_uses) {
    const GlobalEntry* e = env.find(g);
    if (e == nullptr) continue;
    r.term_uses.insert(e->report.term_uses.begin(), e->report.term_uses.end());
    mentions.insert(e->report.type_mentions.begin(), e->report.type_mentions.end());
  }
  for (const auto& g : usage.global_mentions) {
    const GlobalEntry* e = env.find(g);
    if (e == nullptr) continue;
    mentions.insert(e->report.term_uses.begin(), e->report.term_uses.end());
    mentions.insert(e->report.type_mentions.begin(), e->report.type_mentions.end());
  }
  for (const auto& m : mentions)
    if (r.term_uses.count(m) == 0) r.type_mentions.insert(m);
  return r;
}

const AssumptionReport& assumptions(const GlobalEnv& env, std::string_view name) {
  const GlobalEntry* e = env.find(name);
  if (e == nullptr) throw Error("UnknownName", "no declaration named \"" + std::string(name) + "\"");
  return e->report;
}

std::string render(const AssumptionReport& r, const Lattice& lat, ReportFormat format) {
  if (format == ReportFormat::Json) {
    nlohmann::ordered_json j;
    j["level"] = lat.names(r.level);
    j["term_uses"] = std::vector<std::string>(r.term_uses.begin(), r.term_uses.end());
    j["type_mentions"] = std::vector<std::string>(r.type_mentions.begin(), r.type_mentions.end());
    return j.dump();
  }
  auto list = [](const std::set<std::string>& s) {
    if (s.empty()) return std::string("(none)");
    std::string out;
    for (const auto& x : s) out += (out.empty() ? "" : ", ") + x;
    return out;
  };
  return "level: " + lat.format(r.level) + "\nterm uses: " + list(r.term_uses) +
         "\ntype mentions: " + list(r.type_mentions);
}

AssertionOutcome check_assertion(const GlobalEnv& env, const Lattice& lat, const Declaration& a) {
  AssertionOutcome out;
  out.name = a.name;
  out.asserted = a.asserted;
  const GlobalEntry* e = env.find(a.name);
  if (e == nullptr) throw Error("UnknownName", "no declaration named \"" + a.name + "\"", a.span);
  out.actual = e->level;
  out.ok = e->level.subset_of(a.asserted);
  out.offending = lat.names(e->level.minus(a.asserted));
  return out;
}

std::vector<AuditEntry> audit_module(const GlobalEnv& env, const Lattice& lat, const std::vector<Declaration>& decls) {
  std::vector<AuditEntry> out;
  for (const auto& d : decls) {
    if (d.kind == DeclKind::Assertion) {
      auto it = std::find_if(out.begin(), out.end(), [&](const AuditEntry& x) { return x.name == d.name; });
      if (it != out.end()) {
        it->assertions.push_back(check_assertion(env, lat, d));
      } else {
        AuditEntry extra;
        extra.name = d.name;
        extra.report = assumptions(env, d.name);
        extra.assertions.push_back(check_assertion(env, lat, d));
        out.push_back(std::move(extra));
      }
      continue;
    }
    if (const GlobalEntry* e = env.find(d.name)) out.push_back(AuditEntry{d.name, e->report, {}});
  }
  return out;
}

}  // namespace lattc
