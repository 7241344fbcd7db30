#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lattc/env.hpp"
#include "lattc/kernel.hpp"
#include "lattc/syntax.hpp"

namespace lattc {

/// Closes a declaration's direct usage over the reports of the globals it references.
AssumptionReport build_report(const GlobalEnv& env, const std::string& name, DeclKind kind, Level level,
                              const Usage& usage);

/// Throws Error("UnknownName") when `name` is not in `env`.
const AssumptionReport& assumptions(const GlobalEnv& env, std::string_view name);

enum class ReportFormat { Text, Json };

std::string render(const AssumptionReport& r, const Lattice& lat, ReportFormat format);

struct AssertionOutcome {
  std::string name;
  Level asserted;
  Level actual;
  bool ok = true;
  std::vector<std::string> offending;
};

struct AuditEntry {
  std::string name;
  AssumptionReport report;
  std::vector<AssertionOutcome> assertions;
};

AssertionOutcome check_assertion(const GlobalEnv& env, const Lattice& lat, const Declaration& a);
std::vector<AuditEntry> audit_module(const GlobalEnv& env, const Lattice& lat, const std::vector<Declaration>& decls);

}  // namespace lattc
