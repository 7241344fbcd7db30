#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lattc/elaborate.hpp"
#include "lattc/report.hpp"

namespace lattc {

struct CheckOptions {
  std::uint64_t fuel = kDefaultFuel;
  bool keep_going = false;
};

struct Problem {
  std::string kind;
  std::string message;
  std::string where;  // file:line:col

  std::string str() const { return where + ": " + kind + ": " + message; }
};

struct DeclOutcome {
  std::string name;
  DeclKind kind = DeclKind::Definition;
  std::optional<Level> level;
  std::optional<AssertionOutcome> assertion;
  std::optional<Problem> error;
};

struct FileOutcome {
  std::string file;
  std::vector<DeclOutcome> decls;
  std::optional<Problem> fatal;
  int exit_code = 0;  // 0 ok, 1 check or assertion failure, 2 parse error
  GlobalEnv env;
};

/// Parse, default binder levels, and resolve against `env`.
std::vector<Declaration> load_module(const SourceFile& src, const Lattice& lat, const GlobalEnv& env);

/// Checks every declaration of `src` in order on top of `base`.
FileOutcome check_source(const SourceFile& src, const Lattice& lat, const GlobalEnv& base,
                         const CheckOptions& opt = {});

}  // namespace lattc
