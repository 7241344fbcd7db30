#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lattc/driver.hpp"

using namespace lattc;
using nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct Exit {
  int code;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "lattc: cannot read " << path << "\n";
    throw Exit{kUsage};
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string config_text(const std::string& flag) {
  if (!flag.empty()) return read_file(flag);
  if (const char* env = std::getenv("LATTC_LATTICE"); env != nullptr && *env != '\0') return read_file(env);
  return std::string(default_config_text());
}

Lattice lattice_from(const std::string& flag) {
  try {
    return load_config(config_text(flag));
  } catch (const Error& e) {
    std::cerr << "lattc: " << e.kind() << ": " << e.what() << "\n";
    throw Exit{kUsage};
  }
}

ordered_json level_json(const Lattice& lat, Level l) { return lat.names(l); }

ordered_json problem_json(const Problem& p) {
  return ordered_json{{"kind", p.kind}, {"message", p.message}, {"location", p.where}};
}

// Checks the prelude (if any) and returns the environment later files build on.
GlobalEnv prelude_env(const std::string& prelude, const Lattice& lat, const CheckOptions& opt) {
  if (prelude.empty()) return {};
  FileOutcome r = check_source(SourceFile(prelude, read_file(prelude)), lat, {}, CheckOptions{opt.fuel, false});
  if (r.exit_code != kOk) {
    const Problem& p = r.fatal ? *r.fatal : *r.decls.back().error;
    std::cerr << p.str() << "\n";
    throw Exit{r.exit_code};
  }
  return r.env;
}

void print_text(const FileOutcome& r, const Lattice& lat) {
  for (const auto& d : r.decls) {
    if (d.error) {
      std::cerr << d.error->str() << "\n";
    } else if (d.assertion) {
      std::cout << "assert_level " << d.name << " <= " << lat.format(d.assertion->asserted) << ": ok\n";
    } else {
      std::cout << d.name << " : " << lat.format(*d.level) << "\n";
    }
  }
  if (r.fatal) std::cerr << r.fatal->str() << "\n";
}

ordered_json file_json(const FileOutcome& r, const Lattice& lat) {
  ordered_json decls = ordered_json::array(), asserts = ordered_json::array(), errors = ordered_json::array();
  for (const auto& d : r.decls) {
    if (d.assertion) {
      asserts.push_back({{"name", d.name},
                         {"asserted", level_json(lat, d.assertion->asserted)},
                         {"actual", level_json(lat, d.assertion->actual)},
                         {"ok", d.assertion->ok}});
    } else if (d.level) {
      const auto& rep = r.env.find(d.name)->report;
      decls.push_back({{"name", d.name},
                       {"kind", d.kind == DeclKind::Postulate ? "postulate" : "definition"},
                       {"level", level_json(lat, *d.level)},
                       {"report", ordered_json::parse(render(rep, lat, ReportFormat::Json))}});
    }
    if (d.error) errors.push_back(problem_json(*d.error));
  }
  if (r.fatal) errors.push_back(problem_json(*r.fatal));
  return ordered_json{{"file", r.file}, {"exit", r.exit_code}, {"declarations", decls}, {"assertions", asserts},
                      {"errors", errors}};
}

int cmd_check(const std::vector<std::string>& files, const std::string& lattice, const std::string& prelude,
              const CheckOptions& opt, bool json) {
  const Lattice lat = lattice_from(lattice);
  const GlobalEnv base = prelude_env(prelude, lat, opt);
  std::vector<std::string> texts;
  for (const auto& f : files) texts.push_back(read_file(f));

  std::vector<std::future<FileOutcome>> jobs;
  for (std::size_t i = 0; i < files.size(); ++i)
    jobs.push_back(std::async(std::launch::async, [&, i] {
      return check_source(SourceFile(files[i], texts[i]), lat, base, opt);
    }));

  int code = kOk;
  ordered_json all = ordered_json::array();
  for (auto& job : jobs) {
    FileOutcome r = job.get();
    code = std::max(code, r.exit_code);
    if (json) {
      all.push_back(file_json(r, lat));
    } else {
      print_text(r, lat);
    }
  }
  if (json) std::cout << ordered_json{{"files", all}}.dump(2) << "\n";
  return code;
}

int cmd_assumptions(const std::string& file, const std::string& name, const std::string& lattice,
                    const std::string& prelude, const CheckOptions& opt, bool json) {
  const Lattice lat = lattice_from(lattice);
  const GlobalEnv base = prelude_env(prelude, lat, opt);
  FileOutcome r = check_source(SourceFile(file, read_file(file)), lat, base, opt);
  if (r.exit_code != kOk) {
    print_text(r, lat);
    return r.exit_code;
  }
  try {
    const AssumptionReport& rep = assumptions(r.env, name);
    std::cout << render(rep, lat, json ? ReportFormat::Json : ReportFormat::Text) << "\n";
    return kOk;
  } catch (const Error& e) {
    std::cerr << "lattc: " << e.kind() << ": " << e.what() << "\n";
    return kFail;
  }
}

int cmd_lattice_show(const std::string& lattice, bool json) {
  const Lattice lat = lattice_from(lattice);
  const auto levels = lat.legal_levels();
  auto name = [&](Level l) {
    std::string s = lat.format(l);
    std::string alias = print_level(l, lat);
    return alias == s ? s : s + " (" + alias + ")";
  };
  if (json) {
    ordered_json ls = ordered_json::array(), meets = ordered_json::array(), joins = ordered_json::array();
    for (Level l : levels) ls.push_back(level_json(lat, l));
    for (std::size_t i = 0; i < levels.size(); ++i)
      for (std::size_t k = i; k < levels.size(); ++k) {
        const Level a = levels[i], b = levels[k];
        meets.push_back({level_json(lat, a), level_json(lat, b), level_json(lat, lat.meet(a, b))});
        auto j = lat.join(a, b);
        joins.push_back({level_json(lat, a), level_json(lat, b), j ? level_json(lat, *j) : ordered_json(nullptr)});
      }
    std::cout << ordered_json{{"levels", ls}, {"meet", meets}, {"join", joins}}.dump(2) << "\n";
    return kOk;
  }
  std::cout << "levels:\n";
  for (Level l : levels) std::cout << "  " << name(l) << "\n";
  std::cout << "meet:\n";
  for (std::size_t i = 0; i < levels.size(); ++i)
    for (std::size_t k = i; k < levels.size(); ++k)
      std::cout << "  meet(" << lat.format(levels[i]) << ", " << lat.format(levels[k])
                << ") = " << lat.format(lat.meet(levels[i], levels[k])) << "\n";
  std::cout << "join:\n";
  for (std::size_t i = 0; i < levels.size(); ++i)
    for (std::size_t k = i; k < levels.size(); ++k) {
      auto j = lat.join(levels[i], levels[k]);
      std::cout << "  join(" << lat.format(levels[i]) << ", " << lat.format(levels[k])
                << ") = " << (j ? lat.format(*j) : "undefined") << "\n";
    }
  return kOk;
}

int cmd_lattice_validate(const std::string& lattice, bool json) {
  LatticeConfig cfg;
  try {
    cfg = parse_config(config_text(lattice));
  } catch (const Error& e) {
    std::cerr << "lattc: " << e.kind() << ": " << e.what() << "\n";
    return kUsage;
  }
  const auto diags = validate(cfg);
  if (json) {
    ordered_json out = ordered_json::array();
    for (const auto& d : diags) out.push_back({{"invariant", d.invariant}, {"message", d.message}, {"ids", d.ids}});
    std::cout << ordered_json{{"diagnostics", out}}.dump(2) << "\n";
  } else if (diags.empty()) {
    std::cout << "ok\n";
  } else {
    for (const auto& d : diags) std::cout << d.invariant << ": " << d.message << "\n";
  }
  return diags.empty() ? kOk : kFail;
}

int cmd_lattice_init(const std::string& path, bool force) {
  const std::string_view text = default_config_text();
  if (path.empty() || path == "-") {
    std::cout << text;
    return kOk;
  }
  if (std::filesystem::exists(path) && !force) {
    std::cerr << "lattc: " << path << " exists (use --force to overwrite)\n";
    return kUsage;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "lattc: cannot write " << path << "\n";
    return kUsage;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lattc: a dependently typed kernel that checks every definition at a level of a theory lattice"};
  app.require_subcommand(1);

  std::string lattice, prelude, name, init_path, file;
  std::vector<std::string> files;
  CheckOptions opt;
  bool json = false, force = false;

  auto common = [&](CLI::App* c) {
    c->add_option("--lattice", lattice, "lattice config (JSON); defaults to $LATTC_LATTICE, then the built-in one");
    c->add_flag("--json", json, "machine-readable output");
  };
  auto checking = [&](CLI::App* c) {
    common(c);
    c->add_option("--fuel", opt.fuel, "reduction steps per declaration")->check(CLI::PositiveNumber);
    c->add_option("--prelude", prelude, "definitions file checked first");
  };

  auto* check = app.add_subcommand("check", "check source files");
  checking(check);
  check->add_flag("--keep-going", opt.keep_going, "report every failing declaration");
  check->add_option("files", files, "source files")->required();

  auto* assume = app.add_subcommand("assumptions", "print the assumption report of a declaration");
  checking(assume);
  assume->add_option("file", file, "source file")->required();
  assume->add_option("name", name, "declaration name")->required();

  auto* lat = app.add_subcommand("lattice", "inspect lattice configs");
  lat->require_subcommand(1);
  auto* show = lat->add_subcommand("show", "legal levels with meet and join tables");
  common(show);
  auto* val = lat->add_subcommand("validate", "check config invariants");
  common(val);
  auto* init = lat->add_subcommand("init", "write the built-in config");
  init->add_option("path", init_path, "destination (stdout if omitted)");
  init->add_flag("--force", force, "overwrite an existing file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*check) return cmd_check(files, lattice, prelude, opt, json);
    if (*assume) return cmd_assumptions(file, name, lattice, prelude, opt, json);
    if (*show) return cmd_lattice_show(lattice, json);
    if (*val) return cmd_lattice_validate(lattice, json);
    if (*init) return cmd_lattice_init(init_path, force);
  } catch (const Exit& e) {
    return e.code;
  }
  return kUsage;
}
