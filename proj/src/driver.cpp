#include "lattc/driver.hpp"

namespace lattc {

std::vector<Declaration> load_module(const SourceFile& src, const Lattice& lat, const GlobalEnv& env) {
  return resolve(default_annotations(parse_module(src.text())), lat, env);
}

FileOutcome check_source(const SourceFile& src, const Lattice& lat, const GlobalEnv& base, const CheckOptions& opt) {
  FileOutcome out;
  out.file = src.name();
  out.env = base;
  auto problem = [&](const Error& e) { return Problem{e.kind(), e.what(), src.locate(e.span())}; };

  std::vector<Declaration> decls;
  try {
    decls = load_module(src, lat, base);
  } catch (const ParseError& e) {
    out.fatal = problem(e);
    out.exit_code = 2;
    return out;
  } catch (const Error& e) {
    out.fatal = problem(e);
    out.exit_code = 1;
    return out;
  }

  for (const auto& d : decls) {
    DeclOutcome r{d.name, d.kind, std::nullopt, std::nullopt, std::nullopt};
    try {
      if (d.kind == DeclKind::Assertion) {
        r.assertion = check_assertion(out.env, lat, d);
        if (!r.assertion->ok) {
          r.error = Problem{"AssertionFailure",
                            d.name + " is at " + lat.format(r.assertion->actual) + ", above " +
                                lat.format(d.asserted) + " by " + lat.format(r.assertion->actual.minus(d.asserted)),
                            src.locate(d.span)};
        }
      } else {
        r.level = elaborate_declaration(out.env, lat, d, opt.fuel);
      }
    } catch (const Error& e) {
      r.error = problem(e);
      if (!e.span()) r.error->where = src.locate(d.span);
    }
    const bool failed = r.error.has_value();
    out.decls.push_back(std::move(r));
    if (failed) {
      out.exit_code = 1;
      if (!opt.keep_going) break;
    }
  }
  return out;
}

}  // namespace lattc
