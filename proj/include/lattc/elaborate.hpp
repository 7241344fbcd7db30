#pragma once

#include "lattc/kernel.hpp"
#include "lattc/syntax.hpp"

namespace lattc {

/// Unannotated binders and eliminator scrutinees get level {}. A missing declaration
/// level stays missing, meaning "infer".
SurfaceDecl default_annotations(const SurfaceDecl& d);
SurfaceModule default_annotations(const SurfaceModule& m);
ExprPtr default_annotations(const ExprPtr& e);

/// Least level at which `d` checks. Raises from {} by the extensions each failing
/// judgement reports missing; LevelJoinError when they cannot coexist.
Level infer_level(const GlobalEnv& env, const Lattice& lat, const Declaration& d, std::uint64_t fuel = kDefaultFuel);

/// Infers the level when absent, checks, and appends to `env`. Returns the level used.
Level elaborate_declaration(GlobalEnv& env, const Lattice& lat, const Declaration& d,
                            std::uint64_t fuel = kDefaultFuel);

}  // namespace lattc
