#pragma once

#include <cstdint>
#include <optional>

#include "lattc/env.hpp"
#include "lattc/type_error.hpp"

namespace lattc {

inline constexpr std::uint64_t kDefaultFuel = 100000;

/// Which reductions whnf may perform. Beta and iota are always on.
struct ReductionSet {
  bool delta_global = true;
  bool gated_delta = true;
};

/// Budget of head reduction steps; exhaustion raises FuelExhausted.
class Fuel {
 public:
  explicit Fuel(std::uint64_t steps = kDefaultFuel) : remaining_(steps) {}
  void consume();
  std::uint64_t remaining() const { return remaining_; }

 private:
  std::uint64_t remaining_;
};

/// nullopt compares every subterm (type mode); a Level enables indistinguishability skipping.
using Observer = std::optional<Level>;

TermPtr whnf(const GlobalEnv& env, const TermPtr& t, Fuel& fuel, ReductionSet rs = {});

/// Observer-indexed definitional equality: whnf, then structural comparison that skips
/// application arguments (and eliminator scrutinees) annotated strictly above the observer.
bool convert(const GlobalEnv& env, Observer obs, const TermPtr& a, const TermPtr& b, Fuel& fuel,
             ReductionSet rs = {});

/// Throws ConversionError unless `a` and `b` are indistinguishable at observer `lo`.
void check_refl(const GlobalEnv& env, const Lattice& lat, Level lo, const TermPtr& a, const TermPtr& b, Fuel& fuel,
                std::optional<SourceSpan> span = std::nullopt);

}  // namespace lattc
