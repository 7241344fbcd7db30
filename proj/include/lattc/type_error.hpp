#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "lattc/error.hpp"
#include "lattc/lattice.hpp"

namespace lattc {

enum class TypeErrorKind {
  VarLevelError,
  GateError,
  LevelJoinError,
  ConversionError,
  UniverseError,
  DestructorLevelError,
  EqObserverError,
  FuelExhausted,
  ScopeError,
};

std::string_view type_error_name(TypeErrorKind k);

/// Extensions a judgement is missing; the level-search loop owning `anchor` may raise its level by them.
struct LevelDemand {
  int anchor = -1;
  Level missing;
  Level required;
  std::string contributor;
};

class TypeError : public Error {
 public:
  TypeError(TypeErrorKind kind, const std::string& message, std::optional<SourceSpan> span = std::nullopt,
            std::optional<LevelDemand> demand = std::nullopt)
      : Error(std::string(type_error_name(kind)), message, span), type_kind_(kind), demand_(std::move(demand)) {}

  TypeErrorKind type_kind() const { return type_kind_; }
  const std::optional<LevelDemand>& demand() const { return demand_; }

 private:
  TypeErrorKind type_kind_;
  std::optional<LevelDemand> demand_;
};

}  // namespace lattc
