#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lattc/error.hpp"

namespace lattc {

/// A set of extensions, stored as a bitmask over a Lattice's extension list.
/// Values obtained from Lattice::canonicalize are implication-closed and legal.
class Level {
 public:
  constexpr Level() = default;
  static constexpr Level from_bits(std::uint64_t bits) {
    Level l;
    l.bits_ = bits;
    return l;
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool subset_of(Level other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool strictly_below(Level other) const { return subset_of(other) && bits_ != other.bits_; }
  constexpr Level unite(Level other) const { return from_bits(bits_ | other.bits_); }
  constexpr Level intersect(Level other) const { return from_bits(bits_ & other.bits_); }
  constexpr Level minus(Level other) const { return from_bits(bits_ & ~other.bits_); }

  friend constexpr bool operator==(Level, Level) = default;

 private:
  std::uint64_t bits_ = 0;
};

struct LevelBitsLess {
  bool operator()(Level a, Level b) const { return a.bits() < b.bits(); }
};

/// The configuration document as written, before validation.
struct LatticeConfig {
  std::vector<std::string> extensions;
  std::vector<std::pair<std::string, std::string>> implies;    // (stronger, weaker)
  std::vector<std::pair<std::string, std::string>> forbidden;  // unordered
  std::map<std::string, std::vector<std::string>> aliases;
  std::map<std::string, std::vector<std::string>> homes;
};

struct Diagnostic {
  std::string invariant;
  std::string message;
  std::vector<std::string> ids;
};

/// Identifiers of the gated constructs a config may give homes to.
inline constexpr std::string_view kGatedIds[] = {"K", "em", "funext_ax", "ua_ax"};

std::string_view default_config_text();
LatticeConfig parse_config(std::string_view text);
std::string config_to_json(const LatticeConfig& cfg);

/// Empty iff every LatticeConfig invariant holds.
std::vector<Diagnostic> validate(const LatticeConfig& cfg);

/// Validated, immutable theory lattice.
class Lattice {
 public:
  /// Throws ConfigError listing the diagnostics when the config is invalid.
  explicit Lattice(LatticeConfig cfg);

  const LatticeConfig& config() const { return cfg_; }
  std::size_t size() const { return cfg_.extensions.size(); }
  std::optional<std::size_t> index_of(std::string_view id) const;

  Level closure(Level raw) const;
  bool legal(Level l) const;
  std::optional<Level> try_canonicalize(Level raw) const;
  Level canonicalize(Level raw) const;
  Level canonicalize(std::span<const std::string> ids) const;

  bool leq(Level lo, Level hi) const { return lo.subset_of(hi); }
  Level meet(Level a, Level b) const { return a.intersect(b); }
  /// nullopt encodes JoinUndefined.
  std::optional<Level> join(Level a, Level b) const { return try_canonicalize(a.unite(b)); }

  std::vector<Level> legal_levels() const;

  std::optional<Level> alias(std::string_view name) const;
  std::optional<Level> home(std::string_view construct) const;

  /// Pair of extensions that make `l` illegal, if any.
  std::optional<std::pair<std::string, std::string>> conflict(Level l) const;

  std::vector<std::string> names(Level l) const;
  std::string format(Level l) const;
  std::string format_preferring_alias(Level l) const;

 private:
  LatticeConfig cfg_;
  std::vector<std::uint64_t> implied_;  // per extension: itself plus everything it implies
  std::vector<std::pair<std::uint64_t, std::uint64_t>> forbidden_;
  std::map<std::string, Level, std::less<>> aliases_;
  std::map<std::string, Level, std::less<>> homes_;
};

Lattice load_config(std::string_view text);
Lattice default_lattice();

}  // namespace lattc
