#pragma once

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lattc/term.hpp"

namespace lattc {

/// Per-definition extension usage: what the term relies on versus what its types only mention.
struct AssumptionReport {
  Level level;
  std::set<std::string> term_uses;
  std::set<std::string> type_mentions;

  friend bool operator==(const AssumptionReport&, const AssumptionReport&) = default;
};

enum class DeclKind { Definition, Postulate, Assertion };

struct GlobalEntry {
  std::string name;
  DeclKind kind = DeclKind::Definition;
  Level level;
  TermPtr type;
  TermPtr body;  // null for postulates
  AssumptionReport report;
  SourceSpan span;
  std::uint32_t position = 0;
};

/// Append-only map of checked declarations. Copies share entries, so snapshots are cheap.
class GlobalEnv {
 public:
  const GlobalEntry* find(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name) != nullptr; }
  /// Throws Error("ScopeError") on a duplicate name.
  void add(GlobalEntry entry);
  std::size_t size() const { return entries_.size(); }
  std::vector<const GlobalEntry*> entries() const;

 private:
  std::vector<std::shared_ptr<const GlobalEntry>> entries_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace lattc
