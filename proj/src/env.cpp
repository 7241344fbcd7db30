#include "lattc/env.hpp"

namespace lattc {

const GlobalEntry* GlobalEnv::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return nullptr;
  return entries_[it->second].get();
}

void GlobalEnv::add(GlobalEntry entry) {
  if (contains(entry.name)) throw Error("ScopeError", "duplicate declaration \"" + entry.name + "\"", entry.span);
  entry.position = static_cast<std::uint32_t>(entries_.size());
  index_.emplace(entry.name, entries_.size());
  entries_.push_back(std::make_shared<const GlobalEntry>(std::move(entry)));
}

std::vector<const GlobalEntry*> GlobalEnv::entries() const {
  std::vector<const GlobalEntry*> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.get());
  return out;
}

}  // namespace lattc
