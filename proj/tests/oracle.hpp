#pragma once

// Brute-force model of the theory lattice: plain string sets, exhaustive search for bounds.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lattc/lattice.hpp"

namespace lattc::testing {

class Oracle {
 public:
  using Set = std::set<std::string>;

  explicit Oracle(LatticeConfig cfg) : cfg_(std::move(cfg)) {}

  std::vector<Set> powerset() const {
    std::vector<Set> out;
    const auto& ex = cfg_.extensions;
    for (std::size_t mask = 0; mask < (std::size_t{1} << ex.size()); ++mask) {
      Set s;
      for (std::size_t i = 0; i < ex.size(); ++i)
        if (mask >> i & 1) s.insert(ex[i]);
      out.push_back(s);
    }
    return out;
  }

  Set close(Set s) const {
    for (bool grew = true; grew;) {
      grew = false;
      for (const auto& [strong, weak] : cfg_.implies)
        if (s.count(strong) && s.insert(weak).second) grew = true;
    }
    return s;
  }

  bool legal(const Set& s) const {
    for (const auto& [a, b] : cfg_.forbidden)
      if (s.count(a) && s.count(b)) return false;
    return true;
  }

  std::optional<Set> canonical(const Set& raw) const {
    Set c = close(raw);
    if (!legal(c)) return std::nullopt;
    return c;
  }

  std::vector<Set> legal() const {
    std::vector<Set> out;
    for (const auto& s : powerset())
      if (close(s) == s && legal(s)) out.push_back(s);
    return out;
  }

  static bool leq(const Set& a, const Set& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

  Set meet(const Set& a, const Set& b) const {
    std::vector<Set> lower;
    for (const auto& s : legal())
      if (leq(s, a) && leq(s, b)) lower.push_back(s);
    return greatest(lower).value();
  }

  std::optional<Set> join(const Set& a, const Set& b) const {
    std::vector<Set> upper;
    for (const auto& s : legal())
      if (leq(a, s) && leq(b, s)) upper.push_back(s);
    for (const auto& s : upper) {
      bool least = true;
      for (const auto& t : upper) least = least && leq(s, t);
      if (least) return s;
    }
    return std::nullopt;
  }

  static std::vector<std::string> as_vector(const Set& s) { return {s.begin(), s.end()}; }

 private:
  static std::optional<Set> greatest(const std::vector<Set>& xs) {
    for (const auto& s : xs) {
      bool top = true;
      for (const auto& t : xs) top = top && leq(t, s);
      if (top) return s;
    }
    return std::nullopt;
  }

  LatticeConfig cfg_;
};

}  // namespace lattc::testing
