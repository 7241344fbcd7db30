#include "lattc/lattice.hpp"

#include <algorithm>
#include <bit>
#include <regex>
#include <set>

#include "json.hpp"

namespace lattc {

namespace {

constexpr std::string_view kDefaultConfig = R"({
  "extensions": ["uip", "funext", "ua", "cl"],
  "implies": [["ua", "funext"]],
  "forbidden": [["uip", "ua"], ["cl", "ua"]],
  "aliases": {"L": []},
  "homes": {"K": ["uip"], "em": ["cl"], "funext_ax": ["funext"], "ua_ax": ["ua"]}
}
)";

bool valid_extension_id(const std::string& id) {
  static const std::regex re("[a-z][a-z0-9_]*");
  return std::regex_match(id, re);
}

std::vector<std::string> string_list(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array of strings");
  std::vector<std::string> out;
  for (const auto& item : j) {
    if (!item.is_string()) throw ParseError(where + ": expected an array of strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> pair_list(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array of pairs");
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& item : j) {
    auto ids = string_list(item, where);
    if (ids.size() != 2) throw ParseError(where + ": each entry must have exactly two ids");
    out.emplace_back(ids[0], ids[1]);
  }
  return out;
}

std::map<std::string, std::vector<std::string>> set_map(const nlohmann::json& j, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  std::map<std::string, std::vector<std::string>> out;
  for (const auto& [k, v] : j.items()) out[k] = string_list(v, where + "." + k);
  return out;
}

// Index lookup tolerant of undeclared ids; diagnostics are produced separately.
std::optional<std::size_t> find_index(const std::vector<std::string>& exts, const std::string& id) {
  auto it = std::find(exts.begin(), exts.end(), id);
  if (it == exts.end()) return std::nullopt;
  return static_cast<std::size_t>(it - exts.begin());
}

std::string join_names(const std::vector<std::string>& ids) {
  std::string s = "{";
  for (std::size_t i = 0; i < ids.size(); ++i) s += (i ? "," : "") + ids[i];
  return s + "}";
}

}  // namespace

std::string_view default_config_text() { return kDefaultConfig; }

LatticeConfig parse_config(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed lattice config: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("lattice config must be a JSON object");
  LatticeConfig cfg;
  for (const auto& [key, value] : doc.items()) {
    if (key == "extensions") cfg.extensions = string_list(value, key);
    else if (key == "implies") cfg.implies = pair_list(value, key);
    else if (key == "forbidden") cfg.forbidden = pair_list(value, key);
    else if (key == "aliases") cfg.aliases = set_map(value, key);
    else if (key == "homes") cfg.homes = set_map(value, key);
    else throw ParseError("unknown key in lattice config: \"" + key + "\"");
  }
  if (!doc.contains("extensions")) throw ParseError("lattice config requires \"extensions\"");
  return cfg;
}

std::string config_to_json(const LatticeConfig& cfg) {
  nlohmann::ordered_json j;
  j["extensions"] = cfg.extensions;
  j["implies"] = nlohmann::ordered_json::array();
  for (const auto& [a, b] : cfg.implies) j["implies"].push_back({a, b});
  j["forbidden"] = nlohmann::ordered_json::array();
  for (const auto& [a, b] : cfg.forbidden) j["forbidden"].push_back({a, b});
  j["aliases"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : cfg.aliases) j["aliases"][k] = v;
  j["homes"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : cfg.homes) j["homes"][k] = v;
  return j.dump(2) + "\n";
}

std::vector<Diagnostic> validate(const LatticeConfig& cfg) {
  std::vector<Diagnostic> diags;
  const auto& exts = cfg.extensions;

  if (exts.size() > 64) diags.push_back({"extension-count", "at most 64 extensions are supported", {}});
  std::set<std::string> seen;
  for (const auto& id : exts) {
    if (!valid_extension_id(id))
      diags.push_back({"extension-id", "extension id \"" + id + "\" must match [a-z][a-z0-9_]*", {id}});
    if (!seen.insert(id).second) diags.push_back({"extension-unique", "duplicate extension \"" + id + "\"", {id}});
  }

  auto unknown = [&](const std::string& where, const std::string& id) {
    if (find_index(exts, id)) return false;
    diags.push_back({"known-id", where + " references undeclared extension \"" + id + "\"", {id}});
    return true;
  };

  // Implication edges; self-edges are ignored.
  const std::size_t n = exts.size();
  std::vector<std::vector<std::size_t>> succ(n);
  for (const auto& [a, b] : cfg.implies) {
    bool bad = unknown("implies", a);
    bad = unknown("implies", b) || bad;
    if (bad || a == b) continue;
    succ[*find_index(exts, a)].push_back(*find_index(exts, b));
  }
  {
    std::vector<int> state(n, 0);
    std::vector<std::string> path;
    bool reported = false;
    std::function<void(std::size_t)> dfs = [&](std::size_t v) {
      state[v] = 1;
      path.push_back(exts[v]);
      for (auto w : succ[v]) {
        if (state[w] == 1 && !reported) {
          auto from = std::find(path.begin(), path.end(), exts[w]);
          std::vector<std::string> cycle(from, path.end());
          diags.push_back({"implies-acyclic", "implication cycle through " + join_names(cycle), cycle});
          reported = true;
        } else if (state[w] == 0) {
          dfs(w);
        }
      }
      path.pop_back();
      state[v] = 2;
    };
    for (std::size_t v = 0; v < n; ++v)
      if (state[v] == 0) dfs(v);
  }

  for (const auto& [a, b] : cfg.forbidden) {
    unknown("forbidden", a);
    unknown("forbidden", b);
  }

  // Legality of aliases and homes, computed on a best-effort closure.
  std::vector<std::set<std::string>> implied(n);
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<std::size_t> stack{v};
    while (!stack.empty()) {
      auto x = stack.back();
      stack.pop_back();
      if (!implied[v].insert(exts[x]).second) continue;
      for (auto w : succ[x]) stack.push_back(w);
    }
  }
  auto check_set = [&](const std::string& what, const std::string& name, const std::vector<std::string>& ids) {
    std::set<std::string> closed;
    bool bad = false;
    for (const auto& id : ids) {
      if (auto i = find_index(exts, id)) closed.insert(implied[*i].begin(), implied[*i].end());
      else {
        diags.push_back({what + "-legal", what + " \"" + name + "\" references undeclared extension \"" + id + "\"", {name, id}});
        bad = true;
      }
    }
    if (bad) return;
    for (const auto& [a, b] : cfg.forbidden) {
      if (closed.count(a) && closed.count(b)) {
        diags.push_back({what + "-legal",
                         what + " \"" + name + "\" expands to an illegal level containing forbidden pair {" + a + "," + b + "}",
                         {name, a, b}});
        return;
      }
    }
  };
  for (const auto& [name, ids] : cfg.aliases) check_set("alias", name, ids);
  for (const auto& [name, ids] : cfg.homes) {
    if (std::find(std::begin(kGatedIds), std::end(kGatedIds), name) == std::end(kGatedIds)) {
      diags.push_back({"home-construct", "home given for unknown construct \"" + name + "\"", {name}});
      continue;
    }
    check_set("home", name, ids);
  }
  return diags;
}

Lattice::Lattice(LatticeConfig cfg) : cfg_(std::move(cfg)) {
  auto diags = validate(cfg_);
  if (!diags.empty()) {
    std::string msg = "invalid lattice config:";
    for (const auto& d : diags) msg += "\n  [" + d.invariant + "] " + d.message;
    throw ConfigError(msg);
  }
  const std::size_t n = size();
  implied_.assign(n, 0);
  for (std::size_t v = 0; v < n; ++v) implied_[v] = std::uint64_t{1} << v;
  for (const auto& [a, b] : cfg_.implies) implied_[*index_of(a)] |= std::uint64_t{1} << *index_of(b);
  // Transitive closure; acyclic so n rounds suffice.
  for (std::size_t round = 0; round < n; ++round)
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t w = 0; w < n; ++w)
        if (implied_[v] >> w & 1) implied_[v] |= implied_[w];
  for (const auto& [a, b] : cfg_.forbidden)
    forbidden_.emplace_back(std::uint64_t{1} << *index_of(a), std::uint64_t{1} << *index_of(b));
  for (const auto& [name, ids] : cfg_.aliases) aliases_.emplace(name, canonicalize(ids));
  for (const auto& [name, ids] : cfg_.homes) homes_.emplace(name, canonicalize(ids));
}

std::optional<std::size_t> Lattice::index_of(std::string_view id) const {
  auto it = std::find(cfg_.extensions.begin(), cfg_.extensions.end(), id);
  if (it == cfg_.extensions.end()) return std::nullopt;
  return static_cast<std::size_t>(it - cfg_.extensions.begin());
}

Level Lattice::closure(Level raw) const {
  std::uint64_t out = 0;
  for (std::size_t v = 0; v < size(); ++v)
    if (raw.bits() >> v & 1) out |= implied_[v];
  return Level::from_bits(out);
}

bool Lattice::legal(Level l) const { return !conflict(l).has_value(); }

std::optional<std::pair<std::string, std::string>> Lattice::conflict(Level l) const {
  for (std::size_t i = 0; i < forbidden_.size(); ++i) {
    auto [a, b] = forbidden_[i];
    if ((l.bits() & a) && (l.bits() & b)) return cfg_.forbidden[i];
  }
  return std::nullopt;
}

std::optional<Level> Lattice::try_canonicalize(Level raw) const {
  Level c = closure(raw);
  if (!legal(c)) return std::nullopt;
  return c;
}

Level Lattice::canonicalize(Level raw) const {
  Level c = closure(raw);
  if (auto bad = conflict(c))
    throw LevelError("IllegalLevel", "level " + format(c) + " contains the forbidden pair {" + bad->first + "," +
                                         bad->second + "}");
  return c;
}

Level Lattice::canonicalize(std::span<const std::string> ids) const {
  std::uint64_t bits = 0;
  for (const auto& id : ids) {
    auto i = index_of(id);
    if (!i) throw LevelError("UnknownExtension", "unknown extension \"" + id + "\"");
    bits |= std::uint64_t{1} << *i;
  }
  return canonicalize(Level::from_bits(bits));
}

std::vector<Level> Lattice::legal_levels() const {
  if (size() > 20) throw ConfigError("too many extensions to enumerate levels");
  std::vector<Level> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << size()); ++bits) {
    Level l = Level::from_bits(bits);
    if (closure(l) == l && legal(l)) out.push_back(l);
  }
  std::stable_sort(out.begin(), out.end(), [](Level a, Level b) {
    return std::popcount(a.bits()) < std::popcount(b.bits());
  });
  return out;
}

std::optional<Level> Lattice::alias(std::string_view name) const {
  auto it = aliases_.find(name);
  if (it == aliases_.end()) return std::nullopt;
  return it->second;
}

std::optional<Level> Lattice::home(std::string_view construct) const {
  auto it = homes_.find(construct);
  if (it == homes_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> Lattice::names(Level l) const {
  std::vector<std::string> out;
  for (std::size_t v = 0; v < size(); ++v)
    if (l.bits() >> v & 1) out.push_back(cfg_.extensions[v]);
  std::sort(out.begin(), out.end());
  return out;
}

std::string Lattice::format(Level l) const { return join_names(names(l)); }

std::string Lattice::format_preferring_alias(Level l) const {
  for (const auto& [name, level] : aliases_)
    if (level == l) return name;
  return format(l);
}

Lattice load_config(std::string_view text) { return Lattice(parse_config(text)); }

Lattice default_lattice() { return load_config(default_config_text()); }

}  // namespace lattc
