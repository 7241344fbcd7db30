#pragma once

#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "lattc/driver.hpp"

#ifndef LATTC_CORPUS_DIR
#error "LATTC_CORPUS_DIR must point at the corpus directory"
#endif

namespace lattc::testing {

inline std::string corpus_path(const std::string& rel) { return std::string(LATTC_CORPUS_DIR) + "/" + rel; }

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline const Lattice& chain_lattice() {
  static const Lattice lat = load_config(slurp(corpus_path("chain.json")));
  return lat;
}

inline const Lattice& std_lattice() {
  static const Lattice lat = default_lattice();
  return lat;
}

inline Level lvl(const Lattice& lat, std::vector<std::string> ids) { return lat.canonicalize(ids); }

struct CorpusFile {
  std::string rel;
  bool chain;
};

/// Positive corpus files and the lattice each is written for.
inline const std::vector<CorpusFile>& positive_corpus() {
  static const std::vector<CorpusFile> files = {
      {"base.ltc", false}, {"chain_examples.ltc", true}, {"k_about.ltc", false}, {"classical.ltc", false}};
  return files;
}

inline const Lattice& lattice_for(const CorpusFile& f) { return f.chain ? chain_lattice() : std_lattice(); }

inline FileOutcome check_corpus(const CorpusFile& f, CheckOptions opt = {}) {
  return check_source(SourceFile(f.rel, slurp(corpus_path(f.rel))), lattice_for(f), {}, opt);
}

/// `-- key: value` header lines of a negative corpus file.
inline std::string header(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  std::string line;
  const std::string tag = "-- " + key + ": ";
  while (std::getline(in, line))
    if (line.rfind(tag, 0) == 0) return line.substr(tag.size());
  return {};
}

}  // namespace lattc::testing
