#pragma once

#include <string>
#include <utility>
#include <vector>

#include <simmc/io.hpp>
#include <simmc/ontology.hpp>

namespace simmc::fixtures {

struct Fixture {
  ontology::Domain domain;
  std::string annotation;
};

// fixtures file: one "<domain>\t<annotated utterance>" per line, '#' comments
inline std::vector<Fixture> load(const std::string& path) {
  std::vector<Fixture> out;
  std::istringstream in(io::slurp(path));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw std::runtime_error("fixture line lacks a domain tab: " + line);
    out.push_back({ontology::domain_from_string(line.substr(0, tab)),
                   line.substr(tab + 1)});
  }
  return out;
}

inline std::vector<Fixture> load_shipped() {
  return load(io::data_dir() + "/fixtures/annotations.txt");
}

}  // namespace simmc::fixtures
