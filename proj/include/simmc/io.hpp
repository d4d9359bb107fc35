#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace simmc::io {

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void spit(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

inline std::string data_dir() {
#ifdef SIMMC_DATA_DIR
  return SIMMC_DATA_DIR;
#else
  return "data";
#endif
}

}  // namespace simmc::io
