// Shared tokenizer: lowercase, alphanumeric runs only. Used by the TF-IDF
// baseline, the model vocabulary, BLEU, and DST span normalization.
#pragma once

#include <cctype>
#include <string>
#include <vector>

namespace simmc::text {

inline std::vector<std::string> tokenize(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      cur += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else if (!cur.empty()) {
      out.push_back(cur);
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

// lowercase + punctuation strip, single-space separated
inline std::string normalize_span(const std::string& s) {
  std::string out;
  for (const auto& t : tokenize(s)) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

}  // namespace simmc::text
