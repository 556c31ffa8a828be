#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace fraclab {

/// A finite symbol string over {1..q}. Empty words are allowed and denote
/// the root cylinder.
struct Word {
  std::vector<int> symbols;

  Word() = default;
  explicit Word(std::vector<int> s) : symbols(std::move(s)) {}

  std::size_t size() const { return symbols.size(); }
  bool empty() const { return symbols.empty(); }
  int operator[](std::size_t i) const { return symbols[i]; }
};

inline bool operator==(const Word& a, const Word& b) {
  return a.symbols == b.symbols;
}
inline bool operator!=(const Word& a, const Word& b) { return !(a == b); }

/// Lexicographic order; shorter prefixes sort first.
inline bool operator<(const Word& a, const Word& b) {
  return a.symbols < b.symbols;
}

/// Juxtaposition of two words.
inline Word concat(const Word& a, const Word& b) {
  Word r = a;
  r.symbols.insert(r.symbols.end(), b.symbols.begin(), b.symbols.end());
  return r;
}

inline std::string to_string(const Word& w) {
  if (w.empty()) return "()";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(w.symbols[i]);
  }
  return s;
}

}  // namespace fraclab
