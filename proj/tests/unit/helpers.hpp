#pragma once

#include <random>
#include <set>
#include <string>
#include <vector>

#include "tdcode/word.hpp"

namespace tdcode::test {

inline Word W(const std::string& s) { return parse_word(s); }
inline std::string S(WordView w) { return format_word(w); }

inline Word random_word(std::mt19937_64& rng, std::size_t len, int q = 3) {
  std::uniform_int_distribution<int> sym(0, q - 1);
  Word w(len);
  for (auto& s : w) s = static_cast<Symbol>(sym(rng));
  return w;
}

/// Every word over Σ_q of length exactly n, in lexicographic order.
inline std::vector<Word> all_words(std::size_t n, int q = 3) {
  std::vector<Word> out;
  Word w(n, 0);
  while (true) {
    out.push_back(w);
    std::size_t i = n;
    while (i > 0 && w[i - 1] == q - 1) w[--i] = 0;
    if (i == 0) break;
    ++w[i - 1];
  }
  return out;
}

/// Reference <=k-roots: every word reachable by removing duplicates of
/// length <= k in any order, keeping the irreducible ones.
inline std::set<Word> all_roots_brute(const Word& x, std::size_t k) {
  std::set<Word> seen{x}, roots;
  std::vector<Word> stack{x};
  while (!stack.empty()) {
    Word w = stack.back();
    stack.pop_back();
    bool reducible = false;
    for (std::size_t len = 1; len <= k; ++len) {
      for (std::size_t i = 0; i + 2 * len <= w.size(); ++i) {
        if (!std::equal(w.begin() + i, w.begin() + i + len, w.begin() + i + len)) continue;
        reducible = true;
        Word d = w;
        d.erase(d.begin() + i, d.begin() + i + len);
        if (seen.insert(d).second) stack.push_back(d);
      }
    }
    if (!reducible) roots.insert(w);
  }
  return roots;
}

}  // namespace tdcode::test
