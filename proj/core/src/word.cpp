#include "tdcode/word.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <string>

namespace tdcode {

std::size_t WordHash::operator()(WordView w) const noexcept {
  // FNV-1a over the symbols, length folded in.
  std::uint64_t h = 1469598103934665603ULL ^ w.size();
  for (Symbol s : w) {
    h ^= s;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

Word tandem_duplicate(WordView x, DuplicationStep step) {
  if (step.length == 0 || step.index + step.length > x.size()) {
    throw PreconditionError("tandem_duplicate: step (" + std::to_string(step.index) + "," +
                            std::to_string(step.length) + ") out of range for length " +
                            std::to_string(x.size()));
  }
  Word out;
  out.reserve(x.size() + step.length);
  auto split = x.begin() + static_cast<std::ptrdiff_t>(step.index + step.length);
  out.insert(out.end(), x.begin(), split);
  out.insert(out.end(), x.begin() + static_cast<std::ptrdiff_t>(step.index), split);
  out.insert(out.end(), split, x.end());
  return out;
}

namespace {

bool has_suffix_square(const Word& s, std::size_t k) {
  if (s.size() < 2 * k) return false;
  auto tail = s.end() - static_cast<std::ptrdiff_t>(k);
  return std::equal(tail - static_cast<std::ptrdiff_t>(k), tail, tail);
}

}  // namespace

Word remove_duplicates_pass(WordView x, std::size_t k) {
  if (k == 0) throw PreconditionError("remove_duplicates_pass: k must be positive");
  // The output buffer is the scanned prefix with every k-duplicate removed. A
  // removal can only expose a new square ending at the current position, so
  // checking the suffix after each append is the same as rescanning 2k-1
  // positions back.
  Word out;
  out.reserve(x.size());
  for (Symbol s : x) {
    out.push_back(s);
    if (has_suffix_square(out, k)) out.resize(out.size() - k);
  }
  return out;
}

bool is_irreducible(WordView x, std::size_t k, IrreducibleMode mode) {
  if (k == 0) throw PreconditionError("is_irreducible: k must be positive");
  const std::size_t lo = mode == IrreducibleMode::exact ? k : 1;
  for (std::size_t len = lo; len <= k && 2 * len <= x.size(); ++len) {
    std::size_t run = 0;  // length of the current stretch with x[i] == x[i+len]
    for (std::size_t i = 0; i + len < x.size(); ++i) {
      run = x[i] == x[i + len] ? run + 1 : 0;
      if (run == len) return false;
    }
  }
  return true;
}

Word pad_xi(WordView x, std::size_t i) {
  if (x.empty()) throw PreconditionError("pad_xi: empty word");
  Word out(x.begin(), x.end());
  out.insert(out.end(), i, x.back());
  return out;
}

Word reverse(WordView x) { return Word(x.rbegin(), x.rend()); }

std::size_t distinct_symbols(WordView x) {
  std::array<bool, 256> seen{};
  std::size_t n = 0;
  for (Symbol s : x) {
    if (!seen[s]) {
      seen[s] = true;
      ++n;
    }
  }
  return n;
}

Word parse_word(std::string_view text, int q) {
  if (q < 2 || q > kMaxAlphabet) {
    throw PreconditionError("alphabet size must be in 2.." + std::to_string(kMaxAlphabet));
  }
  if (text.empty()) throw PreconditionError("empty word");
  Word out;
  auto push = [&](int v) {
    if (v < 0 || v >= q) {
      throw PreconditionError("symbol " + std::to_string(v) + " outside alphabet of size " +
                              std::to_string(q));
    }
    out.push_back(static_cast<Symbol>(v));
  };
  if (text.find(',') != std::string_view::npos || q > 10) {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find(',', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string_view tok = text.substr(pos, end - pos);
      int v = -1;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw PreconditionError("malformed symbol '" + std::string(tok) + "'");
      }
      push(v);
      pos = end + 1;
    }
  } else {
    for (char c : text) {
      if (c < '0' || c > '9') throw PreconditionError(std::string("invalid symbol character '") + c + "'");
      push(c - '0');
    }
  }
  return out;
}

std::string format_word(WordView w, int q) {
  std::string out;
  if (q <= 10) {
    out.reserve(w.size());
    for (Symbol s : w) out.push_back(static_cast<char>('0' + s));
    return out;
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(w[i]);
  }
  return out;
}

Word from_digits(std::string_view digits) {
  Word out;
  out.reserve(digits.size());
  for (char c : digits) out.push_back(static_cast<Symbol>(c - '0'));
  return out;
}

}  // namespace tdcode
