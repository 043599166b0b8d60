#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tdcode {

/// A symbol of the alphabet {0, ..., q-1}.
using Symbol = std::uint8_t;

/// Words are plain symbol vectors; the alphabet is validated at the I/O boundary.
using Word = std::vector<Symbol>;
using WordView = std::span<const Symbol>;

inline constexpr int kMaxAlphabet = 36;
inline constexpr int kDefaultAlphabet = 3;

/// Raised when an operation is called outside its documented domain.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an enumeration exceeds its configured state budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// T_{i,k}: copy the length-k factor at offset i next to itself.
struct DuplicationStep {
  std::size_t index = 0;
  std::size_t length = 1;

  friend bool operator==(const DuplicationStep&, const DuplicationStep&) = default;
};

struct WordHash {
  std::size_t operator()(WordView w) const noexcept;
  std::size_t operator()(const Word& w) const noexcept { return (*this)(WordView{w}); }
};

enum class IrreducibleMode { exact, at_most };

Word tandem_duplicate(WordView x, DuplicationStep step);

/// Removes k-duplicates in a single backtracking left-to-right scan.
/// The result contains no factor vv with |v| = k.
Word remove_duplicates_pass(WordView x, std::size_t k);

bool is_irreducible(WordView x, std::size_t k, IrreducibleMode mode);

/// xi_i(x): x followed by i more copies of its last symbol.
Word pad_xi(WordView x, std::size_t i);

Word reverse(WordView x);

/// Number of distinct symbols occurring in x.
std::size_t distinct_symbols(WordView x);

/// Parses "01210" (q <= 10) or "0,1,2,10" (any q). Throws PreconditionError on
/// symbols outside the alphabet or an empty word.
Word parse_word(std::string_view text, int q = kDefaultAlphabet);

/// Inverse of parse_word: digit string for q <= 10, comma-separated otherwise.
std::string format_word(WordView w, int q = kDefaultAlphabet);

/// Digit-string shorthand for ternary literals: "0120" -> {0,1,2,0}.
Word from_digits(std::string_view digits);

}  // namespace tdcode
