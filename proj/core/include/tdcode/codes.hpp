#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tdcode/word.hpp"

namespace tdcode {

/// Equal-length words plus a tag saying where they came from.
struct Code {
  std::size_t n = 0;
  int q = kDefaultAlphabet;
  std::vector<Word> words;  ///< kept sorted and unique
  std::string provenance;

  std::size_t size() const noexcept { return words.size(); }
  void normalize();  ///< sort + dedup
};

/// Union of the padded <=k-irreducible words of every length 1..n.
Code construct_irreducible_code(std::size_t n, int k, int q = kDefaultAlphabet);

/// The two-word code at length |r|+3 for a root with |r| >= 4.
Code construct_pair_code(WordView r);

/// The twelve one-region root patterns over {0,1,2}.
const std::vector<Word>& one_region_patterns();

/// Index into one_region_patterns() of the pattern equal to r up to a symbol
/// permutation, or nullopt.
std::optional<std::size_t> one_region_pattern_index(WordView r);

/// x(r, l) and z(r, l) for a one-region root: labels (l,-) and (l,+).
Word one_region_minus_word(WordView r, std::size_t ell);
Word one_region_plus_word(WordView r, std::size_t ell);

/// Optimal code size in the cone of a one-region root (closed form).
std::uint64_t one_region_size(WordView r, std::size_t n);

/// Optimal code inside the cone of a one-region root r, for n >= |r|.
Code construct_one_region_code(WordView r, std::size_t n);

/// Supplies a known-optimal code for (canonical root, n), if one is available.
/// Words must lie in the cone of the root and have length n.
using ExactCodeProvider =
    std::function<std::optional<std::vector<Word>>(const Word& canonical_root, std::size_t n)>;

/// Best per-root codes built from prefix extension of codes for shorter
/// roots, padding from n-1, reversal, and the one-region / pair / singleton
/// bases. Ternary only. Sizes are memoized; words are rebuilt on request.
class RecursiveBuilder {
 public:
  enum class Rule : std::uint8_t { exact, singleton, one_region, pair, padding, prefix_short, prefix_long };

  explicit RecursiveBuilder(ExactCodeProvider exact = {});

  std::size_t size(WordView r, std::size_t n);
  /// Words of the best code for root r at length n (n >= |r|), sorted.
  std::vector<Word> build(WordView r, std::size_t n);
  /// Rule behind size(r, n); reversal is looked through.
  Rule rule(WordView r, std::size_t n);

  static const char* rule_name(Rule rule);

 private:
  struct Choice {
    std::uint32_t size = 0;
    Rule rule = Rule::singleton;
    bool reversed = false;
  };
  const Choice& best(const Word& c, std::size_t n);
  Choice core(const Word& c, std::size_t n);
  std::vector<Word> materialize(const Word& c, std::size_t n);
  std::vector<Word> materialize_core(const Word& c, std::size_t n, const Choice& choice);
  std::size_t sub_size(WordView r, std::size_t n);
  std::vector<Word> sub_words(WordView r, std::size_t n);

  ExactCodeProvider exact_;
  std::unordered_map<std::string, Choice> memo_;
};

Code construct_recursive(WordView r, std::size_t n, ExactCodeProvider exact = {});

struct CodeCheck {
  bool valid = true;
  std::optional<std::pair<Word, Word>> conflict;  ///< first confusable pair found

  explicit operator bool() const noexcept { return valid; }
};

/// Pairwise <=3-confusability check over all words.
CodeCheck validate_words(const std::vector<Word>& words);
CodeCheck validate_code(const Code& code);

struct LowerBoundOptions {
  bool materialize = false;  ///< keep every word of the assembled code
  bool validate = true;      ///< check each per-root code pairwise
  ExactCodeProvider exact;   ///< preferred per-root codes; must be thread-safe
  unsigned threads = 0;      ///< 0 = hardware concurrency
};

struct LowerBound {
  std::size_t n = 0;
  std::uint64_t total = 0;
  std::uint64_t canonical_roots = 0;
  std::map<std::string, std::uint64_t> by_rule;  ///< words contributed per rule
  Code code;  ///< only filled when materialize is set
};

/// Sums the best per-root codes over all <=3-irreducible ternary roots of
/// length <= n. Throws std::logic_error if a per-root code fails validation.
LowerBound assemble_lower_bound(std::size_t n, const LowerBoundOptions& options = {});

/// Code file: header "n q size provenance", then one word per line.
void write_code(std::ostream& out, const Code& code);
Code read_code(std::istream& in);

}  // namespace tdcode
