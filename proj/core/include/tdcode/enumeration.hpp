#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "tdcode/confusability.hpp"
#include "tdcode/word.hpp"

namespace tdcode {

inline constexpr std::size_t kDefaultStateBudget = 20'000'000;

/// All <=k-irreducible words of length n over an alphabet of size q, in
/// lexicographic order. Built by extending only irreducible prefixes; throws
/// ResourceError once more than `budget` prefixes have been visited.
std::vector<Word> enumerate_irreducible(std::size_t n, int q, int k, std::size_t budget = kDefaultStateBudget);

/// |Irr_{<=k}(n, q)| without materializing the words.
std::uint64_t count_irreducible(std::size_t n, int q, int k, std::size_t budget = kDefaultStateBudget);

/// result[i] = |Irr_{<=k}(i, q)| for i = 1..n (result[0] = 0), from one DFS.
std::vector<std::uint64_t> count_irreducible_by_length(std::size_t n, int q, int k);

/// The irreducible words of length n that are fixed by canonical_form (new
/// symbols appear in increasing order), in lexicographic order.
std::vector<Word> enumerate_canonical_irreducible(std::size_t n, int q, int k);

/// Truncated <=3-descendant cone: every descendant of origin of length <= max_len.
struct ConeFrontier {
  Word origin;
  std::size_t max_len = 0;
  std::vector<Word> members;  ///< sorted by (length, lexicographic)

  bool contains(WordView x) const;
};

/// Breadth-first closure of x under duplications of length <= 3 (or <= max_dup).
/// Throws ResourceError once more than `budget` words have been generated.
ConeFrontier descendant_cone(WordView x, std::size_t max_len,
                             std::size_t budget = kDefaultStateBudget, int max_dup = 3);

struct OracleResult {
  enum class Verdict { confusable, no_witness_up_to_bound };
  Verdict verdict = Verdict::no_witness_up_to_bound;
  std::optional<Word> witness;  ///< a shortest common descendant when confusable
  std::size_t bound = 0;        ///< largest descendant length examined

  bool confusable() const noexcept { return verdict == Verdict::confusable; }
};

/// Bounded brute force: grows both cones one length at a time and reports the
/// first (shortest) common member. Sound when it confirms; a negative answer
/// only covers descendants of length <= max_len.
OracleResult oracle_confusable(WordView x, WordView y, std::size_t max_len,
                               std::size_t budget = kDefaultStateBudget);

/// Like oracle_confusable with the bound max(|x|,|y|) + 16, doubling the extra
/// length up to +64 while a 2M-word budget allows; the last completed bound is
/// reported when the budget runs out.
OracleResult oracle_confusable(WordView x, WordView y);

/// Bounded decision through the reordering normal form: x and y have a common
/// descendant of length <= max_len iff some descendants x', y' of length
/// <= max_len, reached by duplicating three distinct symbols only, share a
/// <=2-root. Explores far fewer words than the plain cone search.
bool oracle_confusable_reduced(WordView x, WordView y, std::size_t max_len,
                               std::size_t budget = kDefaultStateBudget);

/// The <=2-roots of all descendants of x of length <= max_len reached by
/// duplicating distinct triples only. Sorted.
std::vector<Word> distinct_triplet_le2_roots(WordView x, std::size_t max_len,
                                             std::size_t budget = kDefaultStateBudget);

/// A label together with one word of the requested length carrying it.
struct LabelledWord {
  Label label;
  Word word;
};

/// Labels of every length-n word in the cone of the irreducible root r, each
/// with the lexicographically smallest word realizing it. Sorted by label.
std::vector<LabelledWord> enumerate_labels(WordView r, std::size_t n,
                                           std::size_t budget = kDefaultStateBudget);

struct CanonicalForm {
  Word word;
  std::uint64_t orbit_size = 1;
};

/// Relabels symbols by first occurrence (first symbol -> 0, next new -> 1, ...).
/// orbit_size = q!/(q-d)! for d distinct symbols.
CanonicalForm canonical_form(WordView x, int q = kDefaultAlphabet);

/// The permutation applied by canonical_form, padded to a bijection on the
/// alphabet: result[old_symbol] = new_symbol.
std::vector<Symbol> canonical_relabeling(WordView x, int q = kDefaultAlphabet);

Word relabel(WordView x, const std::vector<Symbol>& mapping);

}  // namespace tdcode
