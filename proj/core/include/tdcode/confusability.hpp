#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tdcode/roots.hpp"
#include "tdcode/word.hpp"

namespace tdcode {

/// Parse of the first region of a <=3-irreducible root r.
///
/// reg = w (abc)^ell ab is a prefix of r, and main is the first factor of r
/// with three distinct symbols (a rotation of abc).
struct RegionDescriptor {
  Word main;
  Word reg;
  Word w;
  std::array<Symbol, 3> abc{};
  int ell = 0;

  Symbol a() const noexcept { return abc[0]; }
  Symbol b() const noexcept { return abc[1]; }
  Symbol c() const noexcept { return abc[2]; }
  /// Number of leading root symbols dropped when moving to the next region.
  std::size_t peel_length() const noexcept { return w.size() + 3 * static_cast<std::size_t>(ell); }
};

/// True iff r has at least one region, i.e. at least three distinct symbols.
/// For an irreducible root only the first four symbols need inspecting.
bool has_region(WordView r);

/// Throws PreconditionError if the first four symbols of r hold fewer than
/// three distinct symbols.
RegionDescriptor main_and_region(WordView r);

enum class ExtStrategy {
  /// Stream the whole remaining word; the reference path.
  full_scan,
  /// Stop once the <=2-root of the scanned prefix has a frozen prefix that
  /// leaves w(abc)^* . The stack of a <=2-root never loses more than one
  /// symbol from its current length, so that prefix can no longer change.
  early_exit,
};

/// Reusable scanning buffers for Ext computations.
class ExtScanner {
 public:
  /// Length of the longest prefix of x whose <=3-root equals desc.reg.
  /// Throws PreconditionError when no prefix qualifies.
  std::size_t ext_length(const RegionDescriptor& desc, WordView x,
                         ExtStrategy strategy = ExtStrategy::early_exit);

  /// Number of symbols consumed by the most recent ext_length call.
  std::size_t last_scanned() const noexcept { return scanned_; }

 private:
  StreamingRoot le3_{3};
  StreamingRoot le2_{2};
  std::size_t scanned_ = 0;
};

Word ext_prefix(const RegionDescriptor& desc, WordView x,
                ExtStrategy strategy = ExtStrategy::early_exit);

/// Ext(Reg(r), x) cut just before the last occurrence of a.
Word star_pref(WordView r, WordView x);

/// Overlapping occurrences of the three-symbol word t in x, or of any of its
/// rotations when `rotations` is set.
std::size_t count_occurrences(WordView t, WordView x, bool rotations);

struct ConfuseOptions {
  ExtStrategy strategy = ExtStrategy::early_exit;
};

/// Work counters from one confuse() call.
struct ConfuseStats {
  std::size_t levels = 0;        ///< regions peeled
  std::size_t prefix_total = 0;  ///< sum of |p_i| + |q_i| over all levels
  std::size_t scanned_total = 0; ///< symbols streamed while computing Ext
};

/// <=3-confusability: true iff the <=3-descendant cones of x and y intersect.
bool confuse(WordView x, WordView y, const ConfuseOptions& options = {},
             ConfuseStats* stats = nullptr);

struct LabelEntry {
  std::uint32_t count = 0;
  bool plus = true;

  friend auto operator<=>(const LabelEntry&, const LabelEntry&) = default;
};

/// (root, (c_1, d_1), ..., (c_m, d_m)); determines <=3-confusability within
/// a root's cone.
struct Label {
  Word root;
  std::vector<LabelEntry> entries;

  friend auto operator<=>(const Label&, const Label&) = default;
  friend bool operator==(const Label&, const Label&) = default;
};

struct LabelHash {
  std::size_t operator()(const Label& l) const noexcept;
};

Label compute_label(WordView x, ExtStrategy strategy = ExtStrategy::early_exit);

/// Decides confusability of two words from their labels. Labels with
/// different roots are never confusable.
bool label_confusable(const Label& lx, const Label& ly);

/// Number of region-peeling steps before fewer than three distinct symbols remain.
std::size_t count_regions(WordView r);

/// "root:(c1,s1)(c2,s2)..." with s in {+,-}.
std::string format_label(const Label& label, int q = kDefaultAlphabet);
Label parse_label(std::string_view text, int q = kDefaultAlphabet);

struct DuplicationTrace {
  Word start;
  std::vector<DuplicationStep> steps;
};

/// Applies the steps in order; throws PreconditionError on an out-of-range step.
Word replay(const DuplicationTrace& trace);

/// Rewrites a trace into an equivalent one (same final word) whose step
/// lengths are non-increasing and whose steps of length 2 or 3 copy pairwise
/// distinct symbols. Lengths above 3 are rejected.
DuplicationTrace normalize_trace(const DuplicationTrace& trace);

}  // namespace tdcode
