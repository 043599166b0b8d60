#pragma once

#include <cstddef>

#include "tdcode/word.hpp"

namespace tdcode {

/// Incrementally maintained <=k-root (k in 1..3) of a growing prefix.
///
/// The root of p.s equals the root of root(p).s, and a square in root(p).s can
/// only be a suffix. Removing it leaves a prefix of root(p), so every push
/// costs at most one pop.
class StreamingRoot {
 public:
  explicit StreamingRoot(int k = 3);

  /// Appends s and reduces. Returns the length of the removed duplicate, or 0.
  std::size_t push(Symbol s);

  WordView stack() const noexcept { return stack_; }
  std::size_t size() const noexcept { return stack_.size(); }
  int k() const noexcept { return k_; }
  void clear() noexcept { stack_.clear(); }

 private:
  int k_;
  Word stack_;
};

/// The unique <=k-root for k in {1, 2, 3}.
Word root_le_k(WordView x, int k);

/// The unique k-root (only duplications of length exactly k), any k >= 1.
Word root_exact_k(WordView x, std::size_t k);

/// Which root equality to test in confusable_root_based.
struct RootKind {
  enum class Mode { exact, at_most };
  Mode mode = Mode::at_most;
  std::size_t k = 2;

  static RootKind exact(std::size_t k) { return {Mode::exact, k}; }
  static RootKind at_most(std::size_t k) { return {Mode::at_most, k}; }
};

/// k-confusability (any k) and <=k-confusability (k <= 2) by root equality.
/// <=3 is rejected: equal <=3-roots are necessary but not sufficient.
bool confusable_root_based(WordView x, WordView y, RootKind kind);

}  // namespace tdcode
