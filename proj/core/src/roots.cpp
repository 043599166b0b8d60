#include "tdcode/roots.hpp"

#include <algorithm>
#include <string>

namespace tdcode {

StreamingRoot::StreamingRoot(int k) : k_(k) {
  if (k < 1 || k > 3) throw PreconditionError("StreamingRoot: k must be 1, 2 or 3");
}

std::size_t StreamingRoot::push(Symbol s) {
  stack_.push_back(s);
  const std::size_t n = stack_.size();
  for (std::size_t j = 1; j <= static_cast<std::size_t>(k_) && 2 * j <= n; ++j) {
    if (std::equal(stack_.end() - static_cast<std::ptrdiff_t>(2 * j),
                   stack_.end() - static_cast<std::ptrdiff_t>(j), stack_.end() - static_cast<std::ptrdiff_t>(j))) {
      stack_.resize(n - j);
      return j;
    }
  }
  return 0;
}

Word root_le_k(WordView x, int k) {
  if (x.empty()) throw PreconditionError("root_le_k: empty word");
  StreamingRoot root(k);
  for (Symbol s : x) root.push(s);
  return Word(root.stack().begin(), root.stack().end());
}

Word root_exact_k(WordView x, std::size_t k) {
  if (x.empty()) throw PreconditionError("root_exact_k: empty word");
  return remove_duplicates_pass(x, k);
}

bool confusable_root_based(WordView x, WordView y, RootKind kind) {
  if (x.empty() || y.empty()) throw PreconditionError("confusable_root_based: empty word");
  if (kind.mode == RootKind::Mode::exact) {
    if (kind.k == 0) throw PreconditionError("confusable_root_based: k must be positive");
    return root_exact_k(x, kind.k) == root_exact_k(y, kind.k);
  }
  if (kind.k < 1 || kind.k > 2) {
    throw PreconditionError("confusable_root_based: <=" + std::to_string(kind.k) +
                            " confusability is not decided by roots; use confuse()");
  }
  return root_le_k(x, static_cast<int>(kind.k)) == root_le_k(y, static_cast<int>(kind.k));
}

}  // namespace tdcode
