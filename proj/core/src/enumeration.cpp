#include "tdcode/enumeration.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <limits>
#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "tdcode/roots.hpp"

namespace tdcode {

namespace {

bool suffix_square_up_to(const Word& s, int k) {
  const std::size_t n = s.size();
  for (std::size_t j = 1; j <= static_cast<std::size_t>(k) && 2 * j <= n; ++j) {
    if (std::equal(s.end() - static_cast<std::ptrdiff_t>(2 * j), s.end() - static_cast<std::ptrdiff_t>(j),
                   s.end() - static_cast<std::ptrdiff_t>(j))) {
      return true;
    }
  }
  return false;
}

void check_irreducible_args(std::size_t n, int q, int k) {
  if (n == 0) throw PreconditionError("enumerate_irreducible: n must be positive");
  if (q < 2 || q > kMaxAlphabet) throw PreconditionError("enumerate_irreducible: bad alphabet size");
  if (k < 1 || k > 3) throw PreconditionError("enumerate_irreducible: k must be 1, 2 or 3");
}

// `fresh` is the smallest unused symbol when only canonical words are wanted,
// and q otherwise.
void charge(std::size_t& used, std::size_t budget, const char* what);

template <typename Visit>
void irreducible_dfs(Word& prefix, std::size_t n, int q, int k, bool canonical, int fresh, Visit& visit,
                     std::size_t& used, std::size_t budget) {
  charge(used, budget, "irreducible word enumeration");
  if (prefix.size() == n) {
    visit(prefix);
    return;
  }
  const int top = canonical ? std::min(fresh + 1, q) : q;
  for (int s = 0; s < top; ++s) {
    prefix.push_back(static_cast<Symbol>(s));
    if (!suffix_square_up_to(prefix, k)) {
      irreducible_dfs(prefix, n, q, k, canonical, std::max(fresh, s + 1), visit, used, budget);
    }
    prefix.pop_back();
  }
}

using WordSet = std::unordered_set<Word, WordHash>;

void charge(std::size_t& used, std::size_t budget, const char* what) {
  if (++used > budget) {
    throw ResourceError(std::string(what) + ": state budget of " + std::to_string(budget) + " words exceeded");
  }
}

/// Generates cone layers one length at a time, keeping only the three most
/// recent layers in memory.
class LayeredCone {
 public:
  LayeredCone(WordView origin, int max_dup, std::size_t budget, const char* what)
      : origin_(origin.begin(), origin.end()), max_dup_(max_dup), budget_(budget), what_(what) {}

  /// Builds and returns the layer of words of length `len`. Calls must use
  /// consecutive lengths starting at |origin|.
  const WordSet& next_layer(std::size_t len) {
    WordSet layer;
    if (len == origin_.size()) {
      layer.insert(origin_);
      charge(used_, budget_, what_);
    }
    for (int k = 1; k <= max_dup_; ++k) {
      if (len < origin_.size() + static_cast<std::size_t>(k)) continue;
      const WordSet* src = layer_at(len - static_cast<std::size_t>(k));
      if (!src) continue;
      for (const Word& w : *src) {
        for (std::size_t i = 0; i + static_cast<std::size_t>(k) <= w.size(); ++i) {
          Word d = tandem_duplicate(w, {i, static_cast<std::size_t>(k)});
          if (layer.insert(std::move(d)).second) charge(used_, budget_, what_);
        }
      }
    }
    layers_.emplace_back(len, std::move(layer));
    while (layers_.size() > 3) layers_.pop_front();
    return layers_.back().second;
  }

  std::size_t used() const noexcept { return used_; }

 private:
  const WordSet* layer_at(std::size_t len) const {
    for (const auto& [l, set] : layers_) {
      if (l == len) return &set;
    }
    return nullptr;
  }

  Word origin_;
  int max_dup_;
  std::size_t budget_;
  const char* what_;
  std::size_t used_ = 0;
  std::deque<std::pair<std::size_t, WordSet>> layers_;
};

bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

std::vector<Word> enumerate_irreducible(std::size_t n, int q, int k, std::size_t budget) {
  check_irreducible_args(n, q, k);
  std::vector<Word> out;
  Word prefix;
  std::size_t used = 0;
  auto visit = [&](const Word& w) { out.push_back(w); };
  irreducible_dfs(prefix, n, q, k, false, 0, visit, used, budget);
  return out;
}

std::vector<Word> enumerate_canonical_irreducible(std::size_t n, int q, int k) {
  check_irreducible_args(n, q, k);
  std::vector<Word> out;
  Word prefix;
  std::size_t used = 0;
  auto visit = [&](const Word& w) { out.push_back(w); };
  irreducible_dfs(prefix, n, q, k, true, 0, visit, used, std::numeric_limits<std::size_t>::max());
  return out;
}

std::uint64_t count_irreducible(std::size_t n, int q, int k, std::size_t budget) {
  check_irreducible_args(n, q, k);
  std::uint64_t count = 0;
  Word prefix;
  std::size_t used = 0;
  auto visit = [&](const Word&) { ++count; };
  irreducible_dfs(prefix, n, q, k, false, 0, visit, used, budget);
  return count;
}

std::vector<std::uint64_t> count_irreducible_by_length(std::size_t n, int q, int k) {
  check_irreducible_args(n, q, k);
  std::vector<std::uint64_t> counts(n + 1, 0);
  Word prefix;
  // every irreducible prefix is itself an irreducible word
  auto walk = [&](auto& self) -> void {
    ++counts[prefix.size()];
    if (prefix.size() == n) return;
    for (int s = 0; s < q; ++s) {
      prefix.push_back(static_cast<Symbol>(s));
      if (!suffix_square_up_to(prefix, k)) self(self);
      prefix.pop_back();
    }
  };
  walk(walk);
  counts[0] = 0;
  return counts;
}

bool ConeFrontier::contains(WordView x) const {
  Word key(x.begin(), x.end());
  return std::binary_search(members.begin(), members.end(), key, shortlex_less);
}

ConeFrontier descendant_cone(WordView x, std::size_t max_len, std::size_t budget, int max_dup) {
  if (x.empty()) throw PreconditionError("descendant_cone: empty word");
  if (max_len < x.size()) throw PreconditionError("descendant_cone: max_len shorter than the origin");
  if (max_dup < 1 || max_dup > 3) throw PreconditionError("descendant_cone: duplication length must be 1..3");
  ConeFrontier cone;
  cone.origin.assign(x.begin(), x.end());
  cone.max_len = max_len;
  LayeredCone layers(x, max_dup, budget, "descendant_cone");
  for (std::size_t len = x.size(); len <= max_len; ++len) {
    const WordSet& layer = layers.next_layer(len);
    const std::size_t before = cone.members.size();
    cone.members.insert(cone.members.end(), layer.begin(), layer.end());
    std::sort(cone.members.begin() + static_cast<std::ptrdiff_t>(before), cone.members.end());
  }
  return cone;
}

namespace {

/// Searches both cones length by length. When `soft_budget` is set, running
/// out of budget ends the search instead of throwing.
OracleResult layered_oracle(WordView x, WordView y, std::size_t max_len, std::size_t budget, bool soft_budget) {
  if (x.empty() || y.empty()) throw PreconditionError("oracle_confusable: empty word");
  if (max_len < std::max(x.size(), y.size())) {
    throw PreconditionError("oracle_confusable: bound shorter than the inputs");
  }
  OracleResult result;
  LayeredCone cx(x, 3, budget, "oracle_confusable");
  LayeredCone cy(y, 3, budget, "oracle_confusable");
  const std::size_t lo = std::min(x.size(), y.size());
  try {
    for (std::size_t len = lo; len <= max_len; ++len) {
      const WordSet* lx = len >= x.size() ? &cx.next_layer(len) : nullptr;
      const WordSet* ly = len >= y.size() ? &cy.next_layer(len) : nullptr;
      if (lx && ly) {
        const WordSet& small = lx->size() <= ly->size() ? *lx : *ly;
        const WordSet& large = lx->size() <= ly->size() ? *ly : *lx;
        for (const Word& w : small) {
          if (large.count(w) && (!result.witness || w < *result.witness)) result.witness = w;
        }
      }
      result.bound = len;
      if (result.witness) {
        result.verdict = OracleResult::Verdict::confusable;
        return result;
      }
    }
  } catch (const ResourceError&) {
    if (!soft_budget) throw;
  }
  return result;
}

}  // namespace

OracleResult oracle_confusable(WordView x, WordView y, std::size_t max_len, std::size_t budget) {
  return layered_oracle(x, y, max_len, budget, false);
}

OracleResult oracle_confusable(WordView x, WordView y) {
  const std::size_t base = std::max(x.size(), y.size());
  constexpr std::size_t kHardCapExtra = 64;
  constexpr std::size_t kSoftBudget = 2'000'000;
  OracleResult last;
  for (std::size_t extra = 16; extra <= kHardCapExtra; extra *= 2) {
    last = layered_oracle(x, y, base + extra, kSoftBudget, true);
    if (last.confusable() || last.bound < base + extra) break;
  }
  return last;
}

std::vector<Word> distinct_triplet_le2_roots(WordView x, std::size_t max_len, std::size_t budget) {
  if (x.empty()) throw PreconditionError("distinct_triplet_le2_roots: empty word");
  WordSet seen{Word(x.begin(), x.end())};
  std::vector<Word> frontier{Word(x.begin(), x.end())};
  std::size_t used = 1;
  std::unordered_set<Word, WordHash> roots;
  while (!frontier.empty()) {
    std::vector<Word> next;
    for (const Word& w : frontier) {
      roots.insert(root_le_k(w, 2));
      if (w.size() + 3 > max_len) continue;
      for (std::size_t i = 0; i + 3 <= w.size(); ++i) {
        if (w[i] == w[i + 1] || w[i + 1] == w[i + 2] || w[i] == w[i + 2]) continue;
        Word d = tandem_duplicate(w, {i, 3});
        if (seen.insert(d).second) {
          charge(used, budget, "distinct_triplet_le2_roots");
          next.push_back(std::move(d));
        }
      }
    }
    frontier = std::move(next);
  }
  std::vector<Word> out(roots.begin(), roots.end());
  std::sort(out.begin(), out.end());
  return out;
}

bool oracle_confusable_reduced(WordView x, WordView y, std::size_t max_len, std::size_t budget) {
  const std::vector<Word> rx = distinct_triplet_le2_roots(x, max_len, budget);
  const std::vector<Word> ry = distinct_triplet_le2_roots(y, max_len, budget);
  std::size_t i = 0, j = 0;
  while (i < rx.size() && j < ry.size()) {
    if (rx[i] == ry[j]) return true;
    if (rx[i] < ry[j]) ++i; else ++j;
  }
  return false;
}

std::vector<LabelledWord> enumerate_labels(WordView r, std::size_t n, std::size_t budget) {
  if (r.empty()) throw PreconditionError("enumerate_labels: empty root");
  if (n < r.size()) throw PreconditionError("enumerate_labels: n shorter than the root");
  if (!is_irreducible(r, 3, IrreducibleMode::at_most)) {
    throw PreconditionError("enumerate_labels: root is not <=3-irreducible");
  }
  LayeredCone cone(r, 3, budget, "enumerate_labels");
  const WordSet* layer = nullptr;
  for (std::size_t len = r.size(); len <= n; ++len) layer = &cone.next_layer(len);

  std::map<Label, Word> best;
  for (const Word& word : *layer) {
    Label l = compute_label(word);
    auto [it, inserted] = best.try_emplace(std::move(l), word);
    if (!inserted && word < it->second) it->second = word;
  }
  std::vector<LabelledWord> out;
  out.reserve(best.size());
  for (auto& [label, word] : best) out.push_back({label, word});
  return out;
}

std::vector<Symbol> canonical_relabeling(WordView x, int q) {
  if (q < 2 || q > kMaxAlphabet) throw PreconditionError("canonical_form: bad alphabet size");
  std::vector<int> map(static_cast<std::size_t>(q), -1);
  int next = 0;
  for (Symbol s : x) {
    if (s >= q) throw PreconditionError("canonical_form: symbol outside alphabet");
    if (map[s] < 0) map[s] = next++;
  }
  for (auto& m : map) {
    if (m < 0) m = next++;
  }
  return std::vector<Symbol>(map.begin(), map.end());
}

Word relabel(WordView x, const std::vector<Symbol>& mapping) {
  Word out;
  out.reserve(x.size());
  for (Symbol s : x) out.push_back(mapping.at(s));
  return out;
}

CanonicalForm canonical_form(WordView x, int q) {
  CanonicalForm cf;
  cf.word = relabel(x, canonical_relabeling(x, q));
  const std::size_t d = distinct_symbols(x);
  for (std::size_t i = 0; i < d; ++i) cf.orbit_size *= static_cast<std::uint64_t>(q) - i;
  return cf;
}

}  // namespace tdcode
