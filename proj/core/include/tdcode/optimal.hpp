#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "tdcode/codes.hpp"
#include "tdcode/confusability.hpp"
#include "tdcode/enumeration.hpp"
#include "tdcode/word.hpp"

namespace tdcode {

/// Labels of the length-n words in one root's cone; an edge joins two labels
/// whose words are not confusable.
class LabelGraph {
 public:
  LabelGraph(Word root, std::size_t n, std::vector<LabelledWord> vertices);

  const Word& root() const noexcept { return root_; }
  std::size_t n() const noexcept { return n_; }
  std::size_t order() const noexcept { return vertices_.size(); }
  const LabelledWord& vertex(std::size_t i) const { return vertices_.at(i); }
  const std::vector<LabelledWord>& vertices() const noexcept { return vertices_; }
  bool adjacent(std::size_t i, std::size_t j) const;
  std::size_t edge_count() const;
  /// Bitset rows, 64 vertices per word.
  const std::vector<std::vector<std::uint64_t>>& rows() const noexcept { return rows_; }

 private:
  Word root_;
  std::size_t n_;
  std::vector<LabelledWord> vertices_;
  std::vector<std::vector<std::uint64_t>> rows_;
};

LabelGraph build_graph(WordView r, std::size_t n, std::size_t budget = kDefaultStateBudget);

/// Exact maximum clique by branch and bound with greedy colouring bounds.
/// `rows` is a symmetric bitset adjacency matrix without self loops.
std::vector<std::size_t> max_clique(std::size_t order, const std::vector<std::vector<std::uint64_t>>& rows);

struct CliqueResult {
  std::size_t size = 0;
  std::vector<std::size_t> members;  ///< sorted vertex indices
};
CliqueResult max_clique(const LabelGraph& graph);

/// Persistent store of optimal per-root values, keyed by (canonical root, n).
/// Line format: root<TAB>n<TAB>T<TAB>space-separated witness labels.
class OptimumCache {
 public:
  struct Entry {
    std::size_t value = 0;
    std::vector<Label> witness;
  };

  /// Loads the file if it exists; writes append to it. An empty path keeps
  /// the cache in memory only.
  explicit OptimumCache(std::filesystem::path path = {});

  /// Path from the TDCODE_CACHE environment variable, if set and non-empty.
  static std::optional<std::filesystem::path> path_from_env();

  std::optional<Entry> lookup(const Word& canonical_root, std::size_t n) const;
  void store(const Word& canonical_root, std::size_t n, const Entry& entry);
  std::size_t size() const;
  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
  mutable std::shared_mutex mu_;
  std::map<std::pair<Word, std::size_t>, Entry> entries_;
};

struct OptimalOptions {
  std::size_t budget = kDefaultStateBudget;  ///< words enumerated per cone or census
  OptimumCache* cache = nullptr;
  unsigned threads = 0;  ///< 0 = hardware concurrency
};

struct RootOptimum {
  Word root;
  std::size_t n = 0;
  std::size_t value = 0;
  std::size_t graph_order = 0;     ///< 0 when answered from the cache
  std::vector<Label> witness;      ///< labels of an optimal code
  std::vector<Word> words;         ///< one word per witness label (empty on cache hits)
  bool from_cache = false;
};

/// T(n, r) from the label graph of r's cone (built by breadth-first search).
RootOptimum t_of_root(WordView r, std::size_t n, const OptimalOptions& options = {});

/// Label sets of every canonical root at length n, gathered by labelling
/// each canonical word of length n once (a word's root is canonical iff the
/// word is). Keys are canonical roots; vertices are sorted by label.
std::map<Word, std::vector<LabelledWord>> label_census(std::size_t n, const OptimalOptions& options = {});

struct OptimumOfN {
  std::size_t n = 0;
  std::uint64_t total = 0;
  std::size_t canonical_roots = 0;
  std::size_t largest_graph = 0;
  std::size_t cache_hits = 0;
  std::vector<RootOptimum> per_root;  ///< canonical roots, in root order
};

/// T(n): sum over canonical roots of orbit size times T(n, root).
OptimumOfN t_of_n(std::size_t n, const OptimalOptions& options = {});

/// Optimal per-root codes for every length up to max_n, usable as an
/// ExactCodeProvider for the recursive builder.
class ExactTable {
 public:
  void add(const OptimumOfN& result);
  std::optional<std::vector<Word>> lookup(const Word& canonical_root, std::size_t n) const;
  ExactCodeProvider provider() const;
  std::size_t max_n() const noexcept { return max_n_; }

 private:
  std::map<std::pair<Word, std::size_t>, std::vector<Word>> codes_;
  std::size_t max_n_ = 0;
};

}  // namespace tdcode
