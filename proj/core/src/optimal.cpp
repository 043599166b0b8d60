#include "tdcode/optimal.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "tdcode/roots.hpp"

namespace tdcode {

namespace {

using Bits = std::vector<std::uint64_t>;

bool none(const Bits& b) {
  return std::all_of(b.begin(), b.end(), [](std::uint64_t w) { return w == 0; });
}

void reset(Bits& b, std::size_t v) { b[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }
bool test(const Bits& b, std::size_t v) { return (b[v >> 6] >> (v & 63)) & 1; }

unsigned resolve_threads(unsigned requested, std::size_t jobs) {
  unsigned t = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(t, jobs)));
}

/// Runs body(k) for k in [0, jobs) on a small pool; rethrows the first failure.
template <typename Body>
void parallel_for(std::size_t jobs, unsigned threads, Body body) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  auto worker = [&] {
    try {
      for (std::size_t k = next++; k < jobs; k = next++) body(k);
    } catch (...) {
      std::lock_guard lock(mu);
      if (!failure) failure = std::current_exception();
      next = jobs;
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < resolve_threads(threads, jobs); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

class CliqueSolver {
 public:
  CliqueSolver(std::size_t order, const std::vector<Bits>& rows) : order_(order), words_((order + 63) / 64) {
    // Highest degree first; colouring then follows this numbering.
    std::vector<std::size_t> degree(order);
    for (std::size_t v = 0; v < order; ++v) {
      for (std::uint64_t w : rows[v]) degree[v] += static_cast<std::size_t>(std::popcount(w));
    }
    old_of_.resize(order);
    for (std::size_t v = 0; v < order; ++v) old_of_[v] = v;
    std::stable_sort(old_of_.begin(), old_of_.end(), [&](std::size_t a, std::size_t b) { return degree[a] > degree[b]; });
    std::vector<std::size_t> new_of(order);
    for (std::size_t v = 0; v < order; ++v) new_of[old_of_[v]] = v;
    adj_.assign(order, Bits(words_, 0));
    for (std::size_t a = 0; a < order; ++a) {
      for (std::size_t b = 0; b < order; ++b) {
        if (a != b && test(rows[a], b)) adj_[new_of[a]][new_of[b] >> 6] |= std::uint64_t{1} << (new_of[b] & 63);
      }
    }
  }

  std::vector<std::size_t> solve() {
    if (order_ == 0) return {};
    Bits all(words_, 0);
    for (std::size_t v = 0; v < order_; ++v) all[v >> 6] |= std::uint64_t{1} << (v & 63);
    best_ = {0};
    expand(all);
    std::vector<std::size_t> out;
    for (std::size_t v : best_) out.push_back(old_of_[v]);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  void colour_sort(const Bits& p, std::vector<std::size_t>& verts, std::vector<std::size_t>& colours) const {
    Bits uncoloured = p;
    std::size_t colour = 0;
    while (!none(uncoloured)) {
      ++colour;
      Bits q = uncoloured;
      for (std::size_t w = 0; w < words_; ++w) {
        while (q[w]) {
          const std::size_t v = w * 64 + static_cast<std::size_t>(std::countr_zero(q[w]));
          reset(q, v);
          reset(uncoloured, v);
          for (std::size_t k = w; k < words_; ++k) q[k] &= ~adj_[v][k];
          verts.push_back(v);
          colours.push_back(colour);
        }
      }
    }
  }

  void expand(Bits p) {
    std::vector<std::size_t> verts, colours;
    colour_sort(p, verts, colours);
    for (std::size_t k = verts.size(); k-- > 0;) {
      if (current_.size() + colours[k] <= best_.size()) return;
      const std::size_t v = verts[k];
      current_.push_back(v);
      Bits np(words_);
      for (std::size_t w = 0; w < words_; ++w) np[w] = p[w] & adj_[v][w];
      if (none(np)) {
        if (current_.size() > best_.size()) best_ = current_;
      } else {
        expand(std::move(np));
      }
      current_.pop_back();
      reset(p, v);
    }
  }

  std::size_t order_;
  std::size_t words_;
  std::vector<Bits> adj_;
  std::vector<std::size_t> old_of_;
  std::vector<std::size_t> current_, best_;
};

Label relabel_label(const Label& l, const std::vector<Symbol>& map) {
  return Label{relabel(l.root, map), l.entries};
}

std::vector<Symbol> inverse_of(const std::vector<Symbol>& fwd) {
  std::vector<Symbol> inv(fwd.size());
  for (std::size_t s = 0; s < fwd.size(); ++s) inv[fwd[s]] = static_cast<Symbol>(s);
  return inv;
}

RootOptimum solve_graph(const LabelGraph& g) {
  RootOptimum out;
  out.root = g.root();
  out.n = g.n();
  out.graph_order = g.order();
  const CliqueResult clique = max_clique(g);
  out.value = clique.size;
  for (std::size_t v : clique.members) {
    out.witness.push_back(g.vertex(v).label);
    out.words.push_back(g.vertex(v).word);
  }
  return out;
}

void check_ternary_root(WordView r, const char* what) {
  if (r.empty()) throw PreconditionError(std::string(what) + ": empty root");
  for (Symbol s : r) {
    if (s > 2) throw PreconditionError(std::string(what) + ": only ternary roots are supported");
  }
  if (!is_irreducible(r, 3, IrreducibleMode::at_most)) {
    throw PreconditionError(std::string(what) + ": root is not <=3-irreducible");
  }
}

std::uint64_t canonical_word_count(std::size_t n) {
  // ternary words whose symbols first appear in order 0, 1, 2
  std::uint64_t pow2 = 1, pow3 = 1;
  for (std::size_t i = 1; i < n; ++i) {
    pow2 *= 2;
    pow3 *= 3;
  }
  return 1 + (pow2 - 1) + (pow3 - 2 * pow2 + 1) / 2;
}

}  // namespace

LabelGraph::LabelGraph(Word root, std::size_t n, std::vector<LabelledWord> vertices)
    : root_(std::move(root)), n_(n), vertices_(std::move(vertices)) {
  const std::size_t v = vertices_.size();
  rows_.assign(v, Bits((v + 63) / 64, 0));
  for (std::size_t a = 0; a < v; ++a) {
    for (std::size_t b = a + 1; b < v; ++b) {
      if (!label_confusable(vertices_[a].label, vertices_[b].label)) {
        rows_[a][b >> 6] |= std::uint64_t{1} << (b & 63);
        rows_[b][a >> 6] |= std::uint64_t{1} << (a & 63);
      }
    }
  }
}

bool LabelGraph::adjacent(std::size_t i, std::size_t j) const {
  if (i >= order() || j >= order()) throw PreconditionError("LabelGraph::adjacent: vertex out of range");
  return test(rows_[i], j);
}

std::size_t LabelGraph::edge_count() const {
  std::size_t total = 0;
  for (const Bits& row : rows_) {
    for (std::uint64_t w : row) total += static_cast<std::size_t>(std::popcount(w));
  }
  return total / 2;
}

LabelGraph build_graph(WordView r, std::size_t n, std::size_t budget) {
  return LabelGraph(Word(r.begin(), r.end()), n, enumerate_labels(r, n, budget));
}

std::vector<std::size_t> max_clique(std::size_t order, const std::vector<std::vector<std::uint64_t>>& rows) {
  if (rows.size() != order) throw PreconditionError("max_clique: row count does not match order");
  for (const Bits& row : rows) {
    if (row.size() < (order + 63) / 64) throw PreconditionError("max_clique: short adjacency row");
  }
  return CliqueSolver(order, rows).solve();
}

CliqueResult max_clique(const LabelGraph& graph) {
  CliqueResult out;
  out.members = max_clique(graph.order(), graph.rows());
  out.size = out.members.size();
  return out;
}

OptimumCache::OptimumCache(std::filesystem::path path) : path_(std::move(path)) {
  if (path_.empty() || !std::filesystem::exists(path_)) return;
  std::ifstream in(path_);
  if (!in) throw ResourceError("OptimumCache: cannot read " + path_.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string root, labels;
    std::size_t n = 0;
    Entry e;
    if (!std::getline(ls, root, '\t') || !(ls >> n) || !(ls >> e.value)) {
      throw PreconditionError("OptimumCache: malformed line " + std::to_string(line_no) + " in " + path_.string());
    }
    ls.ignore(1);
    std::getline(ls, labels);
    std::istringstream lab(labels);
    for (std::string tok; lab >> tok;) e.witness.push_back(parse_label(tok));
    entries_[{parse_word(root), n}] = std::move(e);
  }
}

std::optional<std::filesystem::path> OptimumCache::path_from_env() {
  const char* v = std::getenv("TDCODE_CACHE");
  if (!v || !*v) return std::nullopt;
  return std::filesystem::path(v);
}

std::optional<OptimumCache::Entry> OptimumCache::lookup(const Word& canonical_root, std::size_t n) const {
  std::shared_lock lock(mu_);
  auto it = entries_.find({canonical_root, n});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void OptimumCache::store(const Word& canonical_root, std::size_t n, const Entry& entry) {
  std::unique_lock lock(mu_);
  auto [it, inserted] = entries_.try_emplace({canonical_root, n}, entry);
  if (!inserted || path_.empty()) return;
  std::ofstream out(path_, std::ios::app);
  if (!out) throw ResourceError("OptimumCache: cannot write " + path_.string());
  out << format_word(canonical_root) << '\t' << n << '\t' << entry.value << '\t';
  for (std::size_t k = 0; k < entry.witness.size(); ++k) out << (k ? " " : "") << format_label(entry.witness[k]);
  out << '\n';
}

std::size_t OptimumCache::size() const {
  std::shared_lock lock(mu_);
  return entries_.size();
}

RootOptimum t_of_root(WordView r, std::size_t n, const OptimalOptions& options) {
  check_ternary_root(r, "t_of_root");
  if (n < r.size()) throw PreconditionError("t_of_root: n shorter than the root");
  const Word c = canonical_form(r).word;
  const std::vector<Symbol> back = inverse_of(canonical_relabeling(r, 3));
  RootOptimum out;
  if (options.cache) {
    if (auto hit = options.cache->lookup(c, n)) {
      out.root = c;
      out.n = n;
      out.value = hit->value;
      out.witness = hit->witness;
      out.from_cache = true;
    }
  }
  if (!out.from_cache) {
    out = solve_graph(build_graph(c, n, options.budget));
    if (options.cache) options.cache->store(c, n, {out.value, out.witness});
  }
  out.root = Word(r.begin(), r.end());
  for (Label& l : out.witness) l = relabel_label(l, back);
  for (Word& w : out.words) w = relabel(w, back);
  return out;
}

std::map<Word, std::vector<LabelledWord>> label_census(std::size_t n, const OptimalOptions& options) {
  if (n == 0) throw PreconditionError("label_census: n must be positive");
  if (n > 40 || canonical_word_count(n) > options.budget) {
    throw ResourceError("label_census: " + std::to_string(n > 40 ? 0 : canonical_word_count(n)) +
                        " canonical words of length " + std::to_string(n) + " exceed the budget of " +
                        std::to_string(options.budget));
  }
  // Split the canonical words by their first few symbols.
  const std::size_t split = std::min<std::size_t>(n, 8);
  std::vector<Word> prefixes;
  {
    Word p;
    auto grow = [&](auto& self, int fresh) -> void {
      if (p.size() == split) {
        prefixes.push_back(p);
        return;
      }
      for (int s = 0; s < std::min(fresh + 1, 3); ++s) {
        p.push_back(static_cast<Symbol>(s));
        self(self, std::max(fresh, s + 1));
        p.pop_back();
      }
    };
    grow(grow, 0);
  }

  using PerRoot = std::map<Label, Word>;
  std::mutex merge_mu;
  std::unordered_map<Word, PerRoot, WordHash> merged;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;

  auto worker = [&] {
    std::unordered_map<Word, PerRoot, WordHash> local;
    try {
      for (std::size_t k = next++; k < prefixes.size(); k = next++) {
        Word x = prefixes[k];
        const int fresh0 = static_cast<int>(distinct_symbols(x));
        auto visit = [&](auto& self, int fresh) -> void {
          if (x.size() == n) {
            Label l = compute_label(x);
            PerRoot& per = local[l.root];
            auto [it, inserted] = per.try_emplace(std::move(l), x);
            if (!inserted && x < it->second) it->second = x;
            return;
          }
          for (int s = 0; s < std::min(fresh + 1, 3); ++s) {
            x.push_back(static_cast<Symbol>(s));
            self(self, std::max(fresh, s + 1));
            x.pop_back();
          }
        };
        visit(visit, fresh0);
      }
    } catch (...) {
      std::lock_guard lock(merge_mu);
      if (!failure) failure = std::current_exception();
      next = prefixes.size();
      return;
    }
    std::lock_guard lock(merge_mu);
    for (auto& [root, per] : local) {
      PerRoot& into = merged[root];
      for (auto& [label, word] : per) {
        auto [it, inserted] = into.try_emplace(label, word);
        if (!inserted && word < it->second) it->second = word;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < resolve_threads(options.threads, prefixes.size()); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  std::map<Word, std::vector<LabelledWord>> out;
  for (auto& [root, per] : merged) {
    std::vector<LabelledWord>& v = out[root];
    for (auto& [label, word] : per) v.push_back({label, word});
  }
  return out;
}

OptimumOfN t_of_n(std::size_t n, const OptimalOptions& options) {
  if (n == 0) throw PreconditionError("t_of_n: n must be positive");
  std::vector<Word> roots;
  for (std::size_t i = 1; i <= n; ++i) {
    for (Word& c : enumerate_canonical_irreducible(i, 3, 3)) roots.push_back(std::move(c));
  }
  std::sort(roots.begin(), roots.end());
  OptimumOfN result;
  result.n = n;
  result.canonical_roots = roots.size();
  result.per_root.resize(roots.size());

  std::vector<std::size_t> missing;
  for (std::size_t k = 0; k < roots.size(); ++k) {
    RootOptimum& ro = result.per_root[k];
    ro.root = roots[k];
    ro.n = n;
    if (options.cache) {
      if (auto hit = options.cache->lookup(roots[k], n)) {
        ro.value = hit->value;
        ro.witness = hit->witness;
        ro.from_cache = true;
        ++result.cache_hits;
        continue;
      }
    }
    missing.push_back(k);
  }

  if (!missing.empty()) {
    const auto census = label_census(n, options);
    // Cached entries still get words, from the census representatives.
    for (RootOptimum& ro : result.per_root) {
      if (!ro.from_cache) continue;
      auto it = census.find(ro.root);
      if (it == census.end()) continue;
      for (const Label& l : ro.witness) {
        auto pos = std::lower_bound(it->second.begin(), it->second.end(), l,
                                    [](const LabelledWord& a, const Label& b) { return a.label < b; });
        if (pos == it->second.end() || pos->label != l) {
          throw std::logic_error("t_of_n: cached witness label " + format_label(l) + " not realized at length " +
                                 std::to_string(n));
        }
        ro.words.push_back(pos->word);
      }
    }
    parallel_for(missing.size(), options.threads, [&](std::size_t j) {
      const std::size_t k = missing[j];
      auto it = census.find(roots[k]);
      if (it == census.end()) {
        throw std::logic_error("t_of_n: root " + format_word(roots[k]) + " has no descendants in the census");
      }
      RootOptimum ro = solve_graph(LabelGraph(roots[k], n, it->second));
      if (options.cache) options.cache->store(roots[k], n, {ro.value, ro.witness});
      result.per_root[k] = std::move(ro);
    });
  }

  for (const RootOptimum& ro : result.per_root) {
    result.total += canonical_form(ro.root).orbit_size * ro.value;
    result.largest_graph = std::max(result.largest_graph, ro.graph_order);
  }
  return result;
}

void ExactTable::add(const OptimumOfN& result) {
  for (const RootOptimum& ro : result.per_root) {
    if (ro.words.size() != ro.value) continue;
    std::vector<Word> words = ro.words;
    std::sort(words.begin(), words.end());
    codes_[{ro.root, ro.n}] = std::move(words);
  }
  max_n_ = std::max(max_n_, result.n);
}

std::optional<std::vector<Word>> ExactTable::lookup(const Word& canonical_root, std::size_t n) const {
  auto it = codes_.find({canonical_root, n});
  if (it == codes_.end()) return std::nullopt;
  return it->second;
}

ExactCodeProvider ExactTable::provider() const {
  return [this](const Word& c, std::size_t n) { return lookup(c, n); };
}

}  // namespace tdcode
