#include "tdcode/codes.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <istream>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "tdcode/confusability.hpp"
#include "tdcode/enumeration.hpp"

namespace tdcode {

void Code::normalize() {
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
}

Code construct_irreducible_code(std::size_t n, int k, int q) {
  if (n == 0) throw PreconditionError("construct_irreducible_code: n must be positive");
  if (k != 2 && k != 3) throw PreconditionError("construct_irreducible_code: k must be 2 or 3");
  Code code;
  code.n = n;
  code.q = q;
  code.provenance = "irreducible-k" + std::to_string(k);
  for (std::size_t i = 1; i <= n; ++i) {
    for (const Word& x : enumerate_irreducible(i, q, k)) code.words.push_back(pad_xi(x, n - i));
  }
  code.normalize();
  return code;
}

Code construct_pair_code(WordView r) {
  if (r.size() < 4) throw PreconditionError("construct_pair_code: root must have length >= 4");
  if (!is_irreducible(r, 3, IrreducibleMode::at_most)) {
    throw PreconditionError("construct_pair_code: root is not <=3-irreducible");
  }
  const std::size_t i = r.size();
  auto s = [&](std::size_t k) { return r[k - 1]; };  // 1-based
  auto tail = [&](Word& out, std::size_t from) {
    for (std::size_t k = from; k <= i; ++k) out.push_back(s(k));
  };
  Word x, y;
  if (s(1) != s(3)) {
    x = {s(1), s(2), s(3), s(1), s(2), s(3)};
    tail(x, 4);
    y = {s(1), s(2), s(2), s(3), s(3), s(4), s(4)};
    tail(y, 5);
  } else if (i >= 5) {
    x = {s(1), s(2), s(1), s(4), s(2), s(1), s(4)};
    tail(x, 5);
    y = {s(1), s(2), s(1), s(1), s(4), s(4), s(5), s(5)};
    tail(y, 6);
  } else {
    x = {s(1), s(2), s(1), s(4), s(2), s(1), s(4)};
    y = {s(1), s(2), s(1), s(1), s(4), s(4), s(4)};
  }
  Code code;
  code.n = i + 3;
  code.provenance = "pair";
  code.words = {std::move(x), std::move(y)};
  code.normalize();
  return code;
}

namespace {

// Left column patterns 012.s; the right column prefixes a 1.
struct OneRegionRow {
  const char* suffix;
  const char* minus_tail;
};
constexpr std::array<OneRegionRow, 6> kOneRegionRows{{
    {"", "112"},
    {"0", "11220"},
    {"01", "1122001"},
    {"1", "1121"},
    {"02", "112202"},
    {"010", "11220010"},
}};

Word operator+(Word a, const Word& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

/// Permutation p with p[canonical symbol] = original symbol, padded to a
/// bijection of {0..q-1}.
std::vector<Symbol> inverse_relabeling(WordView original, int q) {
  const std::vector<Symbol> fwd = canonical_relabeling(original, q);
  std::vector<Symbol> inv(fwd.size());
  for (std::size_t s = 0; s < fwd.size(); ++s) inv[fwd[s]] = static_cast<Symbol>(s);
  return inv;
}

struct PatternMatch {
  std::size_t index;
  std::vector<Symbol> to_root;  // pattern symbol -> root symbol
};

std::optional<PatternMatch> match_pattern(WordView r) {
  for (Symbol s : r) {
    if (s > 2) return std::nullopt;
  }
  const Word c = canonical_form(r).word;
  const auto& patterns = one_region_patterns();
  for (std::size_t p = 0; p < patterns.size(); ++p) {
    if (patterns[p].size() != r.size() || canonical_form(patterns[p]).word != c) continue;
    // pattern -> canonical -> root
    const std::vector<Symbol> to_canon = canonical_relabeling(patterns[p], 3);
    const std::vector<Symbol> from_canon = inverse_relabeling(r, 3);
    std::vector<Symbol> to_root(3);
    for (int s = 0; s < 3; ++s) to_root[s] = from_canon[to_canon[s]];
    return PatternMatch{p, std::move(to_root)};
  }
  return std::nullopt;
}

PatternMatch require_pattern(WordView r, const char* what) {
  auto m = match_pattern(r);
  if (!m) throw PreconditionError(std::string(what) + ": root does not have exactly one region");
  return *m;
}

}  // namespace

const std::vector<Word>& one_region_patterns() {
  static const std::vector<Word> patterns = [] {
    std::vector<Word> out;
    for (bool lead : {false, true}) {
      for (const auto& row : kOneRegionRows) {
        Word p = from_digits(std::string(lead ? "1" : "") + "012" + row.suffix);
        out.push_back(std::move(p));
      }
    }
    return out;
  }();
  return patterns;
}

std::optional<std::size_t> one_region_pattern_index(WordView r) {
  auto m = match_pattern(r);
  if (!m) return std::nullopt;
  return m->index;
}

Word one_region_minus_word(WordView r, std::size_t ell) {
  if (ell == 0) throw PreconditionError("one_region_minus_word: ell must be positive");
  const PatternMatch m = require_pattern(r, "one_region_minus_word");
  const auto& row = kOneRegionRows[m.index % 6];
  Word x = from_digits(m.index >= 6 ? "10" : "0");
  for (std::size_t l = 1; l < ell; ++l) x = x + from_digits("112200");
  x = x + from_digits(row.minus_tail);
  return relabel(x, m.to_root);
}

Word one_region_plus_word(WordView r, std::size_t ell) {
  if (ell == 0) throw PreconditionError("one_region_plus_word: ell must be positive");
  const PatternMatch m = require_pattern(r, "one_region_plus_word");
  const auto& row = kOneRegionRows[m.index % 6];
  Word z = from_digits(m.index >= 6 ? "1" : "");
  for (std::size_t l = 0; l < ell; ++l) z = z + from_digits("012");
  z = z + from_digits(row.suffix);
  return relabel(z, m.to_root);
}

std::uint64_t one_region_size(WordView r, std::size_t n) {
  require_pattern(r, "one_region_size");
  if (n < r.size()) throw PreconditionError("one_region_size: n shorter than the root");
  const std::size_t n2 = one_region_minus_word(r, 2).size();
  if (n >= n2) return (n - n2) / 6 + 3;
  if (n >= r.size() + 3) return 2;
  return 1;
}

Code construct_one_region_code(WordView r, std::size_t n) {
  require_pattern(r, "construct_one_region_code");
  if (n < r.size()) throw PreconditionError("construct_one_region_code: n shorter than the root");
  Code code;
  code.n = n;
  code.provenance = "one-region";
  if (n < r.size() + 3) {
    code.words.push_back(pad_xi(r, n - r.size()));
    return code;
  }
  for (std::size_t ell = 1;; ++ell) {
    Word x = one_region_minus_word(r, ell);
    if (x.size() > n) break;
    code.words.push_back(pad_xi(x, n - x.size()));
  }
  const std::size_t ell_z = (n - r.size()) / 3 + 1;
  Word z = one_region_plus_word(r, ell_z);
  code.words.push_back(pad_xi(z, n - z.size()));
  code.normalize();
  return code;
}

// ---------------------------------------------------------------------------

namespace {

struct PrefixRule {
  std::size_t drop = 0;          // leading root symbols removed for the short code
  std::size_t shrink = 0;        // length of each prefix
  std::vector<Word> prefixes;
};

/// Prefix-extension rules for a root with at least three symbols; the short
/// and long variants of the same case share `drop`.
std::vector<PrefixRule> prefix_rules(WordView r) {
  std::vector<PrefixRule> rules;
  if (r.size() < 3) return rules;
  auto at = [&](std::size_t i) -> int { return i <= r.size() ? r[i - 1] : -1; };
  const Symbol a = r[0], b = r[1], c = r[2];
  auto rule = [&](std::size_t drop, std::initializer_list<Word> ps) {
    PrefixRule pr;
    pr.drop = drop;
    pr.prefixes.assign(ps.begin(), ps.end());
    pr.shrink = pr.prefixes.front().size();
    rules.push_back(std::move(pr));
  };
  if (a == c) {
    rule(1, {Word{a}});
  } else if (at(1) != at(4)) {
    rule(1, {Word{a, b, b, b}, Word{a, b, c, a}});
    rule(1, {Word{a, b, b, b, b, b, b, b}, Word{a, b, b, c, c, a, a, b}, Word{a, b, c, a, b, c, a, b}});
  } else if (at(2) != at(5)) {
    rule(2, {Word{a, b, b, b, c}, Word{a, b, c, a, b}});
    rule(2, {Word{a, b, b, c, c, c, c, c, c, c}, Word{a, b, b, c, c, a, a, b, b, c},
             Word{a, b, c, a, b, c, a, b, c, c}});
  } else {
    rule(3, {Word{a, b, b, c, c, a}, Word{a, b, c, a, b, c}});
    rule(3, {Word{a, b, b, c, c, a, a, a, a, a, a, a}, Word{a, b, b, c, c, a, a, b, b, c, c, a},
             Word{a, b, c, a, b, c, a, b, c, a, a, a}});
  }
  return rules;
}

std::string memo_key(const Word& c, std::size_t n) {
  std::string key(c.begin(), c.end());
  key.push_back('#');
  key += std::to_string(n);
  return key;
}

void require_ternary(WordView r) {
  for (Symbol s : r) {
    if (s > 2) throw PreconditionError("RecursiveBuilder: only ternary roots are supported");
  }
}

}  // namespace

RecursiveBuilder::RecursiveBuilder(ExactCodeProvider exact) : exact_(std::move(exact)) {}

const char* RecursiveBuilder::rule_name(Rule rule) {
  switch (rule) {
    case Rule::exact: return "clique";
    case Rule::singleton: return "singleton";
    case Rule::one_region: return "one-region";
    case Rule::pair: return "pair";
    case Rule::padding: return "padding";
    case Rule::prefix_short: return "prefix";
    case Rule::prefix_long: return "prefix-triple";
  }
  return "?";
}

RecursiveBuilder::Choice RecursiveBuilder::core(const Word& c, std::size_t n) {
  Choice top{1, Rule::singleton, false};
  auto consider = [&](std::size_t size, Rule rule) {
    if (size > top.size) top = Choice{static_cast<std::uint32_t>(size), rule, false};
  };
  if (exact_) {
    if (auto words = exact_(c, n)) {
      top = Choice{static_cast<std::uint32_t>(words->size()), Rule::exact, false};
    }
  }
  if (!has_region(c)) return top;
  if (one_region_pattern_index(c)) {
    consider(one_region_size(c, n), Rule::one_region);
    return top;
  }
  const auto rules = prefix_rules(c);
  for (std::size_t k = 0; k < rules.size(); ++k) {
    const PrefixRule& pr = rules[k];
    const WordView sub = WordView(c).subspan(pr.drop);
    if (n < pr.shrink || n - pr.shrink < sub.size()) continue;
    consider(pr.prefixes.size() * sub_size(sub, n - pr.shrink),
             k == 0 ? Rule::prefix_short : Rule::prefix_long);
  }
  if (n > c.size()) consider(best(c, n - 1).size, Rule::padding);
  if (c.size() >= 4 && n >= c.size() + 3) consider(2, Rule::pair);
  return top;
}

const RecursiveBuilder::Choice& RecursiveBuilder::best(const Word& c, std::size_t n) {
  const std::string key = memo_key(c, n);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  Choice choice = core(c, n);
  const Word rc = canonical_form(reverse(c)).word;
  if (rc != c) {
    Choice alt = core(rc, n);
    if (alt.size > choice.size) {
      choice = alt;
      choice.reversed = true;
    }
  }
  return memo_.emplace(key, choice).first->second;
}

std::size_t RecursiveBuilder::sub_size(WordView r, std::size_t n) {
  return best(canonical_form(r).word, n).size;
}

std::vector<Word> RecursiveBuilder::sub_words(WordView r, std::size_t n) {
  const std::vector<Word> words = materialize(canonical_form(r).word, n);
  const std::vector<Symbol> back = inverse_relabeling(r, 3);
  std::vector<Word> out;
  out.reserve(words.size());
  for (const Word& w : words) out.push_back(relabel(w, back));
  return out;
}

std::vector<Word> RecursiveBuilder::materialize(const Word& c, std::size_t n) {
  const Choice choice = best(c, n);
  if (!choice.reversed) return materialize_core(c, n, choice);
  // Build in the cone of the reversed root, then reverse back.
  const Word rev = reverse(c);
  const Word rc = canonical_form(rev).word;
  const std::vector<Symbol> back = inverse_relabeling(rev, 3);
  std::vector<Word> out;
  for (const Word& w : materialize_core(rc, n, core(rc, n))) out.push_back(reverse(relabel(w, back)));
  return out;
}

std::vector<Word> RecursiveBuilder::materialize_core(const Word& c, std::size_t n, const Choice& choice) {
  std::vector<Word> out;
  switch (choice.rule) {
    case Rule::exact: {
      auto words = exact_ ? exact_(c, n) : std::nullopt;
      if (!words) throw std::logic_error("RecursiveBuilder: exact code vanished between calls");
      out = std::move(*words);
      break;
    }
    case Rule::singleton:
      out.push_back(pad_xi(c, n - c.size()));
      break;
    case Rule::one_region:
      out = construct_one_region_code(c, n).words;
      break;
    case Rule::pair:
      for (const Word& w : construct_pair_code(c).words) out.push_back(pad_xi(w, n - w.size()));
      break;
    case Rule::padding:
      for (const Word& w : materialize(c, n - 1)) out.push_back(pad_xi(w, 1));
      break;
    case Rule::prefix_short:
    case Rule::prefix_long: {
      const auto rules = prefix_rules(c);
      const PrefixRule& pr = rules.at(choice.rule == Rule::prefix_short ? 0 : 1);
      const std::vector<Word> tails = sub_words(WordView(c).subspan(pr.drop), n - pr.shrink);
      for (const Word& p : pr.prefixes) {
        for (const Word& t : tails) out.push_back(p + t);
      }
      break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t RecursiveBuilder::size(WordView r, std::size_t n) {
  require_ternary(r);
  if (n < r.size()) throw PreconditionError("RecursiveBuilder: n shorter than the root");
  return sub_size(r, n);
}

std::vector<Word> RecursiveBuilder::build(WordView r, std::size_t n) {
  require_ternary(r);
  if (r.empty()) throw PreconditionError("RecursiveBuilder: empty root");
  if (n < r.size()) throw PreconditionError("RecursiveBuilder: n shorter than the root");
  if (!is_irreducible(r, 3, IrreducibleMode::at_most)) {
    throw PreconditionError("RecursiveBuilder: root is not <=3-irreducible");
  }
  std::vector<Word> out = sub_words(r, n);
  std::sort(out.begin(), out.end());
  return out;
}

RecursiveBuilder::Rule RecursiveBuilder::rule(WordView r, std::size_t n) {
  require_ternary(r);
  return best(canonical_form(r).word, n).rule;
}

Code construct_recursive(WordView r, std::size_t n, ExactCodeProvider exact) {
  RecursiveBuilder builder(std::move(exact));
  Code code;
  code.n = n;
  code.words = builder.build(r, n);
  code.provenance = std::string("recursive:") + RecursiveBuilder::rule_name(builder.rule(r, n));
  return code;
}

CodeCheck validate_words(const std::vector<Word>& words) {
  CodeCheck check;
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = i + 1; j < words.size(); ++j) {
      if (confuse(words[i], words[j])) {
        check.valid = false;
        check.conflict = std::make_pair(words[i], words[j]);
        return check;
      }
    }
  }
  return check;
}

CodeCheck validate_code(const Code& code) { return validate_words(code.words); }

namespace {

const std::array<std::array<Symbol, 3>, 6> kPermutations{{
    {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0},
}};

}  // namespace

LowerBound assemble_lower_bound(std::size_t n, const LowerBoundOptions& options) {
  if (n == 0) throw PreconditionError("assemble_lower_bound: n must be positive");
  std::vector<Word> roots;
  for (std::size_t i = 1; i <= n; ++i) {
    for (Word& c : enumerate_canonical_irreducible(i, 3, 3)) roots.push_back(std::move(c));
  }
  LowerBound result;
  result.n = n;
  result.canonical_roots = roots.size();
  result.code.n = n;
  result.code.provenance = "assembled";

  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, roots.size()));
  std::atomic<std::size_t> next{0};
  std::mutex merge;
  std::exception_ptr failure;

  auto worker = [&] {
    RecursiveBuilder builder(options.exact);
    std::uint64_t total = 0;
    std::map<std::string, std::uint64_t> by_rule;
    std::vector<Word> words;
    try {
      for (std::size_t k = next++; k < roots.size(); k = next++) {
        const Word& c = roots[k];
        const std::uint64_t orbit = canonical_form(c).orbit_size;
        const std::size_t size = builder.size(c, n);
        total += orbit * size;
        by_rule[RecursiveBuilder::rule_name(builder.rule(c, n))] += orbit * size;
        if (!options.validate && !options.materialize) continue;
        const std::vector<Word> code = builder.build(c, n);
        if (code.size() != size) throw std::logic_error("assemble_lower_bound: size mismatch");
        if (options.validate) {
          if (CodeCheck check = validate_words(code); !check) {
            throw std::logic_error("assemble_lower_bound: confusable pair " + format_word(check.conflict->first) +
                                   " / " + format_word(check.conflict->second) + " for root " + format_word(c));
          }
          for (const Word& w : code) {
            if (w.size() != n || root_le_k(w, 3) != c) {
              throw std::logic_error("assemble_lower_bound: word " + format_word(w) + " outside the cone of " +
                                     format_word(c));
            }
          }
        }
        if (options.materialize) {
          std::set<Word> orbit_words;
          for (const auto& perm : kPermutations) {
            const std::vector<Symbol> map(perm.begin(), perm.end());
            for (const Word& w : code) orbit_words.insert(relabel(w, map));
          }
          words.insert(words.end(), orbit_words.begin(), orbit_words.end());
        }
      }
    } catch (...) {
      std::lock_guard lock(merge);
      if (!failure) failure = std::current_exception();
      next = roots.size();
      return;
    }
    std::lock_guard lock(merge);
    result.total += total;
    for (const auto& [rule, count] : by_rule) result.by_rule[rule] += count;
    result.code.words.insert(result.code.words.end(), std::make_move_iterator(words.begin()),
                             std::make_move_iterator(words.end()));
  };

  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  result.code.normalize();
  return result;
}

void write_code(std::ostream& out, const Code& code) {
  out << code.n << ' ' << code.q << ' ' << code.words.size() << ' '
      << (code.provenance.empty() ? "-" : code.provenance) << '\n';
  for (const Word& w : code.words) out << format_word(w, code.q) << '\n';
}

Code read_code(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw PreconditionError("read_code: missing header line");
  std::istringstream hs(header);
  Code code;
  std::size_t size = 0;
  if (!(hs >> code.n >> code.q >> size)) throw PreconditionError("read_code: malformed header '" + header + "'");
  std::getline(hs >> std::ws, code.provenance);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Word w = parse_word(line, code.q);
    if (w.size() != code.n) throw PreconditionError("read_code: word '" + line + "' has the wrong length");
    code.words.push_back(std::move(w));
  }
  if (code.words.size() != size) throw PreconditionError("read_code: header size does not match word count");
  code.normalize();
  if (code.words.size() != size) throw PreconditionError("read_code: duplicate words");
  return code;
}

}  // namespace tdcode
