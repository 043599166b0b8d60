#include "tdcode/confusability.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace tdcode {

bool has_region(WordView r) {
  return distinct_symbols(r.first(std::min<std::size_t>(4, r.size()))) >= 3;
}

RegionDescriptor main_and_region(WordView r) {
  if (!has_region(r)) {
    throw PreconditionError("main_and_region: root has no region (fewer than three distinct symbols)");
  }
  // Positions are 1-based in the case names below; symbols past the end of r
  // compare unequal to everything.
  auto at = [&](std::size_t i) -> int { return i <= r.size() ? r[i - 1] : -1; };
  const Symbol r1 = r[0], r2 = r[1], r3 = r[2];
  RegionDescriptor d;
  std::size_t reg_len = 0;
  if (r1 == r3) {
    const Symbol r4 = r[3];
    d.main = {r2, r3, r4};
    if (at(2) != at(5)) {
      reg_len = 4;
      d.w = {r1, r2};
      d.abc = {r1, r4, r2};
    } else if (at(3) != at(6)) {
      reg_len = 5;
      d.w = {r1, r2, r1};
      d.abc = {r4, r2, r1};
    } else {
      reg_len = 6;
      d.w = {r1};
      d.abc = {r2, r1, r4};
      d.ell = 1;
    }
  } else {
    d.main = {r1, r2, r3};
    if (at(1) != at(4)) {
      reg_len = 3;
      d.w = {r1};
      d.abc = {r2, r3, r1};
    } else if (at(2) != at(5)) {
      reg_len = 4;
      d.w = {r1, r2};
      d.abc = {r3, r1, r2};
    } else {
      reg_len = 5;
      d.abc = {r1, r2, r3};
      d.ell = 1;
    }
  }
  d.reg.assign(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(reg_len));
  return d;
}

namespace {

/// Tracks how long a prefix of a stack agrees with a fixed pattern.
template <typename Pattern>
void update_match(std::size_t& matched, std::size_t before, Symbol pushed, std::size_t after,
                  const Pattern& pattern) {
  std::size_t m = matched;
  if (m == before && pattern(before) == static_cast<int>(pushed)) m = before + 1;
  matched = std::min(m, after);
}

}  // namespace

std::size_t ExtScanner::ext_length(const RegionDescriptor& desc, WordView x, ExtStrategy strategy) {
  le3_.clear();
  le2_.clear();
  const std::size_t reg_len = desc.reg.size();
  auto reg_at = [&](std::size_t i) -> int { return i < reg_len ? desc.reg[i] : -1; };
  // Every word of D*(reg) has <=2-root w (abc)^m ab, a prefix of w (abc)^inf.
  auto family_at = [&](std::size_t i) -> int {
    return i < desc.w.size() ? desc.w[i] : desc.abc[(i - desc.w.size()) % 3];
  };
  std::size_t match3 = 0, match2 = 0, best = 0;
  scanned_ = 0;
  for (std::size_t t = 0; t < x.size(); ++t) {
    const Symbol s = x[t];
    ++scanned_;
    std::size_t before = le3_.size();
    le3_.push(s);
    update_match(match3, before, s, le3_.size(), reg_at);
    if (le3_.size() == reg_len && match3 == reg_len) best = t + 1;

    if (strategy == ExtStrategy::early_exit) {
      before = le2_.size();
      le2_.push(s);
      update_match(match2, before, s, le2_.size(), family_at);
      if (match2 + 1 < le2_.size()) break;
    }
  }
  if (best == 0) throw PreconditionError("ext_prefix: no prefix of the word is generated from the region");
  return best;
}

Word ext_prefix(const RegionDescriptor& desc, WordView x, ExtStrategy strategy) {
  ExtScanner scanner;
  const std::size_t len = scanner.ext_length(desc, x, strategy);
  return Word(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(len));
}

namespace {

std::size_t last_index_of(WordView p, Symbol a) {
  for (std::size_t i = p.size(); i-- > 0;) {
    if (p[i] == a) return i;
  }
  throw std::logic_error("region symbol a missing from its extended region");
}

bool is_rotation_of(WordView t, const Symbol* f) {
  for (int s = 0; s < 3; ++s) {
    if (f[0] == t[s % 3] && f[1] == t[(s + 1) % 3] && f[2] == t[(s + 2) % 3]) return true;
  }
  return false;
}

/// Count(main, R_{<=2}(p)) and whether p contains a rotation of main.
struct RegionCounts {
  std::uint32_t main_count = 0;
  bool rotation_present = false;
};

RegionCounts region_counts(WordView main, WordView p, StreamingRoot& le2) {
  le2.clear();
  for (Symbol s : p) le2.push(s);
  RegionCounts out;
  out.main_count = static_cast<std::uint32_t>(count_occurrences(main, le2.stack(), false));
  out.rotation_present = count_occurrences(main, p, true) > 0;
  return out;
}

}  // namespace

Word star_pref(WordView r, WordView x) {
  const RegionDescriptor desc = main_and_region(r);
  const Word p = ext_prefix(desc, x);
  const std::size_t cut = last_index_of(p, desc.a());
  return Word(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(cut));
}

std::size_t count_occurrences(WordView t, WordView x, bool rotations) {
  if (t.size() != 3 || distinct_symbols(t) != 3) {
    throw PreconditionError("count_occurrences: pattern must be three distinct symbols");
  }
  std::size_t n = 0;
  for (std::size_t i = 0; i + 3 <= x.size(); ++i) {
    const Symbol* f = x.data() + i;
    if (rotations ? is_rotation_of(t, f) : (f[0] == t[0] && f[1] == t[1] && f[2] == t[2])) ++n;
  }
  return n;
}

bool confuse(WordView x, WordView y, const ConfuseOptions& options, ConfuseStats* stats) {
  if (x.empty() || y.empty()) throw PreconditionError("confuse: empty word");
  const Word r = root_le_k(x, 3);
  if (r != root_le_k(y, 3)) return false;

  ExtScanner scanner;
  StreamingRoot le2(2);
  ConfuseStats local;
  std::size_t ox = 0, oy = 0, ro = 0;
  bool result = true;
  for (;;) {
    const WordView rv = WordView(r).subspan(ro);
    if (!has_region(rv)) break;
    const RegionDescriptor desc = main_and_region(rv);
    const WordView xs = x.subspan(ox), ys = y.subspan(oy);

    const std::size_t lp = scanner.ext_length(desc, xs, options.strategy);
    local.scanned_total += scanner.last_scanned();
    const std::size_t lq = scanner.ext_length(desc, ys, options.strategy);
    local.scanned_total += scanner.last_scanned();
    local.prefix_total += lp + lq;
    ++local.levels;

    const WordView p = xs.first(lp), q = ys.first(lq);
    const RegionCounts cp = region_counts(desc.main, p, le2);
    const RegionCounts cq = region_counts(desc.main, q, le2);
    const bool proceed = cp.main_count == cq.main_count ||
                         (cp.main_count < cq.main_count && cp.rotation_present) ||
                         (cp.main_count > cq.main_count && cq.rotation_present);
    if (!proceed) {
      result = false;
      break;
    }
    ox += last_index_of(p, desc.a());
    oy += last_index_of(q, desc.a());
    ro += desc.peel_length();
  }
  if (stats) *stats = local;
  return result;
}

std::size_t LabelHash::operator()(const Label& l) const noexcept {
  std::size_t h = WordHash{}(l.root);
  for (const LabelEntry& e : l.entries) {
    h ^= (static_cast<std::size_t>(e.count) << 1 | (e.plus ? 1U : 0U)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

Label compute_label(WordView x, ExtStrategy strategy) {
  if (x.empty()) throw PreconditionError("compute_label: empty word");
  Label label;
  label.root = root_le_k(x, 3);
  ExtScanner scanner;
  StreamingRoot le2(2);
  std::size_t ox = 0, ro = 0;
  for (;;) {
    const WordView rv = WordView(label.root).subspan(ro);
    if (!has_region(rv)) break;
    const RegionDescriptor desc = main_and_region(rv);
    const WordView xs = x.subspan(ox);
    const std::size_t lp = scanner.ext_length(desc, xs, strategy);
    const WordView p = xs.first(lp);
    const RegionCounts c = region_counts(desc.main, p, le2);
    label.entries.push_back({c.main_count, c.rotation_present});
    ox += last_index_of(p, desc.a());
    ro += desc.peel_length();
  }
  return label;
}

bool label_confusable(const Label& lx, const Label& ly) {
  if (lx.root != ly.root) return false;
  if (lx.entries.size() != ly.entries.size()) {
    throw std::logic_error("label_confusable: labels over the same root have different region counts");
  }
  for (std::size_t i = 0; i < lx.entries.size(); ++i) {
    const LabelEntry& ex = lx.entries[i];
    const LabelEntry& ey = ly.entries[i];
    if ((ex.count < ey.count && !ex.plus) || (ex.count > ey.count && !ey.plus)) return false;
  }
  return true;
}

std::size_t count_regions(WordView r) {
  std::size_t m = 0;
  while (has_region(r)) {
    r = r.subspan(main_and_region(r).peel_length());
    ++m;
  }
  return m;
}

std::string format_label(const Label& label, int q) {
  std::string out = format_word(label.root, q);
  out.push_back(':');
  for (const LabelEntry& e : label.entries) {
    out += '(' + std::to_string(e.count) + ',' + (e.plus ? '+' : '-') + ')';
  }
  return out;
}

Label parse_label(std::string_view text, int q) {
  const std::size_t colon = text.find(':');
  if (colon == std::string_view::npos) throw PreconditionError("label: missing ':'");
  Label label;
  label.root = parse_word(text.substr(0, colon), q);
  std::string_view rest = text.substr(colon + 1);
  while (!rest.empty()) {
    const std::size_t close = rest.find(')');
    const std::size_t comma = rest.find(',');
    if (rest.front() != '(' || close == std::string_view::npos || comma == std::string_view::npos ||
        comma > close || close != comma + 2) {
      throw PreconditionError("label: malformed entry near '" + std::string(rest) + "'");
    }
    LabelEntry e;
    auto [ptr, ec] = std::from_chars(rest.data() + 1, rest.data() + comma, e.count);
    if (ec != std::errc{} || ptr != rest.data() + comma || e.count == 0) {
      throw PreconditionError("label: bad count in '" + std::string(rest.substr(0, close + 1)) + "'");
    }
    const char sign = rest[comma + 1];
    if (sign != '+' && sign != '-') throw PreconditionError("label: sign must be + or -");
    e.plus = sign == '+';
    label.entries.push_back(e);
    rest.remove_prefix(close + 1);
  }
  return label;
}

Word replay(const DuplicationTrace& trace) {
  Word cur = trace.start;
  for (const DuplicationStep& s : trace.steps) cur = tandem_duplicate(cur, s);
  return cur;
}

namespace {

using Steps = std::vector<DuplicationStep>;

/// Equivalent shorter-length steps for a length-2/3 duplication of a window
/// with a repeated symbol. Listed in application order.
Steps split_repeated(WordView y, DuplicationStep s) {
  const std::size_t i = s.index;
  if (s.length == 2) return {{i, 1}, {i, 1}};
  const Symbol v0 = y[i], v1 = y[i + 1], v2 = y[i + 2];
  if (v0 == v1 && v1 == v2) return {{i, 2}, {i, 1}};
  if (v0 == v1) return {{i + 1, 2}, {i + 3, 1}};
  if (v1 == v2) return {{i, 2}, {i + 1, 1}};
  return {{i + 1, 2}, {i + 2, 1}};  // v0 == v2
}

/// Rewrites "(i1,k1) then (i2,k2)" with k1 < k2 into steps of non-increasing
/// length, or into steps whose longest length is smaller. Application order.
Steps reorder_pair(DuplicationStep first, DuplicationStep second) {
  const std::size_t i1 = first.index, i2 = second.index;
  const std::size_t k1 = first.length, k2 = second.length;
  if (k1 == 1 && k2 == 3) {
    if (i2 + 2 <= i1) return {{i2, 3}, {i1 + 3, 1}};
    if (i2 + 1 == i1) return {{i1 - 1, 2}, {i1, 1}, {i1 + 3, 1}};
    if (i2 == i1) return {{i1, 2}, {i1, 1}, {i1 + 3, 1}};
    return {{i2 - 1, 3}, {i1, 1}};
  }
  if (k1 == 2 && k2 == 3) {
    if (i2 + 1 <= i1) return {{i2, 3}, {i1 + 3, 2}};
    if (i2 == i1) return {{i1, 2}, {i1, 2}, {i1 + 2, 1}};
    if (i2 == i1 + 1) return {{i1, 2}, {i1, 2}, {i1 + 3, 1}};
    return {{i2 - 2, 3}, {i1, 2}};
  }
  // k1 == 1, k2 == 2
  if (i2 + 1 <= i1) return {{i2, 2}, {i1 + 2, 1}};
  if (i2 == i1) return {{i1, 1}, {i1, 1}, {i1, 1}};
  return {{i2 - 1, 2}, {i1, 1}};
}

}  // namespace

DuplicationTrace normalize_trace(const DuplicationTrace& trace) {
  for (const DuplicationStep& s : trace.steps) {
    if (s.length == 0 || s.length > 3) throw PreconditionError("normalize_trace: step lengths must be 1..3");
  }
  (void)replay(trace);  // validates bounds

  Steps steps = trace.steps;
  for (bool changed = true; changed;) {
    changed = false;
    Word cur = trace.start;
    for (std::size_t j = 0; j < steps.size(); ++j) {
      const DuplicationStep s = steps[j];
      if (s.length >= 2 && distinct_symbols(WordView(cur).subspan(s.index, s.length)) < s.length) {
        Steps repl = split_repeated(cur, s);
        steps.erase(steps.begin() + static_cast<std::ptrdiff_t>(j));
        steps.insert(steps.begin() + static_cast<std::ptrdiff_t>(j), repl.begin(), repl.end());
        changed = true;
        break;
      }
      if (j + 1 < steps.size() && s.length < steps[j + 1].length) {
        Steps repl = reorder_pair(s, steps[j + 1]);
        steps.erase(steps.begin() + static_cast<std::ptrdiff_t>(j),
                    steps.begin() + static_cast<std::ptrdiff_t>(j + 2));
        steps.insert(steps.begin() + static_cast<std::ptrdiff_t>(j), repl.begin(), repl.end());
        changed = true;
        break;
      }
      cur = tandem_duplicate(cur, s);
    }
  }
  return {trace.start, std::move(steps)};
}

}  // namespace tdcode
