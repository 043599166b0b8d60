#include <doctest.h>

#include "helpers.hpp"
#include "tdcode/confusability.hpp"
#include "tdcode/enumeration.hpp"

using namespace tdcode;
using namespace tdcode::test;

TEST_CASE("main and region of worked examples") {
  const RegionDescriptor d = main_and_region(W("010201"));
  CHECK(S(d.main) == "102");
  CHECK(S(d.reg) == "0102");
  CHECK(S(d.w) == "01");
  CHECK(S(Word(d.abc.begin(), d.abc.end())) == "021");
  CHECK(d.ell == 0);

  const RegionDescriptor e = main_and_region(W("012"));
  CHECK(S(e.reg) == "012");
  CHECK(S(e.w) == "0");
  CHECK(S(Word(e.abc.begin(), e.abc.end())) == "120");

  const RegionDescriptor f = main_and_region(W("01201"));
  CHECK(S(f.reg) == "01201");
  CHECK(f.w.empty());
  CHECK(f.ell == 1);

  CHECK_THROWS_AS(main_and_region(W("0101")), PreconditionError);
}

TEST_CASE("region parse holds for every irreducible root up to length 10") {
  for (std::size_t n = 3; n <= 10; ++n) {
    for (const Word& r : enumerate_irreducible(n, 3, 3)) {
      if (!has_region(r)) continue;
      const RegionDescriptor d = main_and_region(r);
      Word rebuilt = d.w;
      for (int j = 0; j < d.ell; ++j) rebuilt.insert(rebuilt.end(), d.abc.begin(), d.abc.end());
      rebuilt.push_back(d.a());
      rebuilt.push_back(d.b());
      REQUIRE(rebuilt == d.reg);
      REQUIRE(std::equal(d.reg.begin(), d.reg.end(), r.begin()));
      if (r.size() > d.reg.size()) CHECK(r[d.reg.size()] != d.c());
      CHECK(distinct_symbols(d.main) == 3);
    }
  }
}

TEST_CASE("Ext and *Pref worked examples") {
  const Word x = W("01102021020120111");
  CHECK(S(ext_prefix(main_and_region(W("010201")), x)) == "0110202102");
  CHECK(S(star_pref(W("010201"), x)) == "01102021");
  CHECK(S(ext_prefix(main_and_region(W("012")), W("012"))) == "012");
  CHECK(S(ext_prefix(main_and_region(W("012")), W("0121"))) == "012");
  CHECK(S(star_pref(W("012"), W("012"))) == "0");
  CHECK(S(star_pref(W("012"), W("012012"))) == "0120");
}

TEST_CASE("early-exit Ext scanning matches the full scan") {
  std::mt19937_64 rng(11);
  ExtScanner scanner;
  for (int t = 0; t < 3000; ++t) {
    Word x = random_word(rng, 3 + rng() % 60);
    const Word r = root_le_k(x, 3);
    if (!has_region(r)) continue;
    const RegionDescriptor d = main_and_region(r);
    const std::size_t full = scanner.ext_length(d, x, ExtStrategy::full_scan);
    CHECK(scanner.ext_length(d, x, ExtStrategy::early_exit) == full);
  }
}

TEST_CASE("occurrence counting") {
  CHECK(count_occurrences(W("012"), W("0120120"), false) == 2);
  CHECK(count_occurrences(W("012"), W("120"), true) == 1);
  CHECK(count_occurrences(W("012"), W("2222"), false) == 0);
}

TEST_CASE("confusability of worked examples") {
  CHECK_FALSE(confuse(W("012012"), W("011112")));
  CHECK(confuse(W("01210210"), W("01201210")));
  CHECK(confuse(W("0120"), W("0120")));
  CHECK_FALSE(confuse(W("012"), W("0120")));
}

TEST_CASE("labels of worked examples") {
  CHECK(format_label(compute_label(W("01210210"))) == "01210:(1,+)(2,+)");
  CHECK(format_label(compute_label(W("01201210"))) == "01210:(2,+)(1,+)");
  CHECK(format_label(compute_label(W("01210"))) == "01210:(1,+)(1,+)");
  CHECK(format_label(compute_label(W("0110"))) == "010:");
  CHECK(label_confusable(parse_label("01210:(1,+)(2,+)"), parse_label("01210:(2,+)(1,+)")));
  CHECK_FALSE(label_confusable(parse_label("01210:(1,-)(1,-)"), parse_label("01210:(1,+)(2,+)")));
  const Label l = parse_label("01210:(1,-)(2,+)");
  CHECK(label_confusable(l, l));
  CHECK_FALSE(label_confusable(parse_label("012:(1,+)"), parse_label("0120:(1,+)")));
  CHECK_THROWS_AS(parse_label("012(1,+)"), PreconditionError);
  CHECK_THROWS_AS(parse_label("012:(1,*)"), PreconditionError);
}

TEST_CASE("label text round-trips") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 500; ++t) {
    const Label l = compute_label(random_word(rng, 1 + rng() % 30));
    CHECK(parse_label(format_label(l)) == l);
  }
}

TEST_CASE("region counts") {
  CHECK(count_regions(W("01210")) == 2);
  CHECK(count_regions(W("012")) == 1);
  CHECK(count_regions(W("010")) == 0);
}

TEST_CASE("label path agrees with the direct algorithm") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 4000; ++t) {
    // share a root half of the time so the interesting branch is exercised
    const Word x = random_word(rng, 1 + rng() % 14);
    Word y = x;
    if (t % 2 == 0) {
      const std::size_t steps = rng() % 4;
      for (std::size_t s = 0; s < steps; ++s) {
        const std::size_t len = 1 + rng() % 3;
        if (len > y.size()) continue;
        y = tandem_duplicate(y, {rng() % (y.size() - len + 1), len});
      }
      y = tandem_duplicate(root_le_k(y, 3), {0, 1});
    } else {
      y = random_word(rng, 1 + rng() % 14);
    }
    CHECK(confuse(x, y) == label_confusable(compute_label(x), compute_label(y)));
  }
}

TEST_CASE("labels satisfy the length bound; equality forces all plus") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 4000; ++t) {
    const Word x = random_word(rng, 1 + rng() % 24);
    const Label l = compute_label(x);
    std::size_t implied = l.root.size();
    bool all_plus = true;
    for (const LabelEntry& e : l.entries) {
      REQUIRE(e.count >= 1);
      implied += 3 * (e.count - 1);
      all_plus = all_plus && e.plus;
    }
    CHECK(implied <= x.size());
    if (implied == x.size()) CHECK(all_plus);
  }
}

TEST_CASE("prefix cost stays within three times the input") {
  std::mt19937_64 rng(19);
  for (int t = 0; t < 2000; ++t) {
    const Word x = random_word(rng, 1 + rng() % 200);
    Word y = x;
    for (int s = 0; s < 20; ++s) {
      const std::size_t len = 1 + rng() % 3;
      if (len <= y.size()) y = tandem_duplicate(y, {rng() % (y.size() - len + 1), len});
    }
    ConfuseStats stats;
    confuse(x, y, {}, &stats);
    CHECK(stats.prefix_total <= 3 * (x.size() + y.size()));
  }
}

TEST_CASE("trace normalization keeps the final word") {
  DuplicationTrace a{W("012"), {{0, 1}, {0, 3}}};
  const DuplicationTrace na = normalize_trace(a);
  CHECK(replay(na) == replay(a));

  DuplicationTrace b{W("00"), {{0, 2}}};
  const DuplicationTrace nb = normalize_trace(b);
  CHECK(replay(nb) == W("0000"));
  REQUIRE(nb.steps.size() == 2);
  CHECK(nb.steps[0].length == 1);
  CHECK(nb.steps[1].length == 1);

  DuplicationTrace c{W("012"), {{0, 3}}};
  CHECK(normalize_trace(c).steps == c.steps);

  std::mt19937_64 rng(23);
  for (int t = 0; t < 2000; ++t) {
    DuplicationTrace tr{random_word(rng, 1 + rng() % 6), {}};
    Word cur = tr.start;
    const std::size_t steps = rng() % 6;
    for (std::size_t s = 0; s < steps; ++s) {
      const std::size_t len = 1 + rng() % 3;
      if (len > cur.size()) continue;
      DuplicationStep st{rng() % (cur.size() - len + 1), len};
      cur = tandem_duplicate(cur, st);
      tr.steps.push_back(st);
    }
    const DuplicationTrace n = normalize_trace(tr);
    REQUIRE(replay(n) == cur);
    for (std::size_t s = 1; s < n.steps.size(); ++s) CHECK(n.steps[s].length <= n.steps[s - 1].length);
  }
}
