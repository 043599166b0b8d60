#include <doctest.h>

#include <sstream>

#include "helpers.hpp"
#include "tdcode/bounds.hpp"
#include "tdcode/codes.hpp"
#include "tdcode/confusability.hpp"
#include "tdcode/enumeration.hpp"

using namespace tdcode;
using namespace tdcode::test;

TEST_CASE("irreducible-word codes") {
  const Code c6 = construct_irreducible_code(6, 3);
  CHECK(c6.size() == 111);
  CHECK(validate_code(c6));
  CHECK(construct_irreducible_code(5, 3).size() == 69);
  const Code c1 = construct_irreducible_code(1, 2);
  CHECK(c1.words == std::vector<Word>{W("0"), W("1"), W("2")});
  for (std::size_t n = 1; n <= 20; ++n) CHECK(construct_irreducible_code(n, 3).size() == constr1_size(n));
}

TEST_CASE("pair codes") {
  CHECK(construct_pair_code(W("0120")).words == std::vector<Word>{W("0112200"), W("0120120")});
  CHECK(construct_pair_code(W("0102")).words == std::vector<Word>{W("0100222"), W("0102102")});
  CHECK_THROWS_AS(construct_pair_code(W("012")), PreconditionError);
  for (std::size_t len = 4; len <= 9; ++len) {
    for (const Word& r : enumerate_irreducible(len, 3, 3)) {
      const Code c = construct_pair_code(r);
      REQUIRE(c.size() == 2);
      CHECK(c.n == len + 3);
      for (const Word& w : c.words) CHECK(root_le_k(w, 3) == r);
      CHECK_FALSE(label_confusable(compute_label(c.words[0]), compute_label(c.words[1])));
    }
  }
}

TEST_CASE("one-region codes follow the closed form") {
  CHECK(one_region_size(W("012"), 10) == 3);
  CHECK(one_region_size(W("012"), 6) == 2);
  CHECK(one_region_size(W("012"), 4) == 1);
  CHECK_THROWS_AS(construct_one_region_code(W("01210"), 10), PreconditionError);
  for (const Word& p : one_region_patterns()) {
    for (std::size_t n = p.size(); n <= 40; ++n) {
      const Code c = construct_one_region_code(p, n);
      REQUIRE(c.size() == one_region_size(p, n));
      for (const Word& w : c.words) REQUIRE(root_le_k(w, 3) == p);
      if (n <= 24) CHECK(validate_code(c));
    }
  }
}

TEST_CASE("code validation") {
  CHECK(validate_words({W("012012"), W("011112")}));
  const CodeCheck bad = validate_words({W("012012"), W("012222")});
  CHECK_FALSE(bad);
  REQUIRE(bad.conflict);
}

TEST_CASE("recursive codes are valid and never below the base constructions") {
  RecursiveBuilder builder;
  for (std::size_t len = 3; len <= 7; ++len) {
    for (const Word& r : enumerate_canonical_irreducible(len, 3, 3)) {
      for (std::size_t n = len; n <= 13; ++n) {
        const std::vector<Word> words = builder.build(r, n);
        REQUIRE(words.size() == builder.size(r, n));
        for (const Word& w : words) {
          REQUIRE(w.size() == n);
          REQUIRE(root_le_k(w, 3) == r);
        }
        CHECK(validate_words(words));
        if (n >= len + 3 && len >= 4) CHECK(words.size() >= 2);
        if (one_region_pattern_index(r)) CHECK(words.size() >= one_region_size(r, n));
        if (count_regions(r) > 0) CHECK(words.size() <= u_bound(n, len, count_regions(r)));
      }
    }
  }
  const Code c = construct_recursive(W("01210"), 9);
  CHECK(c.size() >= 1);
  CHECK(validate_code(c));
}

TEST_CASE("code files round-trip") {
  const Code c = construct_one_region_code(W("012"), 12);
  std::stringstream ss;
  write_code(ss, c);
  const Code back = read_code(ss);
  CHECK(back.words == c.words);
  CHECK(back.n == c.n);
  CHECK(back.provenance == c.provenance);
}

TEST_CASE("assembled lower bounds are valid and beat irreducible words") {
  for (std::size_t n = 1; n <= 14; ++n) {
    LowerBoundOptions opts;
    opts.materialize = n <= 9;
    const LowerBound lb = assemble_lower_bound(n, opts);
    CHECK(lb.total >= constr1_size(n));
    CHECK(lb.total <= eq1_upper(n));
    if (opts.materialize) {
      CHECK(lb.code.size() == lb.total);
      CHECK(validate_code(lb.code));
    }
  }
}
