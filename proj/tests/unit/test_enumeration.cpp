#include <doctest.h>

#include <numeric>

#include "helpers.hpp"
#include "tdcode/confusability.hpp"
#include "tdcode/enumeration.hpp"

using namespace tdcode;
using namespace tdcode::test;

TEST_CASE("irreducible word enumeration") {
  CHECK(enumerate_irreducible(3, 3, 3).size() == 12);
  CHECK(enumerate_irreducible(1, 3, 3) == std::vector<Word>{W("0"), W("1"), W("2")});
  std::uint64_t cumulative = 0;
  for (std::size_t n = 1; n <= 20; ++n) cumulative += count_irreducible(n, 3, 3);
  CHECK(cumulative == 27687);
  const auto by_length = count_irreducible_by_length(20, 3, 3);
  CHECK(std::accumulate(by_length.begin(), by_length.end(), std::uint64_t{0}) == 27687);
  CHECK_THROWS_AS(enumerate_irreducible(0, 3, 3), PreconditionError);
  CHECK_THROWS_AS(enumerate_irreducible(4, 3, 4), PreconditionError);
  CHECK_THROWS_AS(enumerate_irreducible(40, 3, 3, 100), ResourceError);
}

TEST_CASE("enumeration matches filtering all words") {
  for (std::size_t n = 1; n <= 9; ++n) {
    for (int k = 1; k <= 3; ++k) {
      std::vector<Word> expected;
      for (const Word& w : all_words(n)) {
        if (is_irreducible(w, static_cast<std::size_t>(k), IrreducibleMode::at_most)) expected.push_back(w);
      }
      CHECK(enumerate_irreducible(n, 3, k) == expected);
    }
  }
}

TEST_CASE("canonical irreducible words times orbit sizes give all irreducible words") {
  for (std::size_t n = 1; n <= 14; ++n) {
    std::uint64_t total = 0;
    for (const Word& w : enumerate_canonical_irreducible(n, 3, 3)) {
      const CanonicalForm c = canonical_form(w);
      REQUIRE(c.word == w);
      total += c.orbit_size;
    }
    CHECK(total == count_irreducible(n, 3, 3));
  }
}

TEST_CASE("canonical forms") {
  CHECK(S(canonical_form(W("102")).word) == "012");
  CHECK(canonical_form(W("102")).orbit_size == 6);
  CHECK(S(canonical_form(W("000")).word) == "000");
  CHECK(canonical_form(W("000")).orbit_size == 3);
  CHECK(S(canonical_form(W("2121")).word) == "0101");
  CHECK(canonical_form(W("2121")).orbit_size == 6);
  const Word x = W("2101");
  CHECK(relabel(x, canonical_relabeling(x)) == canonical_form(x).word);
}

TEST_CASE("descendant cones") {
  CHECK(descendant_cone(W("012"), 3).members == std::vector<Word>{W("012")});
  CHECK(descendant_cone(W("0"), 3).members == std::vector<Word>{W("0"), W("00"), W("000")});
  const ConeFrontier c = descendant_cone(W("012"), 6);
  CHECK(c.contains(W("012012")));
  CHECK(c.contains(W("011112")));
  CHECK_FALSE(c.contains(W("0120")));
  CHECK_THROWS_AS(descendant_cone(W("012"), 30, 1000), ResourceError);
  CHECK_THROWS_AS(descendant_cone(W("012"), 2), PreconditionError);
}

TEST_CASE("every cone member has the origin's root") {
  const Word r = W("01210");
  for (const Word& w : descendant_cone(r, 11).members) CHECK(root_le_k(w, 3) == r);
}

TEST_CASE("bounded oracle") {
  const OracleResult a = oracle_confusable(W("01210210"), W("01201210"), 24);
  REQUIRE(a.confusable());
  CHECK(descendant_cone(W("01210210"), a.witness->size()).contains(*a.witness));
  CHECK(descendant_cone(W("01201210"), a.witness->size()).contains(*a.witness));
  CHECK_FALSE(oracle_confusable(W("012012"), W("011112"), 14).confusable());
  const OracleResult same = oracle_confusable(W("0120"), W("0120"), 4);
  REQUIRE(same.confusable());
  CHECK(*same.witness == W("0120"));
  CHECK_FALSE(oracle_confusable_reduced(W("012012"), W("011112"), 24));
  CHECK(oracle_confusable_reduced(W("01210210"), W("01201210"), 24));
}

TEST_CASE("reduced oracle agrees with the plain cone search") {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 300; ++t) {
    const Word x = random_word(rng, 1 + rng() % 6);
    const Word y = random_word(rng, 1 + rng() % 6);
    if (root_le_k(x, 3) != root_le_k(y, 3)) continue;
    const std::size_t bound = std::max(x.size(), y.size()) + 6;
    CHECK(oracle_confusable(x, y, bound).confusable() == oracle_confusable_reduced(x, y, bound));
  }
}

TEST_CASE("label enumeration") {
  const auto one = enumerate_labels(W("01210"), 5);
  REQUIRE(one.size() == 1);
  CHECK(format_label(one[0].label) == "01210:(1,+)(1,+)");
  const auto base = enumerate_labels(W("012"), 3);
  REQUIRE(base.size() == 1);
  CHECK(format_label(base[0].label) == "012:(1,+)");
  const auto unary = enumerate_labels(W("0"), 7);
  REQUIRE(unary.size() == 1);
  CHECK(unary[0].label.entries.empty());
  for (const LabelledWord& lw : enumerate_labels(W("0120"), 10)) {
    CHECK(lw.word.size() == 10);
    CHECK(compute_label(lw.word) == lw.label);
  }
}
