#include <doctest.h>

#include <functional>

#include "helpers.hpp"
#include "tdcode/bounds.hpp"
#include "tdcode/codes.hpp"
#include "tdcode/confusability.hpp"
#include "tdcode/enumeration.hpp"

using namespace tdcode;
using namespace tdcode::test;

namespace {

// Count-vectors (c_1..c_m), c_j >= 1, with i + 3 * sum(c_j - 1) <= n. All
// vectors attaining equality carry all-plus labels and are pairwise
// confusable, so together they contribute one codeword.
std::uint64_t u_brute(std::size_t n, std::size_t i, std::size_t m) {
  std::uint64_t strict = 0;
  bool equality = false;
  std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t j, std::size_t len) {
    if (j == m) {
      if (len < n) ++strict;
      if (len == n) equality = true;
      return;
    }
    for (std::size_t extra = 0; len + 3 * extra <= n; ++extra) walk(j + 1, len + 3 * extra);
  };
  walk(0, i);
  return strict + (equality ? 1 : 0);
}

}  // namespace

TEST_CASE("u_bound examples") {
  CHECK(u_bound(5, 5, 2) == 1);
  CHECK(u_bound(8, 5, 2) == 2);
  CHECK(u_bound(10, 3, 1) == 3);
  CHECK_THROWS_AS(u_bound(3, 4, 1), PreconditionError);
}

TEST_CASE("u_bound equals brute-force solution counting") {
  for (std::size_t i = 3; i <= 8; ++i) {
    for (std::size_t d = 0; d <= 30; ++d) {
      for (std::size_t m = 1; m <= 6; ++m) CHECK(u_bound(i + d, i, m) == u_brute(i + d, i, m));
    }
  }
}

TEST_CASE("region-count table base cases") {
  CHECK(count_i_abc(3, 1) == 6);
  CHECK(count_i_aba(3, 0) == 6);
  CHECK(count_i(3, 1) == 6);
  CHECK(count_i(3, 0) == 6);
  CHECK(count_i(5, 2) == 6);
  CHECK(count_i(6, 2) == 24);
  CHECK(count_i(1, 0) == 3);
  CHECK(count_i(2, 0) == 6);
}

TEST_CASE("region-count table matches enumeration") {
  for (std::size_t i = 1; i <= 12; ++i) {
    std::map<std::size_t, std::uint64_t> by_m;
    std::uint64_t total = 0;
    for (const Word& r : enumerate_irreducible(i, 3, 3)) {
      ++by_m[count_regions(r)];
      ++total;
    }
    std::uint64_t summed = 0;
    for (std::size_t m = 0; m <= i; ++m) {
      CHECK(count_i(i, m) == by_m[m]);
      summed += count_i(i, m);
    }
    CHECK(summed == total);
  }
  for (std::size_t i = 13; i <= 14; ++i) {
    std::uint64_t summed = 0;
    for (std::size_t m = 0; m <= i; ++m) summed += count_i(i, m);
    CHECK(summed == count_irreducible(i, 3, 3));
  }
}

TEST_CASE("upper-bound columns") {
  const std::uint64_t constr1[] = {3, 9, 21, 39, 69, 111, 171, 261, 393, 585,
                                   867, 1281, 1887, 2775, 4077, 5985, 8781, 12879, 18885, 27687};
  const std::uint64_t eq1[] = {3, 9, 21, 39, 69, 117, 195, 315, 495, 777,
                               1227, 1941, 3075, 4875, 7731, 12267, 19479, 30957, 49245, 78417};
  const std::uint64_t prop4[] = {3, 9, 21, 39, 69, 117, 195, 321, 525, 855,
                                 1389, 2253, 3651, 5913, 9573, 15495, 25077, 40581, 65667, 106257};
  for (std::size_t n = 1; n <= 20; ++n) {
    CHECK(constr1_size(n) == constr1[n - 1]);
    CHECK(eq1_upper(n) == eq1[n - 1]);
    CHECK(prop4_upper(n) == prop4[n - 1]);
    CHECK(eq1_upper(n) <= prop4_upper(n));
  }
}

TEST_CASE("region-sum upper bound decomposes as 15 + 72 + 6 + 24 at n = 6") {
  // zero-region roots of length <= 3, relabelled one-region patterns, and
  // roots with two or more regions
  std::uint64_t zero = 0;
  for (std::size_t i = 1; i <= 6; ++i) zero += count_i(i, 0);
  CHECK(zero == 15);
  std::uint64_t one = 0;
  for (const Word& p : one_region_patterns()) {
    if (p.size() <= 6) one += 6 * one_region_size(p, 6);
  }
  CHECK(one == 72);
  std::uint64_t multi[2] = {0, 0};
  for (std::size_t i = 5; i <= 6; ++i) {
    for (std::size_t m = 2; m <= i; ++m) multi[i - 5] += count_i(i, m) * u_bound(6, i, m);
  }
  CHECK(multi[0] == 6);
  CHECK(multi[1] == 24);
  CHECK(zero + one + multi[0] + multi[1] == 117);
}

TEST_CASE("memoized table matches the functions") {
  BoundsTable t;
  CHECK(t.eq1(12) == eq1_upper(12));
  CHECK(t.prop4(12) == prop4_upper(12));
  CHECK(t.constr1(12) == constr1_size(12));
  CHECK(t.u(20, 5, 2) == u_bound(20, 5, 2));
  CHECK(t.i_count(9, 2) == count_i(9, 2));
}

TEST_CASE("binomial") {
  CHECK(binomial(10, 3) == 120);
  CHECK(binomial(3, 5) == 0);
  CHECK_THROWS_AS(binomial(200, 100), ResourceError);
}
