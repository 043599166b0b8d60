#include "tdcode/bounds.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "tdcode/codes.hpp"
#include "tdcode/enumeration.hpp"
#include "tdcode/word.hpp"

namespace tdcode {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (std::uint64_t j = 1; j <= k; ++j) {
    acc = acc * (n - k + j) / j;  // exact: acc is binom(n-k+j, j) after this step
    if (acc > UINT64_MAX) throw ResourceError("binomial: result exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(acc);
}

std::uint64_t u_bound(std::size_t n, std::size_t i, std::size_t m) {
  if (i > n) throw PreconditionError("u_bound: i must not exceed n");
  if (m == 0) throw PreconditionError("u_bound: m must be positive");
  const std::size_t t = (n - i) / 3;
  if ((n - i) % 3 == 0) return binomial(t + m, m) - binomial(t + m - 1, m - 1) + 1;
  return binomial(t + m, m);
}

namespace {

struct RegionCounts {
  std::vector<std::vector<std::uint64_t>> aba, abc;  // [i][m]
};

// Fills the aba/abc tables bottom-up so deep lengths stay cheap.
RegionCounts region_counts(std::size_t max_i) {
  const std::size_t top = std::max<std::size_t>(max_i, 5);
  RegionCounts t;
  t.aba.assign(top + 1, std::vector<std::uint64_t>(top + 1, 0));
  t.abc = t.aba;
  t.aba[3][0] = 6;
  t.abc[3][1] = 6;
  t.abc[4][1] = 12;
  t.abc[5][1] = 12;
  t.abc[5][2] = 6;
  for (std::size_t i = 4; i <= top; ++i) {
    for (std::size_t m = 0; m <= top; ++m) {
      t.aba[i][m] = t.abc[i - 1][m];
      if (i >= 6 && m >= 1) t.abc[i][m] = t.aba[i - 1][m - 1] + t.aba[i - 2][m - 1] + t.aba[i - 3][m - 1];
    }
  }
  return t;
}

}  // namespace

std::uint64_t count_i_aba(std::size_t i, std::size_t m) {
  if (i < 3 || m > i) return 0;
  return region_counts(i).aba[i][m];
}

std::uint64_t count_i_abc(std::size_t i, std::size_t m) {
  if (i < 3 || m > i) return 0;
  return region_counts(i).abc[i][m];
}

std::uint64_t count_i(std::size_t i, std::size_t m) {
  if (i == 0) throw PreconditionError("count_i: i must be positive");
  if (i == 1) return m == 0 ? 3 : 0;
  if (i == 2) return m == 0 ? 6 : 0;
  return count_i_aba(i, m) + count_i_abc(i, m);
}

std::uint64_t prop4_upper(std::size_t n) {
  if (n == 0) throw PreconditionError("prop4_upper: n must be positive");
  std::uint64_t total = 0;
  for (std::uint64_t c : count_irreducible_by_length(n, 3, 2)) total += c;
  return total;
}

std::uint64_t constr1_size(std::size_t n) {
  if (n == 0) throw PreconditionError("constr1_size: n must be positive");
  std::uint64_t total = 0;
  for (std::uint64_t c : count_irreducible_by_length(n, 3, 3)) total += c;
  return total;
}

std::uint64_t eq1_upper(std::size_t n) {
  if (n == 0) throw PreconditionError("eq1_upper: n must be positive");
  std::uint64_t total = 0;
  // roots without a region have a single-word optimum
  for (std::size_t i = 1; i <= n; ++i) total += count_i(i, 0);
  // each one-region pattern stands for its six relabelings
  for (const Word& p : one_region_patterns()) {
    if (p.size() <= n) total += 6 * one_region_size(p, n);
  }
  const RegionCounts t = region_counts(n);
  for (std::size_t i = 5; i <= n; ++i) {
    for (std::size_t m = 2; m <= i; ++m) {
      const std::uint64_t c = t.aba[i][m] + t.abc[i][m];
      if (c) total += c * u_bound(n, i, m);
    }
  }
  return total;
}

std::uint64_t BoundsTable::u(std::size_t n, std::size_t i, std::size_t m) {
  std::lock_guard lock(mu_);
  auto key = std::make_tuple(n, i, m);
  if (auto it = u_.find(key); it != u_.end()) return it->second;
  return u_[key] = u_bound(n, i, m);
}

std::uint64_t BoundsTable::i_count(std::size_t i, std::size_t m) {
  std::lock_guard lock(mu_);
  auto key = std::make_pair(i, m);
  if (auto it = i_.find(key); it != i_.end()) return it->second;
  return i_[key] = count_i(i, m);
}

std::uint64_t BoundsTable::eq1(std::size_t n) {
  std::lock_guard lock(mu_);
  if (auto it = eq1_.find(n); it != eq1_.end()) return it->second;
  return eq1_[n] = eq1_upper(n);
}

std::uint64_t BoundsTable::prop4(std::size_t n) {
  std::lock_guard lock(mu_);
  if (auto it = prop4_.find(n); it != prop4_.end()) return it->second;
  return prop4_[n] = prop4_upper(n);
}

std::uint64_t BoundsTable::constr1(std::size_t n) {
  std::lock_guard lock(mu_);
  if (auto it = constr1_.find(n); it != constr1_.end()) return it->second;
  return constr1_[n] = constr1_size(n);
}

}  // namespace tdcode
