#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <tuple>
#include <utility>

namespace tdcode {

/// binom(n, k) in exact arithmetic; throws ResourceError on 64-bit overflow.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Upper bound on the optimal code size in the cone of a root of length i
/// with m regions, at length n.
std::uint64_t u_bound(std::size_t n, std::size_t i, std::size_t m);

/// Irreducible ternary words of length i with exactly m regions whose first
/// three symbols have two (aba) or three (abc) distinct symbols.
std::uint64_t count_i_aba(std::size_t i, std::size_t m);
std::uint64_t count_i_abc(std::size_t i, std::size_t m);

/// Irreducible ternary words of length i with exactly m regions.
std::uint64_t count_i(std::size_t i, std::size_t m);

/// Sum over lengths 1..n of the number of <=2-irreducible ternary words.
std::uint64_t prop4_upper(std::size_t n);

/// Sum over lengths 1..n of the number of <=3-irreducible ternary words
/// (the size of the irreducible-word code).
std::uint64_t constr1_size(std::size_t n);

/// Upper bound on T(n) built from the exact one-region values and u_bound
/// for roots with two or more regions.
std::uint64_t eq1_upper(std::size_t n);

/// Memoized front end for the functions above; safe for concurrent use.
class BoundsTable {
 public:
  std::uint64_t u(std::size_t n, std::size_t i, std::size_t m);
  std::uint64_t i_count(std::size_t i, std::size_t m);
  std::uint64_t eq1(std::size_t n);
  std::uint64_t prop4(std::size_t n);
  std::uint64_t constr1(std::size_t n);

 private:
  std::mutex mu_;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::uint64_t> u_;
  std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> i_;
  std::map<std::size_t, std::uint64_t> eq1_, prop4_, constr1_;
};

}  // namespace tdcode
