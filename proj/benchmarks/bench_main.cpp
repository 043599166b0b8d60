#include <benchmark/benchmark.h>

#include <random>

#include "tdcode/confusability.hpp"
#include "tdcode/enumeration.hpp"
#include "tdcode/optimal.hpp"
#include "tdcode/roots.hpp"

using namespace tdcode;

namespace {

Word random_word(std::mt19937_64& rng, std::size_t len) {
  Word w(len);
  for (auto& s : w) s = static_cast<Symbol>(rng() % 3);
  return w;
}

// Non-overlapping duplications sprinkled over x in one pass.
Word descendant(std::mt19937_64& rng, WordView x) {
  Word out;
  std::size_t i = 0;
  while (i < x.size()) {
    const std::size_t k = 1 + rng() % 3;
    if (rng() % 10 == 0 && i + k <= x.size()) {
      out.insert(out.end(), x.begin() + i, x.begin() + i + k);
      out.insert(out.end(), x.begin() + i, x.begin() + i + k);
      i += k;
    } else {
      out.push_back(x[i++]);
    }
  }
  return out;
}

void BM_ConfuseDescendant(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const Word x = random_word(rng, static_cast<std::size_t>(state.range(0)));
  const Word y = descendant(rng, x);
  for (auto _ : state) benchmark::DoNotOptimize(confuse(x, y));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ConfuseDescendant)->RangeMultiplier(4)->Range(1 << 10, 1 << 20)->Complexity(benchmark::oN);

void BM_ConfuseSiblings(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const Word base = random_word(rng, static_cast<std::size_t>(state.range(0)));
  const Word x = descendant(rng, base), y = descendant(rng, base);
  for (auto _ : state) benchmark::DoNotOptimize(confuse(x, y));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ConfuseSiblings)->RangeMultiplier(4)->Range(1 << 10, 1 << 20)->Complexity(benchmark::oN);

void BM_Root(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const Word x = random_word(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(root_le_k(x, 3));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Root)->RangeMultiplier(4)->Range(1 << 10, 1 << 20)->Complexity(benchmark::oN);

void BM_Label(benchmark::State& state) {
  std::mt19937_64 rng(4);
  const Word x = random_word(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(compute_label(x));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Label)->RangeMultiplier(4)->Range(1 << 10, 1 << 20)->Complexity(benchmark::oN);

void BM_OptimalT(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(t_of_n(static_cast<std::size_t>(state.range(0))).total);
}
BENCHMARK(BM_OptimalT)->DenseRange(8, 12, 2)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
