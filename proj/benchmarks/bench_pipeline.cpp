#include <benchmark/benchmark.h>

#include <random>

#include "eaqcc/construct.hpp"
#include "eaqcc/polymat.hpp"
#include "eaqcc/simulate.hpp"
#include "eaqcc/verify.hpp"

using namespace eaqcc;

namespace {

PolyMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int deg) {
  PolyMatrix m(r, c);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      std::vector<int> e;
      for (int k = 0; k <= deg; ++k)
        if (coin(rng)) e.push_back(k);
      m(i, j) = LaurentPoly::from_exponents(e);
    }
  return m;
}

}  // namespace

static void BM_SmithForm(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const auto n = static_cast<std::size_t>(state.range(0));
  const PolyMatrix m = random_matrix(rng, n, n + 1, 4);
  for (auto _ : state) benchmark::DoNotOptimize(smith_form(m));
}
BENCHMARK(BM_SmithForm)->DenseRange(1, 4);

static void BM_SeriesExpand(benchmark::State& state) {
  const RationalPoly r(LaurentPoly::one(), LaurentPoly::parse("1+D+D^3"));
  const int len = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(series_expand(r, 0, len));
}
BENCHMARK(BM_SeriesExpand)->RangeMultiplier(4)->Range(16, 4096);

static void BM_BuildExample(benchmark::State& state) {
  const PolyMatrix h = PolyMatrix::parse(state.range(0) == 1 ? "1+D^2, 1+D+D^2" : "1, 1+D");
  for (auto _ : state) benchmark::DoNotOptimize(build_code(h, h));
}
BENCHMARK(BM_BuildExample)->Arg(1)->Arg(2);

static void BM_BuildRandom(benchmark::State& state) {
  std::mt19937_64 rng(11);
  std::vector<std::pair<PolyMatrix, PolyMatrix>> pairs;
  while (pairs.size() < 32) {
    PolyMatrix h1 = random_matrix(rng, 2, 4, 2), h2 = random_matrix(rng, 2, 4, 2);
    try {
      validate_inputs(h1, h2);
      pairs.emplace_back(std::move(h1), std::move(h2));
    } catch (const std::exception&) {
    }
  }
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [h1, h2] = pairs[i++ % pairs.size()];
    benchmark::DoNotOptimize(build_code(h1, h2));
  }
}
BENCHMARK(BM_BuildRandom);

static void BM_VerifyExample2(benchmark::State& state) {
  const PolyMatrix h = PolyMatrix::parse("1, 1+D");
  const CodeSpec spec = build_code(h, h);
  const int window = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_code(spec, window));
}
BENCHMARK(BM_VerifyExample2)->RangeMultiplier(2)->Range(16, 128);

static void BM_RunInfiniteDepth(benchmark::State& state) {
  const int frames = static_cast<int>(state.range(0));
  Circuit c;
  c.gates = {Gate::inf(0, LaurentPoly::parse("1+D+D^3"))};
  BinarySymplecticWindow w(1, frames, 0);
  CheckRow x(1);
  x.x[0] = LaurentPoly::one();
  for (int s = 0; s < frames; s += 4) w.add_row(x, s, 0);
  for (auto _ : state) benchmark::DoNotOptimize(run_circuit(w, c));
}
BENCHMARK(BM_RunInfiniteDepth)->RangeMultiplier(4)->Range(16, 1024);

BENCHMARK_MAIN();
