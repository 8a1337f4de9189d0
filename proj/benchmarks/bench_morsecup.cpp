#include "morsecup/coefficients.hpp"
#include "morsecup/cup.hpp"
#include "morsecup/cuplength.hpp"
#include "morsecup/eigenflow.hpp"
#include "morsecup/oracle.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace morsecup;

namespace {

RingMatrix random_integer_matrix(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> entry(-9, 9);
  RingMatrix m(RingTag::Z, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.set(i, j, Integer(entry(rng)));
  return m;
}

}  // namespace

static void BM_SmithNormalForm(benchmark::State& state) {
  const auto m = random_integer_matrix(static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m));
}
BENCHMARK(BM_SmithNormalForm)->Arg(4)->Arg(8)->Arg(16);

static void BM_BuildComplexSphereZ(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto d = make_datum(SpaceKind::Sphere, random_spectrum(n, 1), std::nullopt, "a");
  for (auto _ : state) benchmark::DoNotOptimize(build_complex(d, RingTag::Z));
}
BENCHMARK(BM_BuildComplexSphereZ)->DenseRange(2, 8, 2);

static void BM_ChainCupProjective(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto [a, b] = random_generic_pair(n, 3);
  const auto alpha = make_datum(SpaceKind::Projective, a, std::nullopt, "alpha");
  const auto beta = make_datum(SpaceKind::Projective, b, std::nullopt, "beta");
  for (auto _ : state) benchmark::DoNotOptimize(chain_cup(alpha, alpha, beta, RingTag::Z2));
}
BENCHMARK(BM_ChainCupProjective)->DenseRange(2, 6, 2);

// The product family: alpha repels vertically at 0, beta attracts at 1/2.
static void BM_RelativeCupLength(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto [a, b] = random_generic_pair(n, 11);
  const auto alpha = make_datum(SpaceKind::Projective, a, VerticalFactor{-1, 0.0}, "alpha");
  const auto beta = make_datum(SpaceKind::Projective, b, VerticalFactor{1, 0.5}, "beta");
  for (auto _ : state) benchmark::DoNotOptimize(relative_cup_length(alpha, beta));
}
BENCHMARK(BM_RelativeCupLength)->DenseRange(1, 5, 2);

static void BM_OracleTriples(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto [a, b] = random_generic_pair(n, 5);
  const auto alpha = make_datum(SpaceKind::Projective, a, std::nullopt, "alpha");
  const auto beta = make_datum(SpaceKind::Projective, b, std::nullopt, "beta");
  const auto w = chain_cup(alpha, alpha, beta, RingTag::Z2);
  const TripleLookup lookup = [&](const std::string& z, const std::string& x, const std::string& y) {
    return w.get(z, x, y);
  };
  for (auto _ : state) benchmark::DoNotOptimize(compare_triples(alpha, alpha, beta, lookup));
}
BENCHMARK(BM_OracleTriples)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
