#include <benchmark/benchmark.h>

#include "realpt/int_matrix.hpp"
#include "realpt/splitting.hpp"

#include <random>

using namespace realpt;

namespace {

IntMatrix random_int_matrix(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> e(-20, 20);
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = e(rng);
    return m;
}

CycloNumber random_cyclo(const FieldPtr& f, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> c(-50, 50), d(1, 50);
    CycloNumber x(f);
    for (std::int64_t k = 0; k < static_cast<std::int64_t>(f->degree()); ++k)
        x += CycloNumber::zeta(f, k) * CycloNumber(f, frac(c(rng), d(rng)));
    return x;
}

CMatrix random_matrix(const FieldPtr& f, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    CMatrix m = CMatrix::identity(f, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = random_cyclo(f, rng);
    return m;
}

void BM_SmithNormalForm(benchmark::State& state) {
    IntMatrix m = random_int_matrix(static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m));
}
BENCHMARK(BM_SmithNormalForm)->Arg(4)->Arg(8)->Arg(16);

void BM_CycloMultiply(benchmark::State& state) {
    auto f = CycloField::make(state.range(0));
    std::mt19937_64 rng(2);
    CycloNumber a = random_cyclo(f, rng), b = random_cyclo(f, rng);
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_CycloMultiply)->Arg(4)->Arg(12)->Arg(48);

void BM_MatrixInverse(benchmark::State& state) {
    auto f = CycloField::make(12);
    CMatrix m = random_matrix(f, static_cast<std::size_t>(state.range(0)), 3);
    for (auto _ : state) benchmark::DoNotOptimize(m.inverse());
}
BENCHMARK(BM_MatrixInverse)->Arg(2)->Arg(4)->Arg(6);

void BM_UnipotentStep(benchmark::State& state) {
    auto f = CycloField::make(4);
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<long> c(-100, 100), d(1, 100);
    CMatrix x = CMatrix::identity(f, n).scaled(Rational(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) x(i, j) = CycloNumber(f, frac(c(rng), d(rng)));
    CMatrix h = exp_nilpotent(x);
    TwoCocycle cocycle(AntiRegularMap::conjugation(f, n), h, {h});
    for (auto _ : state) benchmark::DoNotOptimize(stepA3_unipotent(cocycle));
}
BENCHMARK(BM_UnipotentStep)->Arg(3)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
