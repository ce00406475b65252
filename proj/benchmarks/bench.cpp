#include <benchmark/benchmark.h>

#include <random>

#include "constructive/constants.hpp"
#include "constructive/logic.hpp"
#include "constructive/real.hpp"
#include "constructive/sequences.hpp"

using namespace constructive;

namespace {

Rational random_rational(std::mt19937_64& rng, int bits) {
    std::uniform_int_distribution<long long> d(1, 1LL << bits);
    return Rational(d(rng) - (1LL << (bits - 1)), d(rng));
}

void BM_rational_mul(benchmark::State& state) {
    std::mt19937_64 rng(7);
    Rational a = random_rational(rng, 40), b = random_rational(rng, 40);
    for (auto _ : state) {
        benchmark::DoNotOptimize(a * b);
    }
}
BENCHMARK(BM_rational_mul);

void BM_rational_add(benchmark::State& state) {
    std::mt19937_64 rng(8);
    Rational a = random_rational(rng, 40), b = random_rational(rng, 40);
    for (auto _ : state) {
        benchmark::DoNotOptimize(a + b);
    }
}
BENCHMARK(BM_rational_add);

void BM_pi_approx(benchmark::State& state) {
    const long long level = state.range(0);
    for (auto _ : state) {
        // fresh duplex each round, otherwise the memo makes this a lookup
        state.PauseTiming();
        Duplex pi = const_pi();
        state.ResumeTiming();
        benchmark::DoNotOptimize(pi.approx(level));
    }
}
BENCHMARK(BM_pi_approx)->Arg(64)->Arg(256)->Arg(1024);

void BM_sqrt2_approx(benchmark::State& state) {
    const long long level = state.range(0);
    for (auto _ : state) {
        state.PauseTiming();
        Duplex s = const_sqrt(Rational(2));
        state.ResumeTiming();
        benchmark::DoNotOptimize(s.approx(level));
    }
}
BENCHMARK(BM_sqrt2_approx)->Arg(64)->Arg(256)->Arg(1024);

void BM_zeta3_approx(benchmark::State& state) {
    const long long level = state.range(0);
    for (auto _ : state) {
        state.PauseTiming();
        Duplex z = const_zeta3();
        state.ResumeTiming();
        benchmark::DoNotOptimize(z.approx(level));
    }
}
BENCHMARK(BM_zeta3_approx)->Arg(64)->Arg(256);

void BM_prover(benchmark::State& state) {
    auto peirce = logic::parse_formula("((p -> q) -> p) -> p");
    auto chain = logic::parse_formula("(a -> b) & (b -> c) & (c -> d) -> (a -> d)");
    for (auto _ : state) {
        benchmark::DoNotOptimize(logic::intuitionistic_valid(peirce).valid);
        benchmark::DoNotOptimize(logic::intuitionistic_valid(chain).valid);
    }
}
BENCHMARK(BM_prover);

void BM_discrepancy(benchmark::State& state) {
    const std::uint64_t n = state.range(0);
    Rational alpha(3, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(power_fraction_discrepancy(alpha, n));
    }
}
BENCHMARK(BM_discrepancy)->Arg(50)->Arg(200);

void BM_measure_small(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(irrationality_check_pi(42, Int(1000)));
    }
}
BENCHMARK(BM_measure_small);

} // namespace

BENCHMARK_MAIN();
