#include <hurwitz/expr.hpp>
#include <hurwitz/extension.hpp>
#include <hurwitz/field.hpp>

#include <benchmark/benchmark.h>

using namespace hurwitz;

namespace {

// omega_prev = dx/x^C, m_n = (C-1)p.
void BM_SolveFixedPlus(benchmark::State& state)
{
    const auto f = Field::prime(static_cast<int>(state.range(0)));
    const int C = static_cast<int>(state.range(1));
    const DifferentialForm w(RatFunc(Poly::constant(f, f->one()), Poly::monomial(f, f->one(), C)));
    SolverStats stats;
    for (auto _ : state) benchmark::DoNotOptimize(solve_cartier(w, (C - 1) * f->p(), CartierVariant::FIXED_PLUS, {}, &stats));
    state.counters["candidates"] = static_cast<double>(stats.candidates);
}

void BM_SolveWorkers(benchmark::State& state)
{
    const auto f = Field::prime(3);
    const DifferentialForm w(RatFunc(Poly::constant(f, f->one()), Poly::monomial(f, f->one(), 4)));
    SolverOptions opts;
    opts.workers = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(solve_cartier(w, 9, CartierVariant::FIXED_PLUS, opts));
}

void BM_PartitionTrunk(benchmark::State& state)
{
    for (auto _ : state) benchmark::DoNotOptimize(partition_trunk(6, 3, 5, 2, Rational(1)));
}

}  // namespace

BENCHMARK(BM_SolveFixedPlus)->Args({2, 3})->Args({2, 5})->Args({3, 3})->Args({3, 4})->Args({5, 2})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SolveWorkers)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PartitionTrunk);
