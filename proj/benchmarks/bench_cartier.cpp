#include <hurwitz/differential.hpp>
#include <hurwitz/expr.hpp>
#include <hurwitz/field.hpp>

#include <benchmark/benchmark.h>

using namespace hurwitz;

namespace {

FieldPtr field_for(int q)
{
    switch (q) {
    case 4: return Field::make(2, {1, 1, 1});
    case 9: return Field::make(3, {1, 0, 1});
    case 25: return Field::make(5, first_irreducible_modulus(5, 2));
    default: return Field::prime(q);
    }
}

// dx / prod_{a} (x - a)^k over every point a of the field.
DifferentialForm dense_form(const FieldPtr& f, int k)
{
    Poly den = Poly::constant(f, f->one());
    for (std::uint32_t c = 0; c < f->size(); ++c) den *= pow(Poly::linear(f, f->element(c)), k);
    return DifferentialForm(RatFunc(Poly::constant(f, f->one()), den));
}

void BM_CartierExpansion(benchmark::State& state)
{
    const auto f = field_for(static_cast<int>(state.range(0)));
    const auto w = dense_form(f, static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(cartier(w));
}

void BM_CartierPartialFractions(benchmark::State& state)
{
    const auto f = field_for(static_cast<int>(state.range(0)));
    const auto w = dense_form(f, static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(cartier_partial_fractions(w));
}

void BM_Logarithmic(benchmark::State& state)
{
    const auto f = field_for(static_cast<int>(state.range(0)));
    const auto w = dense_form(f, 1);
    for (auto _ : state) benchmark::DoNotOptimize(is_logarithmic(w));
}

}  // namespace

BENCHMARK(BM_CartierExpansion)->ArgsProduct({{2, 3, 4, 9, 25}, {1, 3, 7}});
BENCHMARK(BM_CartierPartialFractions)->ArgsProduct({{2, 3, 4, 9, 25}, {1, 3, 7}});
BENCHMARK(BM_Logarithmic)->Arg(3)->Arg(9)->Arg(25);
