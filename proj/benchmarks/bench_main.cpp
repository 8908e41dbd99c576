#include <benchmark/benchmark.h>

#include "recip/char_sums.hpp"
#include "recip/experiments.hpp"
#include "recip/exp_sums.hpp"
#include "recip/special_functions.hpp"
#include "recip/transforms.hpp"
#include "recip/z_local.hpp"

using namespace recip;

static void BM_GaussExact(benchmark::State& state) {
    const auto chis = DirichletCharacter::enumerate(static_cast<u64>(state.range(0)));
    for (auto _ : state)
        for (const auto& c : chis) benchmark::DoNotOptimize(gauss(c, 1, Backend::Exact));
}
BENCHMARK(BM_GaussExact)->Arg(16)->Arg(27)->Arg(60);

static void BM_KloostermanNumeric(benchmark::State& state) {
    const u64 c = static_cast<u64>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(kloosterman(3, 7, c, Backend::Numeric));
}
BENCHMARK(BM_KloostermanNumeric)->Arg(97)->Arg(1000)->Arg(10007);

// Repeated arguments hit the per-character memo, so this measures the warm path.
static void BM_VBruteForceWarm(benchmark::State& state) {
    const u64 q = static_cast<u64>(state.range(0));
    const auto chi = first_primitive(q);
    for (auto _ : state) benchmark::DoNotOptimize(v_bruteforce(chi, chi, {1, 1, 1, 1}, Backend::Exact));
}
BENCHMARK(BM_VBruteForceWarm)->Arg(9)->Arg(25)->Arg(27);

static void BM_VClosedForm(benchmark::State& state) {
    const u64 q = static_cast<u64>(state.range(0));
    const auto chi = first_primitive(q);
    for (auto _ : state) benchmark::DoNotOptimize(v_closed_primepower(chi, chi, {1, 1, 1, 1}, Backend::Exact));
}
BENCHMARK(BM_VClosedForm)->Arg(9)->Arg(25)->Arg(27);

static void BM_ZGlobal(benchmark::State& state) {
    const DirichletCharacter chi = combine_components({first_primitive(5), DirichletCharacter::principal(12)});
    const auto psis = DirichletCharacter::enumerate(60);
    const HeckeCoefficientSource F;
    for (auto _ : state)
        for (const auto& psi : psis) benchmark::DoNotOptimize(z_global(chi, psi, F, 0.7));
}
BENCHMARK(BM_ZGlobal);

static void BM_DirichletL(benchmark::State& state) {
    const auto psi = first_primitive(static_cast<u64>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(dirichlet_L(cplx(0.5, 3.0), psi));
}
BENCHMARK(BM_DirichletL)->Arg(7)->Arg(101)->Arg(1009);

static void BM_MellinRoutes(benchmark::State& state) {
    const TransformEngine eng(TestFunctionPair(30, 5, 3));
    for (auto _ : state) benchmark::DoNotOptimize(mellin_H_routes(eng, cplx(0.3, 2)));
}
BENCHMARK(BM_MellinRoutes)->Unit(benchmark::kMillisecond);

static void BM_HScriptEval(benchmark::State& state) {
    const TransformEngine eng(TestFunctionPair(30, 5, 3));
    const HScriptEvaluator H(eng, {}, {});
    double t = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(H.eval(t, 1));
        t += 0.1;
    }
}
BENCHMARK(BM_HScriptEval)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
