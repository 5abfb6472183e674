#include "levylab/corpus.hpp"
#include "levylab/functionals.hpp"
#include "levylab/fundamental_solution.hpp"
#include "levylab/grid.hpp"
#include "levylab/hyperlab.hpp"
#include "levylab/kernel_stepper.hpp"
#include "levylab/kernels.hpp"
#include "levylab/spectral_solver.hpp"
#include "levylab/symbols.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace levylab;

grid::TorusGrid grid1(int n) {
    grid::TorusGrid g;
    g.dim = 1;
    g.n = n;
    g.length = 40.0;
    return g;
}

void bm_kernel_log_quadrature(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    double r = 1e-3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ops::kernel_log(r, dim));
        r = r < 20.0 ? r * 1.7 : 1e-3;
    }
}
BENCHMARK(bm_kernel_log_quadrature)->Arg(1)->Arg(3);

void bm_kernel_log_table(benchmark::State& state) {
    const auto k = ops::log_kernel(1);
    double r = 1e-3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(k.density(r));
        r = r < 20.0 ? r * 1.01 : 1e-3;
    }
}
BENCHMARK(bm_kernel_log_table);

void bm_bessel_density(benchmark::State& state) {
    double r = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fs::bessel_density(r, 0.5, 2));
        r = r < 10.0 ? r * 1.5 : 0.1;
    }
}
BENCHMARK(bm_bessel_density);

void bm_levy_khintchine(benchmark::State& state) {
    const auto k = ops::log_kernel(1);
    const double xi = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(ops::levy_khintchine(k, xi).value);
}
BENCHMARK(bm_levy_khintchine)->Arg(1)->Arg(100);

void bm_evolve_spectral(benchmark::State& state) {
    const auto g = grid1(static_cast<int>(state.range(0)));
    const auto sym = ops::builtin_symbol("log_bessel", 1);
    const auto u0 = corpus::gaussian_bump(g, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(spectral::evolve_spectral(sym, u0, 0.1));
}
BENCHMARK(bm_evolve_spectral)->Arg(1024)->Arg(4096);

void bm_stepper_generator(benchmark::State& state) {
    const auto g = grid1(static_cast<int>(state.range(0)));
    const stepper::KernelStepper st(g, ops::log_kernel(1));
    const auto u0 = corpus::gaussian_bump(g, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(st.apply_generator(u0.data));
}
BENCHMARK(bm_stepper_generator)->Arg(256)->Arg(1024);

void bm_fourier_form(benchmark::State& state) {
    const auto g = grid1(1024);
    const auto form = fn::fourier_form(ops::builtin_symbol("log_bessel", 1));
    const auto f = corpus::band_limited_field(g, 7);
    for (auto _ : state) benchmark::DoNotOptimize(form(f, f));
}
BENCHMARK(bm_fourier_form);

void bm_kernel_form(benchmark::State& state) {
    const auto g = grid1(1024);
    const auto form = fn::kernel_form(ops::log_kernel(1), g);
    const auto f = corpus::band_limited_field(g, 7);
    for (auto _ : state) benchmark::DoNotOptimize(form(f, f));
}
BENCHMARK(bm_kernel_form);

void bm_entropy(benchmark::State& state) {
    const auto g = grid1(4096);
    const auto f = corpus::gaussian_bump(g, 2.0);
    for (auto _ : state) benchmark::DoNotOptimize(fn::entropy(f, 2.0));
}
BENCHMARK(bm_entropy);

void bm_a_p_bound(benchmark::State& state) {
    double t = 0.01;
    for (auto _ : state) {
        benchmark::DoNotOptimize(hyper::A_p_bound(3.0, t, 1));
        t = t < 0.15 ? t + 0.01 : 0.01;
    }
}
BENCHMARK(bm_a_p_bound);

} // namespace

BENCHMARK_MAIN();
