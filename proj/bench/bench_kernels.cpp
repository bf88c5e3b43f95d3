// Serial reference against the OpenMP path for the two double-sum kernels.

#include "dlab/pseudo_product.hpp"
#include "dlab/solver.hpp"
#include "dlab/trilinear.hpp"

#include <benchmark/benchmark.h>

using namespace dlab;

namespace {

struct PiInputs {
    SpectralField2D f, g;
    BilinearSymbol eta;
};

PiInputs pi_inputs(std::size_t n)
{
    const Grid2D grid(n, n, 20.0, 20.0);
    CounterRng rng(11);
    const DispersionParams p(1.5);
    return {dealias(random_bandlimited(grid, 1.0, rng)), dealias(random_bandlimited(grid, 1.0, rng)),
            shell_transition_symbol(Dyadic::from_value(16), p)};
}

void BM_pi_eta_serial(benchmark::State& st)
{
    const PiInputs in = pi_inputs(std::size_t(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(pi_eta_apply_serial(in.f, in.g, in.eta));
}

void BM_pi_eta_parallel(benchmark::State& st)
{
    const PiInputs in = pi_inputs(std::size_t(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(pi_eta_apply(in.f, in.g, in.eta));
}

struct TriInputs {
    TriLattice lat;
    ThetaFunction f1, f2, f3;
};

TriInputs tri_inputs(long n_half)
{
    const DispersionParams p(2.0);
    const TrilinearConfig cfg{{Dyadic::from_value(4), Dyadic::from_value(4), Dyadic::from_value(4)},
                              {Dyadic::from_value(16), Dyadic::from_value(16), Dyadic::from_value(16)},
                              std::nullopt};
    const TriLattice lat = fit_lattice(cfg, p, n_half);
    return {lat, random_theta_function(lat, cfg, 0, p, 1, 0), random_theta_function(lat, cfg, 1, p, 1, 1),
            random_theta_function(lat, cfg, 2, p, 1, 2)};
}

void BM_trilinear_serial(benchmark::State& st)
{
    const TriInputs in = tri_inputs(st.range(0));
    const DispersionParams p(2.0);
    for (auto _ : st) benchmark::DoNotOptimize(trilinear_form_serial(in.lat, in.f1, in.f2, in.f3, p));
}

void BM_trilinear_parallel(benchmark::State& st)
{
    const TriInputs in = tri_inputs(st.range(0));
    const DispersionParams p(2.0);
    for (auto _ : st) benchmark::DoNotOptimize(trilinear_form(in.lat, in.f1, in.f2, in.f3, p));
}

}  // namespace

BENCHMARK(BM_pi_eta_serial)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_pi_eta_parallel)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_trilinear_serial)->Arg(15)->Arg(23)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_trilinear_parallel)->Arg(15)->Arg(23)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
