#include <benchmark/benchmark.h>

#include "quadsum/analytic.hpp"
#include "quadsum/dirichlet.hpp"
#include "quadsum/test_function.hpp"

using namespace quadsum;

static void BM_LValue(benchmark::State& state) {
    DirichletL L(-4);
    cplx s(0.5, 10.0);
    for (auto _ : state) benchmark::DoNotOptimize(L.value(s));
}
BENCHMARK(BM_LValue);

static void BM_TateZeta(benchmark::State& state) {
    auto fam = QuadFamily::build(MatI(0, 0), 3);
    auto tf = majorant_preset(fam);
    QuadratureConfig cfg;
    cfg.theta_order = 1;
    auto zp = zeta_profile_r(fam, 3, tf.arch, cfg);
    for (auto _ : state) benchmark::DoNotOptimize(tate_zeta(zp, cplx(0.5, 0.3)));
}
BENCHMARK(BM_TateZeta);

static void BM_CExtract(benchmark::State& state) {
    auto fam = QuadFamily::build(MatI(0, 0), 2);
    auto tf = majorant_preset(fam);
    QuadratureConfig cfg;
    cfg.theta_order = 1;
    auto zp = zeta_profile_r(fam, 2, tf.arch, cfg);
    for (auto _ : state) benchmark::DoNotOptimize(c_extract(zp, 4, cfg));
}
BENCHMARK(BM_CExtract);
