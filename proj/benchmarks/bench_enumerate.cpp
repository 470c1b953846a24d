#include <benchmark/benchmark.h>

#include "quadsum/analytic.hpp"
#include "quadsum/enumerate.hpp"
#include "quadsum/test_function.hpp"

using namespace quadsum;

static void BM_EnumerateSenary(benchmark::State& state) {
    auto fam = QuadFamily::build(MatI(0, 0), 3);
    std::int64_t R = state.range(0);
    for (auto _ : state) {
        auto pts = enumerate_quadric(fam, 3, R);
        benchmark::DoNotOptimize(pts.points.size());
    }
}
BENCHMARK(BM_EnumerateSenary)->Arg(3)->Arg(5)->Arg(8);

static void BM_QuadricIntegral(benchmark::State& state) {
    auto fam = QuadFamily::build(MatI(0, 0), 3);
    auto tf = majorant_linear_preset(fam);
    QuadratureConfig cfg;
    cfg.theta_order = 32;
    cfg.radial_nodes = 120;
    QuadricIntegrator qi(fam, 3, tf.arch, cfg);
    VecR xi(6);
    xi << 1, 0, -1, 2, 0, 1;
    for (auto _ : state) benchmark::DoNotOptimize(qi.eval(xi));
}
BENCHMARK(BM_QuadricIntegral);
