#include <benchmark/benchmark.h>

#include <random>

#include "quadsum/gaussian.hpp"
#include "quadsum/quad_family.hpp"
#include "quadsum/sl2.hpp"
#include "quadsum/weil.hpp"

using namespace quadsum;

namespace {

GaussianFunction sample(int n) {
    GaussianTerm t;
    t.A = MatC::Identity(n, n);
    t.A(0, 1) = t.A(1, 0) = cplx(0.2, 0.1);
    t.b = VecC::Zero(n);
    t.b(0) = cplx(0.3, -0.2);
    t.poly = Poly::constant(n, 1.0) + Poly::variable(n, 0) * Poly::variable(n, 1);
    return GaussianFunction::from_term(std::move(t));
}

}  // namespace

static void BM_FourierFull(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    auto g = sample(n);
    std::vector<int> coords(n);
    for (int i = 0; i < n; ++i) coords[i] = i;
    for (auto _ : state) benchmark::DoNotOptimize(fourier(g, coords));
}
BENCHMARK(BM_FourierFull)->Arg(4)->Arg(6)->Arg(8);

static void BM_WeilAction(benchmark::State& state) {
    auto fam = QuadFamily::build(MatI(0, 0), 3);
    auto g = sample(8);
    auto el = SL2Element::upper(0.3) * SL2Element::torus(1.2) * SL2Element::rotation(0.9);
    for (auto _ : state) benchmark::DoNotOptimize(r_action(fam, 3, el, g));
}
BENCHMARK(BM_WeilAction);

static void BM_Eval(benchmark::State& state) {
    auto g = sample(8);
    VecR x = VecR::Constant(8, 0.4);
    for (auto _ : state) benchmark::DoNotOptimize(g.eval(x));
}
BENCHMARK(BM_Eval);
