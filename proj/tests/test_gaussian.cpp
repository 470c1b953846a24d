#include <doctest.h>

#include <cmath>
#include <random>

#include "quadsum/gaussian.hpp"
#include "support.hpp"

using namespace quadsum;
using testsupport::random_gaussian;
using testsupport::random_point;

namespace {
const cplx I(0.0, 1.0);

double pointwise_dev(const GaussianFunction& a, const GaussianFunction& b, std::mt19937_64& rng,
                     int npts = 20, double scale = 1.5) {
    double dev = 0.0;
    for (int k = 0; k < npts; ++k) {
        VecR x = random_point(rng, a.dim(), scale);
        dev = std::max(dev, std::abs(a.eval(x) - b.eval(x)));
    }
    return dev;
}
}  // namespace

TEST_CASE("polynomial basics") {
    Poly p = Poly::variable(3, 0) * Poly::variable(3, 1) + Poly::constant(3, 2.0);
    std::vector<cplx> x = {2.0, -3.0, 7.0};
    CHECK(std::abs(p.eval(x) - cplx(-4.0)) < 1e-15);
    Poly d = p.derivative(1);
    CHECK(std::abs(d.eval(x) - cplx(2.0)) < 1e-15);

    // affine substitution x0 -> y0 + y1, x1 -> y0 - y1, x2 -> 1
    std::vector<std::vector<cplx>> M = {{1.0, 1.0}, {1.0, -1.0}, {0.0, 0.0}};
    std::vector<cplx> t = {0.0, 0.0, 1.0};
    Poly q = p.substitute_affine(2, M, t);
    std::vector<cplx> y = {1.5, 0.25};
    cplx want = (y[0] + y[1]) * (y[0] - y[1]) + 2.0;
    CHECK(std::abs(q.eval(y) - want) < 1e-14);
}

TEST_CASE("eval: standard Gaussian values") {
    auto g = GaussianFunction::standard(3);
    VecR zero = VecR::Zero(3);
    CHECK(std::abs(g.eval(zero) - cplx(1.0)) < 1e-15);
    VecR e1 = VecR::Zero(3);
    e1(0) = 1.0;
    CHECK(std::abs(g.eval(e1) - cplx(std::exp(-M_PI))) < 1e-15);
}

TEST_CASE("eval matches extended-precision evaluation on a phased term") {
    // independent long-double evaluation of c P(x) exp(-pi x^T A x + 2 pi i b.x)
    std::mt19937_64 rng(11);
    GaussianFunction g = random_gaussian(rng, 2, 1);
    const auto& t = g.terms()[0];
    VecR x = random_point(rng, 2);
    long double re = 0.0L, im = 0.0L;
    {
        long double quad_re = 0.0L, quad_im = 0.0L;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                quad_re += (long double)t.A(i, j).real() * x(i) * x(j);
                quad_im += (long double)t.A(i, j).imag() * x(i) * x(j);
            }
        long double lin_re = 0.0L, lin_im = 0.0L;
        for (int i = 0; i < 2; ++i) {
            lin_re += (long double)t.b(i).real() * x(i);
            lin_im += (long double)t.b(i).imag() * x(i);
        }
        const long double pi = 3.14159265358979323846264338327950288L;
        long double ere = -pi * quad_re - 2.0L * pi * lin_im;
        long double eim = -pi * quad_im + 2.0L * pi * lin_re;
        long double mag = std::exp(ere);
        std::vector<cplx> xv = {x(0), x(1)};
        cplx pv = t.poly.eval(xv) * t.c;
        long double pre = pv.real(), pim = pv.imag();
        long double cre = mag * std::cos(eim), cim = mag * std::sin(eim);
        re = pre * cre - pim * cim;
        im = pre * cim + pim * cre;
    }
    cplx got = g.eval(x);
    CHECK(std::abs(got - cplx((double)re, (double)im)) < 1e-13 * std::abs(got));
}

TEST_CASE("fourier: standard Gaussian is self-dual") {
    auto g = GaussianFunction::standard(2);
    auto h = fourier(g, {0, 1});
    std::mt19937_64 rng(1);
    CHECK(pointwise_dev(g, h, rng) < 1e-14);
}

TEST_CASE("fourier: x exp(-pi x^2) against the quadrature oracle") {
    // Oracle value at 10 sample points; with kernel exp(+2 pi i u x) the
    // transform is +i u exp(-pi u^2).
    GaussianTerm t;
    t.poly = Poly::variable(1, 0);
    t.A = MatC::Identity(1, 1);
    t.b = VecC::Zero(1);
    auto g = GaussianFunction::from_term(t);
    auto h = fourier(g, {0});
    for (int k = 0; k < 10; ++k) {
        double u = -2.0 + 4.0 * k / 9.0;
        cplx oracle = testsupport::fourier_oracle_1d(
            [](double x) { return cplx(x * std::exp(-M_PI * x * x)); }, u);
        VecR uu(1);
        uu(0) = u;
        cplx got = h.eval(uu);
        CHECK(std::abs(got - oracle) < 1e-12);
        CHECK(std::abs(got - I * u * std::exp(-M_PI * u * u)) < 1e-12);
    }
}

TEST_CASE("fourier: random function against the quadrature oracle, 1d") {
    std::mt19937_64 rng(17);
    GaussianFunction g = random_gaussian(rng, 1, 2);
    auto h = fourier(g, {0});
    for (int k = 0; k < 6; ++k) {
        double u = -1.5 + 3.0 * k / 5.0;
        cplx oracle = testsupport::fourier_oracle_1d(
            [&](double x) {
                VecR xv(1);
                xv(0) = x;
                return g.eval(xv);
            },
            u);
        VecR uu(1);
        uu(0) = u;
        CHECK(std::abs(h.eval(uu) - oracle) < 1e-11);
    }
}

TEST_CASE("fourier: double transform reflects the selected coordinates") {
    std::mt19937_64 rng(2);
    GaussianFunction g = random_gaussian(rng, 3, 2);
    auto h = fourier(fourier(g, {0, 2}), {0, 2});
    MatR M = MatR::Identity(3, 3);
    M(0, 0) = -1.0;
    M(2, 2) = -1.0;
    auto gref = linear_sub(g, M, 1.0);
    CHECK(pointwise_dev(gref, h, rng) < 1e-12);
}

TEST_CASE("fourier: partial transform on a subset, oracle on the transformed axis") {
    std::mt19937_64 rng(3);
    GaussianFunction g = random_gaussian(rng, 2, 1);
    auto h = fourier(g, {1});
    for (int k = 0; k < 5; ++k) {
        VecR p = random_point(rng, 2);
        cplx oracle = testsupport::fourier_oracle_1d(
            [&](double x) {
                VecR xv(2);
                xv(0) = p(0);
                xv(1) = x;
                return g.eval(xv);
            },
            p(1));
        CHECK(std::abs(h.eval(p) - oracle) < 1e-11);
    }
}

TEST_CASE("fourier_conj inverts fourier") {
    std::mt19937_64 rng(4);
    GaussianFunction g = random_gaussian(rng, 2, 2);
    auto h = fourier_conj(fourier(g, {0, 1}), {0, 1});
    CHECK(pointwise_dev(g, h, rng) < 1e-12);
}

TEST_CASE("mul_quadratic_phase: identity at t=0 and pointwise oracle") {
    std::mt19937_64 rng(5);
    GaussianFunction g = random_gaussian(rng, 3, 2);
    MatR J(3, 3);
    J << 0, 1, 0, 1, 0, 0, 0, 0, 2;
    auto same = mul_quadratic_phase(g, 0.0, J);
    CHECK(pointwise_dev(g, same, rng) < 1e-15);

    double t = 0.73;
    auto h = mul_quadratic_phase(g, t, J);
    for (int k = 0; k < 20; ++k) {
        VecR x = random_point(rng, 3);
        double q = 0.5 * x.dot(J * x);
        cplx want = std::exp(cplx(0.0, 2.0 * M_PI * t * q)) * g.eval(x);
        CHECK(std::abs(h.eval(x) - want) < 1e-12);
    }
    auto back = mul_quadratic_phase(h, -t, J);
    CHECK(pointwise_dev(g, back, rng) < 1e-12);
}

TEST_CASE("linear_sub: identity, dilation, composition") {
    std::mt19937_64 rng(6);
    auto g = GaussianFunction::standard(2);
    auto same = linear_sub(g, MatR::Identity(2, 2), 1.0);
    CHECK(pointwise_dev(g, same, rng) < 1e-15);

    auto h = linear_sub(g, 2.0 * MatR::Identity(2, 2), 1.0);
    for (int k = 0; k < 5; ++k) {
        VecR x = random_point(rng, 2);
        CHECK(std::abs(h.eval(x) - std::exp(-4.0 * M_PI * x.squaredNorm())) < 1e-13);
    }

    GaussianFunction f = random_gaussian(rng, 2, 2);
    MatR M1(2, 2), M2(2, 2);
    M1 << 1, 0.5, -0.25, 1.25;
    M2 << 0.75, -1, 0.5, 0.5;
    auto step = linear_sub(linear_sub(f, M1, 1.0), M2, 1.0);
    auto direct = linear_sub(f, M1 * M2, 1.0);
    CHECK(pointwise_dev(step, direct, rng) < 1e-12);
}

TEST_CASE("translate matches pointwise") {
    std::mt19937_64 rng(7);
    GaussianFunction g = random_gaussian(rng, 2, 2);
    VecR v = random_point(rng, 2);
    auto h = translate(g, v);
    for (int k = 0; k < 10; ++k) {
        VecR x = random_point(rng, 2);
        CHECK(std::abs(h.eval(x) - g.eval(VecR(x - v))) < 1e-12);
    }
}

TEST_CASE("restrict_zero: full restriction, separability, mixed-A oracle") {
    std::mt19937_64 rng(8);
    GaussianFunction g = random_gaussian(rng, 3, 2);

    auto all = restrict_zero(g, {0, 1, 2});
    VecR empty(0);
    CHECK(std::abs(all.eval(empty) - g.eval(VecR(VecR::Zero(3)))) < 1e-14);

    auto s3 = GaussianFunction::standard(3);
    auto s2 = restrict_zero(s3, {2});
    CHECK(pointwise_dev(s2, GaussianFunction::standard(2), rng) < 1e-15);

    auto r = restrict_zero(g, {1});
    for (int k = 0; k < 10; ++k) {
        VecR y = random_point(rng, 2);
        VecR x(3);
        x << y(0), 0.0, y(1);
        CHECK(std::abs(r.eval(y) - g.eval(x)) < 1e-13);
    }
}

TEST_CASE("Plancherel via grid quadrature") {
    std::mt19937_64 rng(9);
    for (int n = 1; n <= 3; ++n) {
        GaussianFunction g = random_gaussian(rng, n, 2);
        auto h = fourier(g, [&] {
            std::vector<int> c(n);
            for (int i = 0; i < n; ++i) c[i] = i;
            return c;
        }());
        int pts = n <= 2 ? 400 : 120;
        double L = 6.0;
        double eg = testsupport::grid_integral(
            [&](const VecR& x) { return std::norm(g.eval(x)); }, n, L, pts);
        double eh = testsupport::grid_integral(
            [&](const VecR& x) { return std::norm(h.eval(x)); }, n, L, pts);
        CHECK(std::abs(eg - eh) < 1e-9 * std::max(1.0, eg));
    }
}

TEST_CASE("Fourier exchanges translation and modulation") {
    std::mt19937_64 rng(10);
    GaussianFunction g = random_gaussian(rng, 2, 2);
    VecR v = random_point(rng, 2);
    std::vector<int> all = {0, 1};
    auto lhs = fourier(translate(g, v), all);
    auto gh = fourier(g, all);
    for (int k = 0; k < 12; ++k) {
        VecR u = random_point(rng, 2);
        cplx phase = std::exp(cplx(0.0, 2.0 * M_PI * u.dot(v)));
        CHECK(std::abs(lhs.eval(u) - phase * gh.eval(u)) < 1e-10);
    }
}

TEST_CASE("term-list linearity: ops distribute over concatenation") {
    std::mt19937_64 rng(12);
    GaussianFunction a = random_gaussian(rng, 2, 1);
    GaussianFunction b = random_gaussian(rng, 2, 1);
    GaussianFunction ab = a;
    ab += b;
    std::vector<int> all = {0, 1};
    auto f_ab = fourier(ab, all);
    auto f_a = fourier(a, all);
    auto f_b = fourier(b, all);
    GaussianFunction f_sum = f_a;
    f_sum += f_b;
    CHECK(pointwise_dev(f_ab, f_sum, rng) < 1e-12);
}

TEST_CASE("closure: random op sequences keep Re(A) positive definite") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 5; ++trial) {
        GaussianFunction g = random_gaussian(rng, 3, 2);
        MatR J(3, 3);
        J << 0, 1, 0, 1, 0, 0, 0, 0, 2;
        for (int step = 0; step < 10; ++step) {
            switch (rng() % 4) {
                case 0:
                    g = fourier(g, {static_cast<int>(rng() % 3)});
                    break;
                case 1:
                    g = mul_quadratic_phase(g, std::uniform_real_distribution<double>(-1, 1)(rng), J);
                    break;
                case 2: {
                    MatR M = MatR::Identity(3, 3);
                    M(0, 1) = std::uniform_real_distribution<double>(-1, 1)(rng);
                    M(1, 1) = 1.5;
                    g = linear_sub(g, M, 1.0);
                    break;
                }
                case 3:
                    g = fourier(g, {0, 1, 2});
                    break;
            }
            CHECK(g.min_re_eigenvalue() > 0.0);
        }
    }
}

TEST_CASE("merge_terms folds identical (A,b) pairs exactly") {
    auto g = GaussianFunction::standard(2);
    auto h = g.scaled(2.5);
    GaussianFunction s = g;
    s += h;
    s.merge_terms();
    CHECK(s.term_count() == 1);
    VecR x(2);
    x << 0.3, -0.4;
    CHECK(std::abs(s.eval(x) - 3.5 * std::exp(-M_PI * x.squaredNorm())) < 1e-14);
}

TEST_CASE("taylor coefficients of a 1-d function") {
    // exp(-pi x^2): coefficients 1, 0, -pi, 0, pi^2/2
    auto g = GaussianFunction::standard(1);
    CHECK(std::abs(taylor_coeff_1d(g, 0) - cplx(1.0)) < 1e-14);
    CHECK(std::abs(taylor_coeff_1d(g, 1)) < 1e-14);
    CHECK(std::abs(taylor_coeff_1d(g, 2) + cplx(M_PI)) < 1e-13);
    CHECK(std::abs(taylor_coeff_1d(g, 4) - cplx(M_PI * M_PI / 2.0)) < 1e-12);
}
