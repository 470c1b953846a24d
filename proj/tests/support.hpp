#pragma once

// Shared test utilities: independent numeric oracles (never routed through the
// library code paths they are checking) and random data generators.

#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "quadsum/gaussian.hpp"

namespace testsupport {

using quadsum::cplx;
using quadsum::GaussianFunction;
using quadsum::GaussianTerm;
using quadsum::MatC;
using quadsum::Poly;
using quadsum::VecC;
using quadsum::VecR;

// 1-D Fourier transform oracle with kernel exp(+2 pi i u x) by trapezoid on a
// wide fine grid; spectrally accurate for Schwartz-class integrands.
inline cplx fourier_oracle_1d(const std::function<cplx(double)>& f, double u,
                              double L = 10.0, int n = 16384) {
    const double h = 2.0 * L / n;
    cplx acc = 0.0;
    for (int i = 0; i <= n; ++i) {
        double x = -L + i * h;
        double w = (i == 0 || i == n) ? 0.5 : 1.0;
        acc += w * f(x) * std::exp(cplx(0.0, 2.0 * M_PI * u * x));
    }
    return acc * h;
}

// Tensor-grid integral of a function on R^n (trapezoid per axis).
inline double grid_integral(const std::function<double(const VecR&)>& f, int n, double L,
                            int pts) {
    const double h = 2.0 * L / pts;
    long total = 1;
    for (int i = 0; i < n; ++i) total *= (pts + 1);
    double acc = 0.0;
    VecR x(n);
    for (long idx = 0; idx < total; ++idx) {
        long rem = idx;
        double w = 1.0;
        for (int i = 0; i < n; ++i) {
            int k = rem % (pts + 1);
            rem /= (pts + 1);
            x(i) = -L + k * h;
            if (k == 0 || k == pts) w *= 0.5;
        }
        acc += w * f(x);
    }
    return acc * std::pow(h, n);
}

// Random Gaussian-polynomial function: Re(A) positive definite by
// construction, complex symmetric part and phases bounded.
inline GaussianFunction random_gaussian(std::mt19937_64& rng, int n, int nterms,
                                        int max_degree = 2) {
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    GaussianFunction g(n);
    for (int t = 0; t < nterms; ++t) {
        quadsum::MatR S(n, n), T(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                S(i, j) = 0.3 * uni(rng);
                T(i, j) = 0.3 * uni(rng);
            }
        quadsum::MatR reA = quadsum::MatR::Identity(n, n) + 0.5 * (S + S.transpose());
        // keep Re(A) safely positive definite
        reA += (0.6 * n) * quadsum::MatR::Identity(n, n) * 0.0;
        quadsum::MatR imA = 0.5 * (T + T.transpose());
        GaussianTerm term;
        term.A = reA.cast<cplx>() + cplx(0, 1) * imA.cast<cplx>();
        term.b = VecC(n);
        for (int i = 0; i < n; ++i) term.b(i) = cplx(0.4 * uni(rng), 0.4 * uni(rng));
        Poly p = Poly::constant(n, cplx(uni(rng) + 1.5, uni(rng)));
        if (max_degree >= 1 && n > 0) {
            std::vector<cplx> lin(n);
            for (int i = 0; i < n; ++i) lin[i] = cplx(uni(rng), uni(rng));
            p += Poly::linear(n, lin, 0.0);
        }
        if (max_degree >= 2 && n > 0) {
            int i = static_cast<int>(rng() % n), j = static_cast<int>(rng() % n);
            p += Poly::variable(n, i) * Poly::variable(n, j) * cplx(uni(rng), uni(rng));
        }
        term.poly = p;
        term.c = 1.0;
        g.append(std::move(term));
    }
    return g;
}

inline VecR random_point(std::mt19937_64& rng, int n, double scale = 1.5) {
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    VecR x(n);
    for (int i = 0; i < n; ++i) x(i) = scale * uni(rng);
    return x;
}

}  // namespace testsupport
