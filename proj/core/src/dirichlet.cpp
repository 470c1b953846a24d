#include "quadsum/dirichlet.hpp"

#include <cmath>
#include <numbers>

#include "quadsum/quad_family.hpp"

namespace quadsum {

namespace {

constexpr double kPi = std::numbers::pi;

// Lanczos g=7, n=9 (Godfrey); relative error ~1e-15 on the right half-plane.
constexpr double kLanczos[9] = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
};

cplx lgamma_right(cplx z) {
    // valid for Re z > 0.5
    z -= 1.0;
    cplx x = kLanczos[0];
    for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
    cplx t = z + 7.5;
    return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

// Bernoulli numbers B_2 .. B_24.
constexpr double kBernoulli[12] = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
};

}  // namespace

cplx lgamma_complex(cplx z) {
    if (z.real() >= 0.5) return lgamma_right(z);
    // reflection: log Gamma(z) = log(pi / sin(pi z)) - log Gamma(1 - z)
    cplx s = std::sin(kPi * z);
    return std::log(kPi) - std::log(s) - lgamma_right(1.0 - z);
}

cplx hurwitz_zeta(cplx s, double x) {
    if (x <= 0.0) throw std::invalid_argument("hurwitz_zeta: x must be positive");
    if (std::abs(s - cplx(1.0)) < 1e-12) throw pole_error("hurwitz_zeta: pole at s = 1");

    // shift until x + M is comfortably large for the asymptotic tail
    const double target = std::max(15.0, 0.8 * std::abs(s));
    int M = 0;
    while (x + M <= target) ++M;

    cplx acc = 0.0;
    for (int m = 0; m < M; ++m) acc += std::exp(-s * std::log(x + m));
    double N = x + M;
    cplx lnN = std::log(cplx(N));
    acc += std::exp((1.0 - s) * lnN) / (s - 1.0);
    acc += 0.5 * std::exp(-s * lnN);

    // Euler-Maclaurin corrections, 12 terms
    cplx poch = s;  // (s)_{2j-1} built up incrementally
    cplx npow = std::exp((-s - 1.0) * lnN);
    double fact = 2.0;  // (2j)!
    for (int j = 1; j <= 12; ++j) {
        acc += kBernoulli[j - 1] / fact * poch * npow;
        // advance to (s)_{2j+1} and (2j+2)!
        poch *= (s + static_cast<double>(2 * j - 1)) * (s + static_cast<double>(2 * j));
        npow /= N * N;
        fact *= (2 * j + 1) * (2 * j + 2);
    }
    return acc;
}

DirichletL::DirichletL(std::int64_t fundamental_disc) : disc_(fundamental_disc) {
    q_ = disc_ == 1 ? 1 : std::llabs(disc_);
    table_.resize(q_);
    for (std::int64_t a = 0; a < q_; ++a)
        table_[a] = (a == 0 && q_ > 1) ? 0 : kronecker_symbol(disc_, a == 0 ? q_ : a);
    if (q_ == 1) table_[0] = 1;
}

int DirichletL::chi(std::int64_t n) const {
    std::int64_t r = ((n % q_) + q_) % q_;
    return table_[r];
}

int DirichletL::parity() const { return disc_ < 0 ? -1 : 1; }

cplx DirichletL::gauss_sum() const {
    cplx acc = 0.0;
    for (std::int64_t a = 0; a < q_; ++a) {
        if (table_[a] == 0) continue;
        double arg = 2.0 * kPi * static_cast<double>(a) / static_cast<double>(q_);
        acc += static_cast<double>(table_[a]) * cplx(std::cos(arg), std::sin(arg));
    }
    return acc;
}

cplx DirichletL::value(cplx s) const {
    if (std::abs(s - cplx(1.0)) < 1e-8) {
        if (trivial()) throw pole_error("L(s): pole at s = 1 for the trivial character");
        // the Hurwitz poles cancel across the character sum; evaluate by a
        // symmetric offset around the removable point
        double h = 1e-5;
        return 0.5 * (value(s + h) + value(s - h));
    }
    cplx acc = 0.0;
    for (std::int64_t a = 1; a <= q_; ++a) {
        int ch = table_[a % q_];
        if (ch == 0) continue;
        acc += static_cast<double>(ch) *
               hurwitz_zeta(s, static_cast<double>(a) / static_cast<double>(q_));
    }
    return acc * std::exp(-s * std::log(static_cast<double>(q_)));
}

}  // namespace quadsum
