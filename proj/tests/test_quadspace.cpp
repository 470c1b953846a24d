#include <doctest.h>

#include <numeric>
#include <random>

#include "quadsum/quad_family.hpp"
#include "quadsum/sl2.hpp"

using namespace quadsum;

namespace {

MatI empty_J0() { return MatI(0, 0); }

MatI two_I2() {
    MatI j(2, 2);
    j << 2, 0, 0, 2;
    return j;
}

// chi(n) for n coprime to the conductor via local Hilbert symbols: the value
// at a prime p is (p, disc_raw)_p, extended multiplicatively.  Independent
// oracle for the Kronecker route.
int chi_hilbert_oracle(std::int64_t disc_raw, std::int64_t n) {
    int prod = 1;
    for (std::int64_t p = 2; p <= n; ++p) {
        if (n % p != 0) continue;
        while (n % p == 0) {
            n /= p;
            prod *= hilbert_symbol(p, disc_raw, p);
        }
    }
    return prod;
}

}  // namespace

TEST_CASE("build_family: split senary tower") {
    auto fam = QuadFamily::build(empty_J0(), 3);
    CHECK(fam.dim(3) == 6);
    MatI J3 = fam.J(3);
    CHECK(J3.rows() == 6);
    CHECK(J3(0, 1) == 1);
    CHECK(J3(4, 5) == 1);
    CHECK(J3(0, 0) == 0);
    CHECK(fam.disc() == 1);
    CHECK(fam.chi_trivial());
    CHECK(fam.chi(7) == 1);
    CHECK(fam.chi(10) == 1);
}

TEST_CASE("build_family: definite binary core, conductor 4 character") {
    auto fam = QuadFamily::build(two_I2(), 1);
    CHECK(fam.dim(1) == 4);
    CHECK(fam.disc() == -4);
    CHECK(fam.conductor() == 4);
    CHECK_FALSE(fam.chi_trivial());
    // oracle: Hilbert-symbol product for (3, disc_raw) over all places
    CHECK(fam.chi(3) == chi_hilbert_oracle(fam.disc_raw(1), 3));
    CHECK(fam.chi(3) == -1);
    CHECK(fam.chi(5) == chi_hilbert_oracle(fam.disc_raw(1), 5));
    CHECK(fam.chi(5) == 1);
    CHECK(fam.chi(2) == 0);
}

TEST_CASE("build_family: error cases") {
    MatI odd(1, 1);
    odd << 2;
    CHECK_THROWS_AS(QuadFamily::build(odd, 1), family_error);
    MatI sing(2, 2);
    sing << 2, 2, 2, 2;
    CHECK_THROWS_AS(QuadFamily::build(sing, 1), family_error);
    CHECK_THROWS_AS(QuadFamily::build(empty_J0(), 1), family_error);
    // isotropic core caught by the small-zero scan
    MatI hyp(2, 2);
    hyp << 0, 1, 1, 0;
    CHECK_THROWS_AS(QuadFamily::build(hyp, 1), family_error);
    try {
        QuadFamily::build(empty_J0(), 1);
        CHECK(false);
    } catch (const family_error& e) {
        CHECK(e.code() == FamilyError::EllTooSmall);
    }
}

TEST_CASE("disc square class is independent of the level") {
    auto fam = QuadFamily::build(two_I2(), 3);
    for (int i = 0; i <= 3; ++i) {
        CHECK(fam.disc_raw(i) == fam.disc_raw(0));
    }
}

TEST_CASE("chi is completely multiplicative away from the conductor") {
    auto fam = QuadFamily::build(two_I2(), 1);
    std::mt19937_64 rng(21);
    int checked = 0;
    while (checked < 100) {
        std::int64_t m = 1 + static_cast<std::int64_t>(rng() % 400);
        std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 400);
        if (std::gcd(m, fam.conductor()) != 1 || std::gcd(n, fam.conductor()) != 1) continue;
        CHECK(fam.chi(m * n) == fam.chi(m) * fam.chi(n));
        CHECK(fam.chi(m) * fam.chi(m) == 1);
        ++checked;
    }
}

TEST_CASE("weil index at the real place") {
    auto split = QuadFamily::build(empty_J0(), 3);
    CHECK(std::abs(split.weil_index_arch() - std::complex<double>(1.0, 0.0)) < 1e-15);

    auto pos = QuadFamily::build(two_I2(), 1);  // signature (3,1), sigma = 2
    CHECK(pos.signature() == 2);
    CHECK(std::abs(pos.weil_index_arch() - std::complex<double>(0.0, 1.0)) < 1e-14);

    auto neg = QuadFamily::build(MatI(-two_I2()), 1);  // sign flip under J0 -> -J0
    CHECK(neg.signature() == -2);
    CHECK(std::abs(neg.weil_index_arch() - std::complex<double>(0.0, -1.0)) < 1e-14);
}

TEST_CASE("pairing symmetry and polarization identity, exact") {
    auto fam = QuadFamily::build(two_I2(), 2);
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 50; ++trial) {
        int d = fam.dim(2);
        VecI v(d), w(d);
        for (int i = 0; i < d; ++i) {
            v(i) = static_cast<std::int64_t>(rng() % 21) - 10;
            w(i) = static_cast<std::int64_t>(rng() % 21) - 10;
        }
        CHECK(fam.pairing(2, v, w) == fam.pairing(2, w, v));
        CHECK(fam.quad_value(2, VecI(v + w)) - fam.quad_value(2, v) - fam.quad_value(2, w) ==
              fam.pairing(2, v, w));
    }
}

TEST_CASE("unipotent elements: abelian group law and exact Q-invariance") {
    auto fam = QuadFamily::build(two_I2(), 1);
    std::mt19937_64 rng(23);
    int i = 0;  // u(x) acts on V_1 = V_0 + hyperbolic pair
    int d = fam.dim(i);
    for (int trial = 0; trial < 30; ++trial) {
        VecI x(d), y(d), v(d + 2);
        for (int k = 0; k < d; ++k) {
            x(k) = static_cast<std::int64_t>(rng() % 11) - 5;
            y(k) = static_cast<std::int64_t>(rng() % 11) - 5;
        }
        for (int k = 0; k < d + 2; ++k) v(k) = static_cast<std::int64_t>(rng() % 11) - 5;
        MatI ux = unipotent_matrix(fam, i, x);
        MatI uy = unipotent_matrix(fam, i, y);
        MatI uxy = unipotent_matrix(fam, i, VecI(x + y));
        CHECK((MatI(ux * uy) - uxy).cwiseAbs().maxCoeff() == 0);
        CHECK(fam.quad_value(i + 1, VecI(ux * v)) == fam.quad_value(i + 1, v));
    }
}

TEST_CASE("similitude norm of scalar elements") {
    auto fam = QuadFamily::build(two_I2(), 1);
    std::mt19937_64 rng(24);
    double c = 1.7;
    Eigen::MatrixXd h = c * Eigen::MatrixXd::Identity(4, 4);
    for (int trial = 0; trial < 10; ++trial) {
        Eigen::VectorXd v(4);
        for (int k = 0; k < 4; ++k)
            v(k) = std::uniform_real_distribution<double>(-2, 2)(rng);
        double lhs = fam.quad_value_real(1, h * v);
        double rhs = c * c * fam.quad_value_real(1, v);
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("SL2 Iwasawa factorization recomposes") {
    std::mt19937_64 rng(25);
    for (int trial = 0; trial < 50; ++trial) {
        std::uniform_real_distribution<double> uni(-2.0, 2.0);
        double a = uni(rng), b = uni(rng), c = uni(rng);
        // complete to determinant one
        double d;
        if (std::abs(a) > 0.1) {
            d = (1.0 + b * c) / a;
        } else {
            a = 1.0;
            d = 1.0 + b * c;
        }
        auto g = SL2Element::from_entries(a, b, c, d);
        auto iw = g.iwasawa();
        auto re = SL2Element::upper(iw.x) * SL2Element::torus(iw.t) * SL2Element::rotation(iw.theta);
        CHECK(std::abs(re.a - g.a) < 1e-12);
        CHECK(std::abs(re.b - g.b) < 1e-12);
        CHECK(std::abs(re.c - g.c) < 1e-12);
        CHECK(std::abs(re.d - g.d) < 1e-12);
        CHECK(g.H_B() == doctest::Approx(std::log(iw.t)).epsilon(1e-14));
        CHECK(iw.t > 0.0);
    }
}

TEST_CASE("kronecker symbol spot values") {
    CHECK(kronecker_symbol(-4, 3) == -1);
    CHECK(kronecker_symbol(-4, 5) == 1);
    CHECK(kronecker_symbol(-4, 2) == 0);
    CHECK(kronecker_symbol(1, 7) == 1);
    CHECK(kronecker_symbol(5, 5) == 0);
    CHECK(kronecker_symbol(8, 3) == -1);
    CHECK(kronecker_symbol(-8, 3) == 1);
    CHECK(kronecker_symbol(12, 35) == 1);
    CHECK(kronecker_symbol(3, 35) == 1);
    CHECK(kronecker_symbol(3, 5) == -1);
}

TEST_CASE("hilbert symbol: bilinearity and product formula spot checks") {
    // product over all places is 1
    auto product_all = [](std::int64_t a, std::int64_t b) {
        std::int64_t m = std::llabs(2 * a * b);
        int prod = hilbert_symbol(a, b, 0);
        for (std::int64_t p = 2; p <= m; ++p) {
            if (m % p != 0) continue;
            while (m % p == 0) m /= p;
            prod *= hilbert_symbol(a, b, p);
        }
        return prod;
    };
    std::mt19937_64 rng(26);
    for (int trial = 0; trial < 60; ++trial) {
        std::int64_t a = static_cast<std::int64_t>(rng() % 40) - 20;
        std::int64_t b = static_cast<std::int64_t>(rng() % 40) - 20;
        if (a == 0 || b == 0) continue;
        CHECK(product_all(a, b) == 1);
    }
    CHECK(hilbert_symbol(-1, -1, 0) == -1);
    CHECK(hilbert_symbol(-1, -1, 2) == -1);
    CHECK(hilbert_symbol(-1, -1, 3) == 1);
    CHECK(hilbert_symbol(2, 3, 3) == -1);
}
