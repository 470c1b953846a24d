#include "quadsum/quad_family.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

namespace quadsum {

namespace {

// Fraction-free (Bareiss) integer determinant.
std::int64_t int_determinant(MatI m) {
    int n = static_cast<int>(m.rows());
    if (n == 0) return 1;
    std::int64_t prev = 1;
    std::int64_t sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m(k, k) == 0) {
            int piv = -1;
            for (int r = k + 1; r < n; ++r)
                if (m(r, k) != 0) {
                    piv = r;
                    break;
                }
            if (piv < 0) return 0;
            m.row(k).swap(m.row(piv));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
            }
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

// Squarefree part, sign preserved.
std::int64_t squarefree_part(std::int64_t d) {
    std::int64_t sign = d < 0 ? -1 : 1;
    std::int64_t n = std::llabs(d);
    std::int64_t out = 1;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e % 2) out *= p;
    }
    out *= n;  // remaining prime
    return sign * out;
}

std::int64_t fundamental_discriminant(std::int64_t raw) {
    std::int64_t m = squarefree_part(raw);
    std::int64_t r = ((m % 4) + 4) % 4;
    return (r == 1) ? m : 4 * m;
}

}  // namespace

int kronecker_symbol(std::int64_t a, std::int64_t n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    // factor out twos of n
    int v2 = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++v2;
    }
    if (v2 > 0) {
        if (a % 2 == 0) return 0;
        std::int64_t am8 = ((a % 8) + 8) % 8;
        if (v2 % 2 == 1 && (am8 == 3 || am8 == 5)) result = -result;
    }
    a = ((a % n) + n) % n;
    // Jacobi symbol (a|n) for odd positive n by reciprocity.
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            std::int64_t nm8 = n % 8;
            if (nm8 == 3 || nm8 == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return (n == 1) ? result : 0;
}

namespace {

int legendre(std::int64_t u, std::int64_t p) { return kronecker_symbol(u, p); }

}  // namespace

int hilbert_symbol(std::int64_t a, std::int64_t b, std::int64_t p) {
    if (a == 0 || b == 0) throw std::invalid_argument("hilbert_symbol: zero argument");
    if (p == 0) {  // real place
        return (a < 0 && b < 0) ? -1 : 1;
    }
    auto val = [&](std::int64_t x, int& v) {
        v = 0;
        while (x % p == 0) {
            x /= p;
            ++v;
        }
        return x;
    };
    int alpha, beta;
    std::int64_t u = val(a, alpha), v = val(b, beta);
    if (p == 2) {
        auto eps = [](std::int64_t x) { return (((x - 1) / 2) % 2 + 2) % 2; };
        auto omega = [](std::int64_t x) { return (((x * x - 1) / 8) % 2 + 2) % 2; };
        int e = static_cast<int>((eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)) % 2);
        return e ? -1 : 1;
    }
    int e = (alpha * beta) % 2;
    int sign = 1;
    if (e && ((p - 1) / 2) % 2 == 1) sign = -sign;
    if (beta % 2) sign *= legendre(u, p);
    if (alpha % 2) sign *= legendre(v, p);
    return sign;
}

QuadFamily QuadFamily::build(const MatI& J0, int ell) {
    int d0 = static_cast<int>(J0.rows());
    if (J0.cols() != d0 || d0 % 2 != 0)
        throw family_error(FamilyError::OddDimension, "J0 must be square of even dimension");
    for (int i = 0; i < d0; ++i) {
        if (J0(i, i) % 2 != 0)
            throw family_error(FamilyError::OddDiagonal,
                               "J0 must have even diagonal so Q is integral on the lattice");
        for (int j = 0; j < d0; ++j)
            if (J0(i, j) != J0(j, i))
                throw family_error(FamilyError::OddDimension, "J0 must be symmetric");
    }
    if (d0 > 0 && int_determinant(J0) == 0)
        throw family_error(FamilyError::SingularJ0, "J0 is singular");
    if (ell < 1 || (d0 == 0 && ell < 2))
        throw family_error(FamilyError::EllTooSmall,
                           "need ell >= 1, and ell > 1 when the core is zero-dimensional");

    QuadFamily fam;
    fam.dim0_ = d0;
    fam.ell_ = ell;
    fam.J0_ = J0;

    // Cheap configuration sanity scan: a small integral zero of Q_0 means the
    // asserted anisotropy is wrong.
    if (d0 > 0) {
        const std::int64_t R = (d0 <= 4) ? 20 : 5;
        VecI v = VecI::Zero(d0);
        std::int64_t total = 1;
        for (int i = 0; i < d0; ++i) total *= (2 * R + 1);
        for (std::int64_t idx = 0; idx < total; ++idx) {
            std::int64_t rem = idx;
            bool zero = true;
            for (int i = 0; i < d0; ++i) {
                v(i) = rem % (2 * R + 1) - R;
                rem /= (2 * R + 1);
                if (v(i) != 0) zero = false;
            }
            if (zero) continue;
            std::int64_t q = (v.transpose() * (J0 * v))(0, 0);
            if (q == 0)
                throw family_error(FamilyError::IsotropicCore,
                                   "Q0 has a small integral zero; the core must be anisotropic");
        }
    }

    std::int64_t raw = fam.disc_raw(0);
    fam.disc_fund_ = fundamental_discriminant(raw);
    fam.conductor_ = std::llabs(fam.disc_fund_);

    // Signature of J_ell = signature of J0 (each hyperbolic block contributes 0).
    if (d0 > 0) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J0.cast<double>());
        int sig = 0;
        for (int i = 0; i < d0; ++i) sig += es.eigenvalues()[i] > 0 ? 1 : -1;
        fam.signature_ = sig;
    } else {
        fam.signature_ = 0;
    }
    return fam;
}

MatI QuadFamily::J(int i) const {
    // levels above ell are legal: the tower extends by appending hyperbolic
    // blocks, which the top-level transform identities need
    if (i < 0) throw std::invalid_argument("QuadFamily::J: negative level");
    int d = dim(i);
    MatI m = MatI::Zero(d, d);
    m.topLeftCorner(dim0_, dim0_) = J0_;
    for (int k = 0; k < i; ++k) {
        int off = dim0_ + 2 * k;
        m(off, off + 1) = 1;
        m(off + 1, off) = 1;
    }
    return m;
}

Eigen::MatrixXd QuadFamily::J_real(int i) const { return J(i).cast<double>(); }

std::int64_t QuadFamily::disc_raw(int i) const {
    std::int64_t det = int_determinant(J(i));
    int half = dim(i) / 2;
    return (half % 2 == 0) ? det : -det;
}

int QuadFamily::chi(std::int64_t n) const {
    if (n == 0) throw std::invalid_argument("chi: n must be nonzero");
    return kronecker_symbol(disc_fund_, n);
}

std::complex<double> QuadFamily::weil_index_arch() const {
    double arg = 2.0 * std::numbers::pi * signature_ / 8.0;
    return {std::cos(arg), std::sin(arg)};
}

std::int64_t QuadFamily::pairing(int i, const VecI& v, const VecI& w) const {
    return (v.transpose() * (J(i) * w))(0, 0);
}

std::int64_t QuadFamily::quad_value(int i, const VecI& v) const {
    std::int64_t q2 = (v.transpose() * (J(i) * v))(0, 0);
    // even diagonal makes v^T J v even
    return q2 / 2;
}

double QuadFamily::quad_value_real(int i, const Eigen::VectorXd& v) const {
    return 0.5 * v.dot(J_real(i) * v);
}

GOElement GOElement::similitude(const Eigen::MatrixXd& h, double lambda) {
    GOElement e;
    e.kind = Kind::Similitude;
    e.h = h;
    e.lambda = lambda;
    return e;
}

GOElement GOElement::torus(double a) {
    if (a == 0.0) throw std::invalid_argument("GOElement::torus: a must be nonzero");
    GOElement e;
    e.kind = Kind::TorusA;
    e.a = a;
    return e;
}

GOElement GOElement::unipotent(const Eigen::VectorXd& x) {
    GOElement e;
    e.kind = Kind::Unipotent;
    e.x = x;
    return e;
}

GOElement GOElement::weyl_swap() {
    GOElement e;
    e.kind = Kind::WeylSwap;
    return e;
}

MatI unipotent_matrix(const QuadFamily& fam, int i, const VecI& x) {
    // (v, a, b) -> (v + a Jx, a, b - <v, Jx> - a Q(Jx)); for involutive J_i
    // (every split tower) the bottom row is (-x^T, -Q(x)).
    int d = fam.dim(i);
    if (x.size() != d) throw std::invalid_argument("unipotent_matrix: x dimension");
    MatI m = MatI::Identity(d + 2, d + 2);
    MatI J = fam.J(i);
    VecI Jx = J * x;
    VecI JJx = J * Jx;
    for (int r = 0; r < d; ++r) m(r, d) = Jx(r);
    for (int c = 0; c < d; ++c) m(d + 1, c) = -JJx(c);
    m(d + 1, d) = -fam.quad_value(i, Jx);
    return m;
}

}  // namespace quadsum
