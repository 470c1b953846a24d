#include "quadsum/gaussian.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace quadsum {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

// det(C)^{-1/2} for complex symmetric C with Re(C) > 0, on the branch
// continued from real positive definite matrices.  Every eigenvalue of such a
// C has positive real part, so the principal square root of each eigenvalue
// never crosses the cut along the continuation path (1-t) Re(C) + t C.
cplx det_inv_sqrt(const MatC& C) {
    Eigen::ComplexEigenSolver<MatC> es(C, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success) throw std::runtime_error("det_inv_sqrt: eigensolver failed");
    cplx acc = 1.0;
    for (int i = 0; i < C.rows(); ++i) {
        cplx lam = es.eigenvalues()[i];
        if (lam.real() <= 0.0)
            throw std::runtime_error("det_inv_sqrt: eigenvalue left the right half-plane");
        acc *= std::exp(-0.5 * std::log(lam));
    }
    return acc;
}

double cond_estimate(const MatC& C) {
    Eigen::ComplexEigenSolver<MatC> es(C, false);
    double lo = 1e300, hi = 0.0;
    for (int i = 0; i < C.rows(); ++i) {
        double a = std::abs(es.eigenvalues()[i]);
        lo = std::min(lo, a);
        hi = std::max(hi, a);
    }
    if (lo == 0.0) return 1e300;
    return hi / lo;
}

}  // namespace

GaussianFunction GaussianFunction::standard(int n) {
    GaussianTerm t;
    t.poly = Poly::constant(n, 1.0);
    t.A = MatC::Identity(n, n);
    t.b = VecC::Zero(n);
    t.c = 1.0;
    GaussianFunction g(n);
    g.append(std::move(t));
    return g;
}

GaussianFunction GaussianFunction::from_term(GaussianTerm t) {
    GaussianFunction g(t.dim());
    g.append(std::move(t));
    return g;
}

void GaussianFunction::append(GaussianTerm t) {
    if (t.dim() != n_) throw std::invalid_argument("GaussianFunction::append: dimension mismatch");
    if (t.poly.nvars() != n_) throw std::invalid_argument("GaussianFunction::append: poly dimension");
    if (t.poly.is_zero() || t.c == cplx(0.0)) return;
    terms_.push_back(std::move(t));
}

GaussianFunction& GaussianFunction::operator+=(const GaussianFunction& o) {
    if (o.n_ != n_) throw std::invalid_argument("GaussianFunction+=: dimension mismatch");
    for (const auto& t : o.terms_) terms_.push_back(t);
    return *this;
}

GaussianFunction GaussianFunction::scaled(cplx s) const {
    GaussianFunction r(n_);
    if (s == cplx(0.0)) return r;
    for (auto t : terms_) {
        t.c *= s;
        r.terms_.push_back(std::move(t));
    }
    return r;
}

cplx GaussianFunction::eval(const VecR& x) const {
    VecC xc = x.cast<cplx>();
    return eval(xc);
}

cplx GaussianFunction::eval(const VecC& x) const {
    if (x.size() != n_) throw std::invalid_argument("GaussianFunction::eval: dimension mismatch");
    std::vector<cplx> xv(x.data(), x.data() + x.size());
    cplx acc = 0.0;
    for (const auto& t : terms_) {
        cplx quad = (x.transpose() * (t.A * x))(0, 0);
        cplx lin = (t.b.transpose() * x)(0, 0);
        cplx e = std::exp(-kPi * quad + 2.0 * kPi * kI * lin);
        acc += t.c * t.poly.eval(xv) * e;
    }
    return acc;
}

double GaussianFunction::min_re_eigenvalue() const {
    double m = 1e300;
    for (const auto& t : terms_) {
        MatR reA = 0.5 * (t.A + t.A.adjoint()).real();
        Eigen::SelfAdjointEigenSolver<MatR> es(reA);
        m = std::min(m, es.eigenvalues().minCoeff());
    }
    return terms_.empty() ? 0.0 : m;
}

void GaussianFunction::merge_terms(double eps) {
    std::vector<GaussianTerm> merged;
    for (auto& t : terms_) {
        bool found = false;
        for (auto& m : merged) {
            double scale = std::max(1.0, std::max(m.A.cwiseAbs().maxCoeff(), m.b.cwiseAbs().maxCoeff()));
            if ((m.A - t.A).cwiseAbs().maxCoeff() <= eps * scale &&
                (m.b - t.b).cwiseAbs().maxCoeff() <= eps * scale) {
                Poly p = m.poly;
                p *= m.c;
                Poly q = t.poly;
                q *= t.c;
                p += q;
                m.poly = std::move(p);
                m.c = 1.0;
                found = true;
                break;
            }
        }
        if (!found) merged.push_back(std::move(t));
    }
    terms_.clear();
    for (auto& m : merged) {
        if (!m.poly.is_zero()) terms_.push_back(std::move(m));
    }
}

int GaussianFunction::max_poly_degree() const {
    int d = 0;
    for (const auto& t : terms_) d = std::max(d, t.poly.degree());
    return d;
}

namespace {

// Hermite-style recursion: d^alpha/dw^alpha exp(pi w^T B w) = H_alpha(w) exp(...).
// Enumerates all alpha <= target coordinatewise, increasing one index at a time.
Poly hermite_poly(const std::vector<int>& alpha, const MatC& B) {
    int k = static_cast<int>(B.rows());
    Poly H = Poly::constant(k, 1.0);
    for (int j = 0; j < k; ++j) {
        for (int step = 0; step < alpha[j]; ++step) {
            // H <- dH/dw_j + 2 pi (B w)_j H
            std::vector<cplx> row(k);
            for (int l = 0; l < k; ++l) row[l] = 2.0 * kPi * B(j, l);
            Poly bw = Poly::linear(k, row, 0.0);
            H = H.derivative(j) + bw * H;
        }
    }
    return H;
}

GaussianFunction fourier_impl(const GaussianFunction& g, const std::vector<int>& coords,
                              double kernel_sign, const GaussianOpts& opts) {
    int n = g.dim();
    if (coords.empty()) throw std::invalid_argument("fourier: empty coordinate set");
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (coords[i] < 0 || coords[i] >= n) throw std::invalid_argument("fourier: bad coordinate");
        if (i > 0 && coords[i] <= coords[i - 1])
            throw std::invalid_argument("fourier: coordinates must be strictly increasing");
    }

    std::vector<bool> is_z(n, false);
    for (int c : coords) is_z[c] = true;
    std::vector<int> ys, zs;
    for (int i = 0; i < n; ++i) (is_z[i] ? zs : ys).push_back(i);
    int k = static_cast<int>(zs.size());
    int m = static_cast<int>(ys.size());

    GaussianFunction out(n);
    int term_index = -1;
    for (const auto& t : g.terms()) {
        ++term_index;
        MatC Ayy(m, m), Ayz(m, k), Azz(k, k);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) Ayy(i, j) = t.A(ys[i], ys[j]);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < k; ++j) Ayz(i, j) = t.A(ys[i], zs[j]);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) Azz(i, j) = t.A(zs[i], zs[j]);
        VecC by(m), bz(k);
        for (int i = 0; i < m; ++i) by(i) = t.b(ys[i]);
        for (int i = 0; i < k; ++i) bz(i) = t.b(zs[i]);

        if (cond_estimate(Azz) > opts.cond_limit) {
            throw std::runtime_error("fourier: numerically singular A-block in term " +
                                     std::to_string(term_index));
        }

        MatC B = Azz.inverse();
        B = 0.5 * (B + B.transpose()).eval();  // keep exact symmetry
        cplx dis = det_inv_sqrt(Azz);

        // Gaussian core: exponent of the transform at (y, u) with
        // w = -Azy y + i (b_z + sgn u),  sgn = kernel_sign.
        // A'_yy = Ayy - Ayz B Azy ; A'_yu = i sgn Ayz B ; A'_uu = B  (times sgn^2 = 1)
        // b'_y = by - Ayz B bz ; b'_u = i sgn B bz ; extra factor exp(-pi bz^T B bz).
        MatC Aout = MatC::Zero(n, n);
        VecC bout = VecC::Zero(n);
        MatC Schur = Ayy - Ayz * B * Ayz.transpose();
        MatC Ayu = kI * kernel_sign * (Ayz * B);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) Aout(ys[i], ys[j]) = Schur(i, j);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < k; ++j) {
                Aout(ys[i], zs[j]) = Ayu(i, j);
                Aout(zs[j], ys[i]) = Ayu(i, j);
            }
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) Aout(zs[i], zs[j]) = B(i, j);
        VecC Bbz = B * bz;
        VecC byp = by - Ayz * Bbz;
        for (int i = 0; i < m; ++i) bout(ys[i]) = byp(i);
        for (int i = 0; i < k; ++i) bout(zs[i]) = kI * kernel_sign * Bbz(i);
        cplx cpref = t.c * dis * std::exp(-kPi * cplx((bz.transpose() * Bbz)(0, 0)));

        // Polynomial part.  Write P(y,z) = sum_alpha p_alpha(y) z^alpha; each
        // z^alpha integrates to (2 pi)^{-|alpha|} H_alpha(w) times the core,
        // with w substituted by its affine expression in (y, u).
        Poly outpoly(n);
        if (t.poly.is_constant()) {
            outpoly = Poly::constant(n, t.poly.constant_value());
        } else {
            // Group monomials by their z-exponents.
            std::map<std::vector<int>, Poly> groups;  // alpha -> p_alpha as n-var poly in y only
            for (const auto& [mo, coef] : t.poly.terms()) {
                std::vector<int> alpha(k, 0);
                Monomial ym{};
                for (int i = 0; i < m; ++i) ym.e[ys[i]] = mo.e[ys[i]];
                for (int j = 0; j < k; ++j) alpha[j] = mo.e[zs[j]];
                auto it = groups.find(alpha);
                if (it == groups.end()) it = groups.emplace(alpha, Poly(n)).first;
                it->second.add_term(ym, coef);
            }
            // Affine substitution data for w_j in terms of output variables.
            std::vector<std::vector<cplx>> Wm(k, std::vector<cplx>(n, 0.0));
            std::vector<cplx> Wt(k, 0.0);
            for (int j = 0; j < k; ++j) {
                for (int i = 0; i < m; ++i) Wm[j][ys[i]] = -Ayz(i, j);  // -(Azy y)_j
                Wm[j][zs[j]] = kI * kernel_sign;
                Wt[j] = kI * bz(j);
            }
            for (const auto& [alpha, py] : groups) {
                int order = 0;
                for (int a : alpha) order += a;
                if (order == 0) {
                    outpoly += py;
                    continue;
                }
                Poly H = hermite_poly(alpha, B);
                // substitute w -> affine(y,u)
                std::vector<std::vector<cplx>> Msub(k, std::vector<cplx>(n));
                std::vector<cplx> tsub(k);
                for (int j = 0; j < k; ++j) {
                    Msub[j] = Wm[j];
                    tsub[j] = Wt[j];
                }
                Poly Hsub = H.substitute_affine(n, Msub, tsub);
                Hsub *= std::pow(2.0 * kPi, -order);
                outpoly += py * Hsub;
            }
        }

        if (outpoly.degree() > opts.max_degree)
            throw std::runtime_error("fourier: polynomial degree cap exceeded");

        GaussianTerm nt;
        nt.poly = std::move(outpoly);
        nt.A = 0.5 * (Aout + Aout.transpose());
        nt.b = std::move(bout);
        nt.c = cpref;
        out.append(std::move(nt));
    }
    out.merge_terms();
    return out;
}

}  // namespace

GaussianFunction fourier(const GaussianFunction& g, const std::vector<int>& coords,
                         const GaussianOpts& opts) {
    return fourier_impl(g, coords, +1.0, opts);
}

GaussianFunction fourier_conj(const GaussianFunction& g, const std::vector<int>& coords,
                              const GaussianOpts& opts) {
    return fourier_impl(g, coords, -1.0, opts);
}

GaussianFunction mul_quadratic_phase(const GaussianFunction& g, double t, const MatR& J) {
    if (J.rows() != g.dim() || J.cols() != g.dim())
        throw std::invalid_argument("mul_quadratic_phase: J dimension mismatch");
    if ((J - J.transpose()).cwiseAbs().maxCoeff() > 0.0)
        throw std::invalid_argument("mul_quadratic_phase: J not symmetric");
    GaussianFunction out(g.dim());
    for (auto term : g.terms()) {
        term.A = term.A - kI * t * J.cast<cplx>();
        out.append(std::move(term));
    }
    return out;
}

GaussianFunction linear_sub(const GaussianFunction& g, const MatR& M, cplx scale) {
    int n = g.dim();
    if (M.rows() != n || M.cols() != n) throw std::invalid_argument("linear_sub: M dimension");
    if (std::abs(M.determinant()) < 1e-300) throw std::invalid_argument("linear_sub: singular M");
    MatC Mc = M.cast<cplx>();
    GaussianFunction out(n);
    std::vector<std::vector<cplx>> Msub(n, std::vector<cplx>(n));
    std::vector<cplx> tsub(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) Msub[i][j] = Mc(i, j);
    for (const auto& term : g.terms()) {
        GaussianTerm nt;
        nt.A = Mc.transpose() * term.A * Mc;
        nt.A = 0.5 * (nt.A + nt.A.transpose()).eval();
        nt.b = Mc.transpose() * term.b;
        nt.poly = term.poly.substitute_affine(n, Msub, tsub);
        nt.c = term.c * scale;
        out.append(std::move(nt));
    }
    return out;
}

GaussianFunction translate(const GaussianFunction& g, const VecR& v) {
    int n = g.dim();
    if (v.size() != n) throw std::invalid_argument("translate: dimension mismatch");
    VecC vc = v.cast<cplx>();
    GaussianFunction out(n);
    std::vector<std::vector<cplx>> Msub(n, std::vector<cplx>(n, 0.0));
    std::vector<cplx> tsub(n);
    for (int i = 0; i < n; ++i) {
        Msub[i][i] = 1.0;
        tsub[i] = -vc(i);
    }
    for (const auto& term : g.terms()) {
        // (x-v)^T A (x-v) = x^T A x - 2 x^T A v + v^T A v, and the +2pi x.Av
        // piece folds into b as -i A v.
        GaussianTerm nt;
        nt.A = term.A;
        VecC Av = term.A * vc;
        nt.b = term.b - kI * Av;
        cplx quad = (vc.transpose() * Av)(0, 0);
        cplx lin = (term.b.transpose() * vc)(0, 0);
        nt.c = term.c * std::exp(-kPi * quad - 2.0 * kPi * kI * lin);
        nt.poly = term.poly.substitute_affine(n, Msub, tsub);
        out.append(std::move(nt));
    }
    return out;
}

GaussianFunction restrict_zero(const GaussianFunction& g, const std::vector<int>& coords) {
    int n = g.dim();
    std::vector<bool> pin(n, false);
    for (int c : coords) {
        if (c < 0 || c >= n) throw std::invalid_argument("restrict_zero: bad coordinate");
        pin[c] = true;
    }
    std::vector<int> keep;
    for (int i = 0; i < n; ++i)
        if (!pin[i]) keep.push_back(i);
    int m = static_cast<int>(keep.size());
    GaussianFunction out(m);
    for (const auto& term : g.terms()) {
        GaussianTerm nt;
        nt.A = MatC(m, m);
        nt.b = VecC(m);
        for (int i = 0; i < m; ++i) {
            nt.b(i) = term.b(keep[i]);
            for (int j = 0; j < m; ++j) nt.A(i, j) = term.A(keep[i], keep[j]);
        }
        nt.poly = term.poly.restrict_vars(keep);
        nt.c = term.c;
        if (!nt.poly.is_zero()) out.append(std::move(nt));
    }
    return out;
}

GaussianFunction derivative_1d(const GaussianFunction& g) {
    if (g.dim() != 1) throw std::invalid_argument("derivative_1d: needs one variable");
    GaussianFunction out(1);
    for (const auto& term : g.terms()) {
        // (P e^E)' = (P' + P E') e^E, E = -pi A x^2 + 2 pi i b x
        Poly Pp = term.poly.derivative(0);
        Poly Ep = Poly::linear(1, {-2.0 * kPi * term.A(0, 0)}, 2.0 * kPi * kI * term.b(0));
        GaussianTerm nt = term;
        nt.poly = Pp + Ep * term.poly;
        if (!nt.poly.is_zero()) out.append(std::move(nt));
    }
    return out;
}

cplx taylor_coeff_1d(const GaussianFunction& g, int k) {
    GaussianFunction cur = g;
    double fact = 1.0;
    for (int j = 1; j <= k; ++j) {
        cur = derivative_1d(cur);
        fact *= j;
    }
    VecR zero = VecR::Zero(1);
    return cur.eval(zero) / fact;
}

}  // namespace quadsum
