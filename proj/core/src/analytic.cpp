#include "quadsum/analytic.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace quadsum {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

GaussianFunction reflect(const GaussianFunction& g) {
    return linear_sub(g, -MatR::Identity(g.dim(), g.dim()), 1.0);
}

}  // namespace

double vol1_constant() { return 1.0; }
double kappa_constant() { return kPi / 6.0; }

// ---------------------------------------------------------------------------
// K-averages

namespace {

ThetaOrbit k_orbit_generic(const QuadFamily& fam, int i, const GaussianFunction& f,
                           int theta_order, const GaussianOpts& opts, bool full_weil) {
    // equispaced nodes: the trapezoid rule is spectrally accurate for the
    // periodic analytic integrands that arise here
    ThetaOrbit orbit;
    orbit.funcs.reserve(theta_order);
    orbit.weights.reserve(theta_order);
    for (int j = 0; j < theta_order; ++j) {
        double theta = 2.0 * kPi * j / theta_order;
        double w = 1.0 / theta_order;
        SL2Element k = SL2Element::rotation(theta);
        GaussianFunction gk =
            full_weil ? rho(fam, i, k, f, opts) : r_action(fam, i, k, f, opts);
        orbit.funcs.push_back(std::move(gk));
        orbit.weights.push_back(w);
    }
    return orbit;
}

}  // namespace

ThetaOrbit k_orbit_r(const QuadFamily& fam, int i, const GaussianFunction& f, int theta_order,
                     const GaussianOpts& opts) {
    return k_orbit_generic(fam, i, f, theta_order, opts, /*full_weil=*/false);
}

ThetaOrbit k_orbit_rho(const QuadFamily& fam, int i, const GaussianFunction& f, int theta_order,
                       const GaussianOpts& opts) {
    return k_orbit_generic(fam, i, f, theta_order, opts, /*full_weil=*/true);
}

// ---------------------------------------------------------------------------
// QuadricIntegrator

namespace {

struct FlatMono {
    cplx coef;                      // polynomial coefficient
    std::array<std::uint8_t, 12> eV{};  // exponents on the V-block
    int k = 0;                      // power of e^s after substitution
    int parity = 0;                 // sign exponent of the a<0 half
};

struct FlatTerm {
    cplx c;  // term prefactor including the theta weight
    MatC AVV;
    VecC col_u2;
    cplx Auu;
    VecC bV;
    cplx bu;
    bool const_poly = true;
    cplx poly_const = 1.0;
    std::vector<FlatMono> monos;
    double reVV_min = 0.0;  // smallest eigenvalue of Re(AVV)
    double reUU = 0.0;
};

}  // namespace

struct QuadricIntegrator::Impl {
    int d = 0;
    bool odd_character = false;  // chi_inf(-1) = -1
    double s_exponent = 0.0;     // 2 - d/2
    int nodes = 400;
    std::vector<FlatTerm> terms;

    cplx eval(const VecR& xi, double abs_floor) const;
};

QuadricIntegrator::QuadricIntegrator(const QuadFamily& fam, int i, const GaussianFunction& f,
                                     const QuadratureConfig& cfg, const GaussianOpts& opts)
    : impl_(std::make_unique<Impl>()) {
    int d = fam.dim(i);
    if (f.dim() != d + 2) throw std::invalid_argument("QuadricIntegrator: dimension mismatch");
    if (d == 0) throw std::invalid_argument("QuadricIntegrator: no points on a zero space");
    impl_->d = d;
    impl_->odd_character = fam.chi_inf(-1.0) < 0;
    impl_->s_exponent = 2.0 - d / 2.0;
    impl_->nodes = cfg.radial_nodes;

    ThetaOrbit orbit = k_orbit_r(fam, i, f, cfg.theta_order, opts);
    for (std::size_t j = 0; j < orbit.funcs.size(); ++j) {
        for (const auto& t : orbit.funcs[j].terms()) {
            FlatTerm ft;
            ft.c = t.c * orbit.weights[j];
            ft.AVV = t.A.topLeftCorner(d, d);
            ft.col_u2 = t.A.col(d + 1).head(d);
            ft.Auu = t.A(d + 1, d + 1);
            ft.bV = t.b.head(d);
            ft.bu = t.b(d + 1);
            MatR reA = 0.5 * (ft.AVV + ft.AVV.adjoint()).real();
            Eigen::SelfAdjointEigenSolver<MatR> es(reA);
            ft.reVV_min = es.eigenvalues().minCoeff();
            ft.reUU = ft.Auu.real();
            if (t.poly.is_constant()) {
                ft.const_poly = true;
                ft.poly_const = t.poly.constant_value();
            } else {
                ft.const_poly = false;
                for (const auto& [mo, coef] : t.poly.terms()) {
                    if (mo.e[d] > 0) continue;  // u1 coordinate pinned to 0
                    FlatMono fm;
                    fm.coef = coef;
                    int degV = 0;
                    for (int v = 0; v < d; ++v) {
                        fm.eV[v] = mo.e[v];
                        degV += mo.e[v];
                    }
                    fm.k = mo.e[d + 1] - degV;
                    fm.parity = (degV + mo.e[d + 1]) % 2;
                    ft.monos.push_back(fm);
                }
                if (ft.monos.empty()) continue;  // whole term dies on the slice
            }
            impl_->terms.push_back(std::move(ft));
        }
    }
}

QuadricIntegrator::~QuadricIntegrator() = default;
QuadricIntegrator::QuadricIntegrator(QuadricIntegrator&&) noexcept = default;

int QuadricIntegrator::dim() const { return impl_->d; }

cplx QuadricIntegrator::Impl::eval(const VecR& xi, double abs_floor) const {
    cplx acc = 0.0;
    const double chim = odd_character ? -1.0 : 1.0;
    std::vector<std::pair<int, std::array<cplx, 2>>> kcoef;  // power -> (even, odd)

    for (const auto& ft : terms) {
        double reVV = 0.0;
        cplx qVV = 0.0, qcr = 0.0, lV = 0.0;
        for (int a = 0; a < d; ++a) {
            cplx row = 0.0;
            for (int b = 0; b < d; ++b) row += ft.AVV(a, b) * xi(b);
            qVV += xi(a) * row;
            qcr += xi(a) * ft.col_u2(a);
            lV += ft.bV(a) * xi(a);
        }
        reVV = qVV.real();
        double reUU = ft.reUU;
        double minval = 2.0 * std::sqrt(reVV * reUU);

        if (abs_floor > 0.0) {
            // conservative peak bound on the integrand magnitude
            double bound_log = -kPi * minval + 2.0 * kPi * std::abs(qcr) +
                               2.0 * kPi * (std::abs(lV) + std::abs(ft.bu)) * 4.0 +
                               std::log(std::abs(ft.c) + 1e-300) + 8.0;
            if (bound_log < std::log(abs_floor)) continue;
        }

        // polynomial coefficients grouped by the power of e^s
        kcoef.clear();
        if (ft.const_poly) {
            kcoef.push_back({0, {ft.poly_const, 0.0}});
        } else {
            for (const auto& m : ft.monos) {
                cplx v = m.coef;
                for (int a = 0; a < d; ++a)
                    for (int e = 0; e < m.eV[a]; ++e) v *= xi(a);
                if (v == cplx(0.0)) continue;
                bool found = false;
                for (auto& kc : kcoef) {
                    if (kc.first == m.k) {
                        kc.second[m.parity] += v;
                        found = true;
                        break;
                    }
                }
                if (!found) {
                    std::array<cplx, 2> arr{0.0, 0.0};
                    arr[m.parity] = v;
                    kcoef.push_back({m.k, arr});
                }
            }
            if (kcoef.empty()) continue;
        }

        // window around the saddle of the real decay
        double sstar = 0.25 * std::log(reVV / reUU);
        double wfac = 1.0 + 60.0 / (kPi * minval);
        double width = 0.5 * std::acosh(wfac) + 1.5;
        width = std::max(width, 3.0);

        double h = 2.0 * width / (nodes - 1);
        cplx total = 0.0;
        for (int j = 0; j < nodes; ++j) {
            double s = sstar - width + j * h;
            double tw = (j == 0 || j == nodes - 1) ? 0.5 : 1.0;
            double e1 = std::exp(-s), e2 = std::exp(s);
            cplx E = -kPi * (qVV * (e1 * e1) + 2.0 * qcr + ft.Auu * (e2 * e2));
            cplx ph = 2.0 * kPi * kI * (lV * e1 + ft.bu * e2);
            double meas = std::exp(s_exponent * s);
            cplx pos = std::exp(E + ph);
            cplx neg = std::exp(E - ph) * chim;
            cplx node = 0.0;
            for (const auto& kc : kcoef) {
                double ek = std::exp(kc.first * s);
                node += ek * ((kc.second[0] + kc.second[1]) * pos +
                              (kc.second[0] - kc.second[1]) * neg);
            }
            total += tw * meas * node;
        }
        acc += ft.c * total * h;
    }
    return acc;
}

cplx QuadricIntegrator::eval(const VecR& xi, double abs_floor) const {
    if (xi.size() != impl_->d) throw std::invalid_argument("QuadricIntegrator::eval: dimension");
    if (xi.cwiseAbs().maxCoeff() == 0.0)
        throw std::invalid_argument("QuadricIntegrator::eval: xi must be nonzero");
    return impl_->eval(xi, abs_floor);
}

cplx quadric_integral(const QuadFamily& fam, int i, const GaussianFunction& f, const VecR& xi,
                      const QuadratureConfig& cfg, const GaussianOpts& opts) {
    QuadricIntegrator qi(fam, i, f, cfg, opts);
    return qi.eval(xi);
}

// ---------------------------------------------------------------------------
// Zeta profiles

namespace {

GaussianFunction profile_from_orbit(const ThetaOrbit& orbit) {
    if (orbit.funcs.empty()) throw std::invalid_argument("profile_from_orbit: empty orbit");
    int n = orbit.funcs.front().dim();
    std::vector<int> pin(n - 1);
    for (int i = 0; i + 1 < n; ++i) pin[i] = i;
    GaussianFunction psi(1);
    for (std::size_t j = 0; j < orbit.funcs.size(); ++j) {
        GaussianFunction slice = restrict_zero(orbit.funcs[j], pin);
        psi += slice.scaled(orbit.weights[j]);
    }
    psi.merge_terms();
    return psi;
}

ZetaProfile make_profile(const QuadFamily& fam, GaussianFunction psi) {
    ZetaProfile zp{std::move(psi), GaussianFunction(1), DirichletL(fam.disc()), vol1_constant(), 1};
    zp.psi_arch_hat = fourier_conj(zp.psi_arch, {0});
    return zp;
}

}  // namespace

ZetaProfile zeta_profile_r(const QuadFamily& fam, int i, const GaussianFunction& f,
                           const QuadratureConfig& cfg, const GaussianOpts& opts) {
    if (f.dim() != fam.dim(i) + 2)
        throw std::invalid_argument("zeta_profile_r: dimension mismatch");
    return make_profile(fam, profile_from_orbit(k_orbit_r(fam, i, f, cfg.theta_order, opts)));
}

ZetaProfile zeta_profile_rho(const QuadFamily& fam, int i, const GaussianFunction& f,
                             const QuadratureConfig& cfg, const GaussianOpts& opts) {
    if (f.dim() != fam.dim(i))
        throw std::invalid_argument("zeta_profile_rho: dimension mismatch");
    return make_profile(fam, profile_from_orbit(k_orbit_rho(fam, i, f, cfg.theta_order, opts)));
}

// ---------------------------------------------------------------------------
// Meromorphic zeta evaluation

namespace {

// int_lo^inf [G(nt) + w G(-nt)] t^{sigma - 1} dt for one-variable G.
cplx incomplete_mellin(const GaussianFunction& G, const GaussianFunction& Gneg, double parity,
                       double n, cplx sigma, double lo, const QuadratureConfig& cfg) {
    auto f = [&](double t) -> cplx {
        VecR arg(1);
        arg(0) = n * t;
        cplx v = G.eval(arg) + parity * Gneg.eval(arg);
        return v * std::exp((sigma - 1.0) * std::log(t));
    };
    double width = std::max(0.25, std::min(1.0, 3.0 / n));
    return integrate_to_infinity(f, lo, width, cfg.mellin_order, 1e-18);
}

}  // namespace

cplx tate_zeta(const ZetaProfile& zp, cplx s, const QuadratureConfig& cfg) {
    if (zp.dilation != 1)
        throw std::invalid_argument("tate_zeta: only unit lattice dilation is supported");
    const DirichletL& L = zp.L;
    const bool triv = L.trivial();
    const double parity = L.parity();
    if (triv && (std::abs(s) < 1e-10 || std::abs(s - cplx(1.0)) < 1e-10))
        throw pole_error("tate_zeta: pole at s in {0,1}");

    if (zp.psi_arch.empty()) return 0.0;  // odd data: the K-average vanishes

    const GaussianFunction psi_neg = reflect(zp.psi_arch);
    const GaussianFunction hat_neg = reflect(zp.psi_arch_hat);

    double amin = zp.psi_arch.min_re_eigenvalue();
    if (!zp.psi_arch_hat.empty()) amin = std::min(amin, zp.psi_arch_hat.min_re_eigenvalue());
    if (amin <= 0.0) throw std::runtime_error("tate_zeta: profile lost Schwartz decay");

    const double q = static_cast<double>(L.modulus());
    const double lo2 = triv ? 1.0 : 1.0 / q;
    long nmax = static_cast<long>(std::ceil(std::sqrt(50.0 / (kPi * amin)) / std::min(1.0, lo2))) + 2;

    cplx direct = 0.0, dual = 0.0;
    for (long n = 1; n <= nmax; ++n) {
        int ch = L.chi(n);
        if (ch == 0) continue;
        direct += static_cast<double>(ch) *
                  incomplete_mellin(zp.psi_arch, psi_neg, parity, n, s, 1.0, cfg);
        dual += static_cast<double>(ch) *
                incomplete_mellin(zp.psi_arch_hat, hat_neg, parity, n, 1.0 - s, lo2, cfg);
    }

    cplx dual_factor = 1.0;
    if (!triv) {
        // chi(-1) q^{1-s} / tau(chi)
        dual_factor = parity * std::exp((1.0 - s) * std::log(q)) / L.gauss_sum();
    }
    cplx z = direct + dual_factor * dual;
    if (triv) {
        VecR zero = VecR::Zero(1);
        cplx psi0 = zp.psi_arch.eval(zero);
        cplx hat0 = zp.psi_arch_hat.eval(zero);
        z += zp.vol1 * (hat0 / (s - 1.0) - psi0 / s);
    }
    return z;
}

cplx tate_residue_at_1(const ZetaProfile& zp) {
    if (!zp.L.trivial()) return 0.0;
    VecR zero = VecR::Zero(1);
    return zp.vol1 * zp.psi_arch_hat.eval(zero);
}

// ---------------------------------------------------------------------------
// Boundary constants

namespace {

// Richardson extrapolation for even-power expansions D(h) = c0 + c2 h^2 + ...
cplx richardson_even(const std::vector<cplx>& vals) {
    std::vector<cplx> t = vals;
    std::size_t n = t.size();
    for (std::size_t k = 1; k < n; ++k) {
        double f = std::pow(4.0, static_cast<double>(k));
        for (std::size_t j = 0; j + k < n; ++j) t[j] = (f * t[j + 1] - t[j]) / (f - 1.0);
    }
    return t[0];
}

}  // namespace

CValue c_extract(const ZetaProfile& zp, int dim_i, const QuadratureConfig& cfg) {
    if (dim_i < 0 || dim_i % 2 != 0) throw std::invalid_argument("c_extract: bad dimension");
    CValue cv;
    cv.s0 = 2.0 - dim_i / 2.0;
    const bool pole = zp.L.trivial() && (dim_i == 2 || dim_i == 4);
    if (!pole) {
        cv.branch = CValue::Branch::Holomorphic;
        cv.value = tate_zeta(zp, cv.s0, cfg);
        cv.pole_residue = 0.0;
        return cv;
    }
    cv.branch = CValue::Branch::PoleDerivative;
    const int depth = 5;
    std::vector<cplx> dvals(depth), rvals(depth);
    double h = 0.1;
    for (int j = 0; j < depth; ++j) {
        cplx zp1 = tate_zeta(zp, cv.s0 + h, cfg);
        cplx zm1 = tate_zeta(zp, cv.s0 - h, cfg);
        cplx fp = h * zp1, fm = -h * zm1;
        dvals[j] = (fp - fm) / (2.0 * h);  // -> Laurent constant
        rvals[j] = 0.5 * (fp + fm);        // -> residue
        h *= 0.5;
    }
    cv.value = richardson_even(dvals);
    cv.pole_residue = richardson_even(rvals);
    // stencil health: compare against the one-shallower extrapolation
    cplx check = richardson_even(std::vector<cplx>(dvals.begin(), dvals.end() - 1));
    double scale = std::max(1.0, std::abs(cv.value));
    if (std::abs(cv.value - check) > 1e-7 * scale)
        throw std::runtime_error("c_extract: Richardson stencil did not converge");
    return cv;
}

namespace {

struct ArchZeta {
    // Taylor-subtraction continuation of int_0^inf Psi_sym(t) t^{s-1} dt.
    GaussianFunction sym;  // Psi(t) + parity Psi(-t)
    std::vector<cplx> taylor;
    int J;

    ArchZeta(const GaussianFunction& psi, double parity, int J_) : sym(1), J(J_) {
        sym = psi;
        sym += reflect(psi).scaled(parity);
        taylor.resize(J);
        for (int j = 0; j < J; ++j) taylor[j] = taylor_coeff_1d(sym, j);
    }

    // full value (all pole terms included); s must avoid the poles s = -j
    cplx value(cplx s, const QuadratureConfig& cfg) const {
        cplx v = tail(s, cfg) + core(s, cfg);
        for (int j = 0; j < J; ++j) v += taylor[j] / (s + static_cast<double>(j));
        return v;
    }

    // value with the single pole term at s0 = -j0 removed
    cplx regular_value(cplx s, int j0, const QuadratureConfig& cfg) const {
        cplx v = tail(s, cfg) + core(s, cfg);
        for (int j = 0; j < J; ++j) {
            if (j == j0) continue;
            v += taylor[j] / (s + static_cast<double>(j));
        }
        return v;
    }

    cplx tail(cplx s, const QuadratureConfig& cfg) const {
        auto f = [&](double t) -> cplx {
            VecR arg(1);
            arg(0) = t;
            return sym.eval(arg) * std::exp((s - 1.0) * std::log(t));
        };
        return integrate_to_infinity(f, 1.0, 0.5, cfg.mellin_order, 1e-18);
    }

    cplx core(cplx s, const QuadratureConfig& cfg) const {
        GaussLegendre gl(96);
        auto f = [&](double t) -> cplx {
            VecR arg(1);
            arg(0) = t;
            cplx val = sym.eval(arg);
            double tp = 1.0;
            for (int j = 0; j < J; ++j) {
                val -= taylor[j] * tp;
                tp *= t;
            }
            return val * std::exp((s - 1.0) * std::log(t));
        };
        return gl.integrate(f, 0.0, 1.0);
    }
};

}  // namespace

cplx c_product_route(const ZetaProfile& zp, int dim_i, const QuadratureConfig& cfg) {
    const double s0 = 2.0 - dim_i / 2.0;
    const double parity = zp.L.parity();
    const int J = std::max(8, static_cast<int>(std::ceil(-s0)) + 6);
    ArchZeta az(zp.psi_arch, parity, J);

    // archimedean Laurent data at s0
    int j0 = -1;
    cplx PZ = 0.0;
    double nearest = std::round(-s0);
    if (std::abs(-s0 - nearest) < 1e-12 && nearest >= 0 && nearest < J) {
        j0 = static_cast<int>(nearest);
        PZ = az.taylor[j0];
    }
    // fourth-order central differences for the Laurent data
    const double hd = 1e-2;
    auto deriv4 = [&](const std::function<cplx(double)>& f) {
        return (8.0 * (f(hd) - f(-hd)) - (f(2.0 * hd) - f(-2.0 * hd))) / (12.0 * hd);
    };
    auto even4 = [&](const std::function<cplx(double)>& f) {
        // f(h)+f(-h) = 2c0 + 2c2 h^2 + ...: Richardson once
        cplx a1 = 0.5 * (f(hd) + f(-hd));
        cplx a2 = 0.5 * (f(2.0 * hd) + f(-2.0 * hd));
        return (4.0 * a1 - a2) / 3.0;
    };

    cplx Z0 = az.regular_value(s0, j0, cfg);
    cplx Z1 = deriv4([&](double h) { return az.regular_value(s0 + h, j0, cfg); });

    // L-side Laurent data at s0
    cplx PL = 0.0;
    if (zp.L.trivial() && std::abs(s0 - 1.0) < 1e-12) PL = 1.0;  // residue of zeta at 1
    auto Lreg = [&](double h) -> cplx {
        cplx s = cplx(s0 + h);
        cplx v = zp.L.value(s);
        if (PL != cplx(0.0)) v -= PL / (s - s0);
        return v;
    };
    cplx L0, L1;
    if (PL != cplx(0.0)) {
        L0 = even4(Lreg);
        L1 = deriv4(Lreg);
    } else {
        L0 = zp.L.value(s0);
        L1 = deriv4(Lreg);
    }

    if (PL != cplx(0.0) && std::abs(PZ) > 1e-12)
        throw std::runtime_error("c_product_route: double pole, not supported");

    // Laurent constant of L(s) Zinf(s) at s0
    return PL * Z1 + L0 * Z0 + L1 * PZ;
}

// ---------------------------------------------------------------------------
// Functional equation

FEReport fe_check(const QuadFamily& fam, int i, const GaussianFunction& f,
                  const std::vector<cplx>& sample_s, const QuadratureConfig& cfg,
                  const GaussianOpts& opts) {
    if (f.dim() != fam.dim(i) + 2) throw std::invalid_argument("fe_check: dimension mismatch");
    std::vector<cplx> samples = sample_s;
    if (samples.empty())
        samples = {cplx(0.5, 0.0), cplx(1.2, 0.0), cplx(0.8, 0.3), cplx(0.3, -0.4),
                   cplx(1.5, 0.0)};

    ZetaProfile lhs_prof = zeta_profile_r(fam, i, f, cfg, opts);
    ZetaProfile rhs_prof = zeta_profile_rho(fam, i + 1, fourier_2_inv(f, opts), cfg, opts);

    FEReport rep;
    rep.s_points = samples;
    for (cplx s : samples) {
        cplx a = tate_zeta(lhs_prof, s, cfg);
        cplx b = tate_zeta(rhs_prof, 1.0 - s, cfg);
        rep.lhs.push_back(a);
        rep.rhs.push_back(b);
        rep.max_abs_dev = std::max(rep.max_abs_dev, std::abs(a - b));
    }
    return rep;
}

}  // namespace quadsum
