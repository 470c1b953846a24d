#include "quadsum/summation.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numbers>

#include "quadsum/parallel.hpp"
#include "quadsum/weil.hpp"

namespace quadsum {

namespace {

constexpr double kPi = std::numbers::pi;

double now_seconds() {
    using namespace std::chrono;
    return duration<double>(steady_clock::now().time_since_epoch()).count();
}

bool arch_is_k_invariant(const QuadFamily& fam, int level, const GaussianFunction& arch) {
    TestFunction probe{fam, level, arch, 1};
    return is_k_invariant(probe, 1e-11);
}

// theta order 1 is exact for K-invariant data; verified before use
QuadratureConfig effective_quad(const QuadFamily& fam, int level, const GaussianFunction& arch,
                                const QuadratureConfig& quad) {
    QuadratureConfig q = quad;
    if (arch_is_k_invariant(fam, level, arch)) q.theta_order = 1;
    return q;
}

}  // namespace

PointSumResult quadric_point_sum(const QuadFamily& fam, int level, const GaussianFunction& arch,
                                 double arg_scale, std::int64_t dilation,
                                 const SummationConfig& cfg) {
    PointSumResult res;
    int d = fam.dim(level);
    if (d == 0 || level == 0) return res;  // no rational points on the core

    QuadratureConfig quad = effective_quad(fam, level, arch, cfg.quad);
    QuadricIntegrator qi(fam, level, arch, quad);

    std::int64_t R = std::max<std::int64_t>(cfg.initial_radius,
                                            static_cast<std::int64_t>(std::ceil(4.0 / arg_scale)));
    R = std::min(R, cfg.radius_cap);

    for (;;) {
        QuadricPointSet pts = enumerate_quadric(fam, level, R, cfg.max_points);
        if (!pts.exhaustive) {
            res.converged = false;
            res.radius = R;
            return res;
        }
        // bucket by sup-norm shell
        std::map<std::int64_t, std::vector<const QuadricPoint*>> shells;
        for (const auto& p : pts.points) shells[p.xi.cwiseAbs().maxCoeff()].push_back(&p);

        cplx total = 0.0;
        double running_scale = 0.0;
        std::vector<double> shell_mags;
        bool tail_ok = false;
        for (const auto& [shell_r, list] : shells) {
            double floor = 1e-3 * cfg.tail_rel * running_scale;
            cplx shell_sum = parallel_block_sum(
                list.size(), cfg.effective_threads(), [&](std::size_t idx) -> cplx {
                    const QuadricPoint& p = *list[idx];
                    if (dilation > 1 && p.content % dilation != 0) return 0.0;
                    double w = basic_weight(fam, level, p.xi, dilation);
                    if (w == 0.0) return 0.0;
                    VecR x = p.xi.cast<double>() * arg_scale;
                    return w * qi.eval(x, floor / std::max(1.0, std::abs(w)));
                });
            total += shell_sum;
            running_scale = std::max(running_scale, std::abs(total));
            shell_mags.push_back(std::abs(shell_sum));
            res.points_used += static_cast<std::int64_t>(list.size());
        }
        // tail: last shells must have collapsed relative to the total
        if (shell_mags.size() >= 3) {
            double scale = std::max(running_scale, 1e-300);
            double last = shell_mags[shell_mags.size() - 1];
            double prev = shell_mags[shell_mags.size() - 2];
            if (last < cfg.tail_rel * scale && prev < 10 * cfg.tail_rel * scale) {
                tail_ok = true;
                double ratio = prev > 0 ? std::min(0.9, last / std::max(prev, 1e-300)) : 0.5;
                res.tail_bound = last * ratio / std::max(1e-9, 1.0 - ratio) + last;
            }
        }
        res.value = total;
        res.radius = R;
        if (tail_ok) {
            res.converged = true;
            return res;
        }
        if (R >= cfg.radius_cap) {
            res.converged = false;
            res.tail_bound = shell_mags.empty() ? 0.0 : shell_mags.back();
            return res;
        }
        R = std::min(cfg.radius_cap, R + std::max<std::int64_t>(2, R / 2));
    }
}

SideBreakdown side_assemble(const TestFunction& tf, bool fourier_side,
                            const SummationConfig& cfg) {
    SideBreakdown side;
    const QuadFamily& fam = tf.fam;
    if (fam.dim(tf.level) < 4)
        throw std::invalid_argument("side_assemble: needs dim V_level >= 4");
    TestFunction cur = fourier_side ? fourier_x(tf) : tf;

    // The boundary-constant column runs all the way to the core: the bottom
    // step of the dimension reduction leaves a level-0 zeta constant next to
    // the unit term, even though the top-level point sum is the headline.
    for (int i = tf.level; i >= 0; --i) {
        {
            double t0 = now_seconds();
            QuadratureConfig quad = effective_quad(fam, i, cur.arch, cfg.quad);
            ZetaProfile zp = zeta_profile_r(fam, i, cur.arch, quad);
            zp.dilation = 1;
            CValue cv = c_extract(zp, fam.dim(i), quad);
            side.terms.push_back({"c-" + std::to_string(i), cv.value, 1e-10, now_seconds() - t0});
        }
        if (i >= 1) {
            double t0 = now_seconds();
            PointSumResult ps = quadric_point_sum(fam, i, cur.arch, 1.0, tf.dilation, cfg);
            if (!ps.converged)
                throw std::runtime_error("side_assemble: point sum did not converge at level " +
                                         std::to_string(i));
            side.terms.push_back(
                {"points-" + std::to_string(i), ps.value, ps.tail_bound, now_seconds() - t0});
            side.tail_bound += ps.tail_bound;
        }
        if (i > 0) cur = descend(cur);
    }
    if (fam.dim0() == 0) {
        VecR zero = VecR::Zero(2);
        cplx val = kappa_constant() * cur.arch.eval(zero);
        side.terms.push_back({"kappa", val, 0.0, 0.0});
    }
    for (const auto& t : side.terms) side.total += t.value;
    return side;
}

VerificationReport verify_main(const TestFunction& tf, const SummationConfig& cfg) {
    VerificationReport rep;
    double t0 = now_seconds();
    rep.lhs = side_assemble(tf, false, cfg);
    rep.rhs = side_assemble(tf, true, cfg);
    rep.abs_deviation = std::abs(rep.lhs.total - rep.rhs.total);
    double scale = std::max({std::abs(rep.lhs.total), std::abs(rep.rhs.total), 1e-9});
    rep.rel_deviation = rep.abs_deviation / scale;
    rep.seconds = now_seconds() - t0;
    return rep;
}

namespace {

// boundary terms of the levels strictly below the top, plus the unit term
cplx lower_terms_total(const TestFunction& tf, const SummationConfig& cfg) {
    const QuadFamily& fam = tf.fam;
    TestFunction cur = descend(tf);
    cplx total = 0.0;
    for (int i = tf.level - 1; i >= 0; --i) {
        QuadratureConfig quad = effective_quad(fam, i, cur.arch, cfg.quad);
        ZetaProfile zp = zeta_profile_r(fam, i, cur.arch, quad);
        total += c_extract(zp, fam.dim(i), quad).value;
        if (i >= 1) {
            PointSumResult ps = quadric_point_sum(fam, i, cur.arch, 1.0, tf.dilation, cfg);
            if (!ps.converged) throw std::runtime_error("lower_terms_total: point sum diverged");
            total += ps.value;
        }
        if (i > 0) cur = descend(cur);
    }
    if (fam.dim0() == 0) {
        VecR zero = VecR::Zero(2);
        total += kappa_constant() * cur.arch.eval(zero);
    }
    return total;
}

}  // namespace

ScalingReport scaling_check(const TestFunction& tf, std::int64_t num, std::int64_t den,
                            const SummationConfig& cfg) {
    const QuadFamily& fam = tf.fam;
    if (tf.level != fam.ell())
        throw std::invalid_argument("scaling_check: the identity lives at the top level");
    int d = fam.dim(tf.level);
    if (!(d > 4 || !fam.chi_trivial()))
        throw std::invalid_argument("scaling_check: needs dim > 4 or a nontrivial character");
    if (num < 1 || den < 1 || (num > 1 && den > 1))
        throw std::invalid_argument("scaling_check: a must be an integer or reciprocal integer");
    double a = static_cast<double>(num) / static_cast<double>(den);

    ScalingReport rep;
    rep.a = a;
    double half = d / 2.0;

    TestFunction fx = fourier_x(tf);

    // direct side, scaled by |a|^{1 - d/2} on the top block and |a|^{-1} below
    {
        SideBreakdown sb;
        QuadratureConfig quad = effective_quad(fam, tf.level, tf.arch, cfg.quad);
        ZetaProfile zp = zeta_profile_r(fam, tf.level, tf.arch, quad);
        cplx ctop = c_extract(zp, d, quad).value;
        double pref = std::pow(a, 1.0 - half);
        sb.terms.push_back({"c-top", pref * ctop, 0.0, 0.0});
        PointSumResult ps = quadric_point_sum(fam, tf.level, tf.arch, 1.0 / a, tf.dilation, cfg);
        if (!ps.converged) throw std::runtime_error("scaling_check: direct point sum diverged");
        sb.terms.push_back({"points-top", pref * ps.value, pref * ps.tail_bound, 0.0});
        cplx lower = lower_terms_total(tf, cfg);
        sb.terms.push_back({"lower", lower / a, 0.0, 0.0});
        for (const auto& t : sb.terms) sb.total += t.value;
        rep.lhs_side = std::move(sb);
        rep.lhs = rep.lhs_side.total;
    }
    // transformed side with the reciprocal prefactors
    {
        SideBreakdown sb;
        QuadratureConfig quad = effective_quad(fam, tf.level, fx.arch, cfg.quad);
        ZetaProfile zp = zeta_profile_r(fam, tf.level, fx.arch, quad);
        cplx ctop = c_extract(zp, d, quad).value;
        double pref = std::pow(a, half - 1.0);
        sb.terms.push_back({"c-top", pref * ctop, 0.0, 0.0});
        PointSumResult ps = quadric_point_sum(fam, tf.level, fx.arch, a, tf.dilation, cfg);
        if (!ps.converged) throw std::runtime_error("scaling_check: dual point sum diverged");
        sb.terms.push_back({"points-top", pref * ps.value, pref * ps.tail_bound, 0.0});
        cplx lower = lower_terms_total(fx, cfg);
        sb.terms.push_back({"lower", lower * a, 0.0, 0.0});
        for (const auto& t : sb.terms) sb.total += t.value;
        rep.rhs_side = std::move(sb);
        rep.rhs = rep.rhs_side.total;
    }
    rep.rel_deviation =
        std::abs(rep.lhs - rep.rhs) / std::max({std::abs(rep.lhs), std::abs(rep.rhs), 1e-9});
    return rep;
}

// ---------------------------------------------------------------------------
// Smoothed counts

double singular_series_analytic(int dim) {
    DirichletL zeta(1);
    double a = zeta.value(dim / 2.0 - 1.0).real();
    double b = zeta.value(dim / 2.0).real();
    return a / b;
}

double singular_series_density_product(const QuadFamily& fam, int level, std::int64_t prime_cap) {
    int d = fam.dim(level);
    if (fam.dim0() != 0) throw std::invalid_argument("density product: split towers only");
    // stabilized density from the smooth count: (N_p(1) - 1) / (p^{d-1} - p);
    // brute-force verified for small p, closed form beyond
    double logprod = 0.0;
    std::vector<bool> sieve(prime_cap + 1, true);
    for (std::int64_t p = 2; p <= prime_cap; ++p) {
        if (!sieve[p]) continue;
        for (std::int64_t m = p * p; m <= prime_cap; m += p) sieve[m] = false;
        double N1;
        if (p <= 7) {
            N1 = static_cast<double>(local_density_count(fam, level, p, 1));
        } else {
            N1 = std::pow(static_cast<double>(p), d - 1) + std::pow(static_cast<double>(p), d / 2) -
                 std::pow(static_cast<double>(p), d / 2 - 1);
        }
        double delta = (N1 - 1.0) / (std::pow(static_cast<double>(p), d - 1) - p);
        logprod += std::log(delta);
    }
    // integrated tail over p > prime_cap with prime density 1/ln x
    GaussLegendre gl(64);
    double tail = 0.0;
    double lo = static_cast<double>(prime_cap);
    for (int panel = 0; panel < 24; ++panel) {
        double hi = lo * 4.0;
        tail += gl.integrate(
            [&](double x) {
                double ld = std::log1p(-std::pow(x, -d / 2.0)) -
                            std::log1p(-std::pow(x, 1.0 - d / 2.0));
                return ld / std::log(x);
            },
            lo, hi);
        lo = hi;
    }
    return std::exp(logprod + tail);
}

TestFunction arrange_count_function(const QuadFamily& fam, const SummationConfig& cfg) {
    if (fam.dim0() != 0) throw std::invalid_argument("arrange_count_function: split towers only");
    int lvl = fam.ell();
    int d = fam.dim(lvl);
    if (d <= 4) throw std::invalid_argument("arrange_count_function: needs dim > 4");
    int n = d + 2;

    // components g (x) (u1^2 + u2^2)^k exp(-pi |x|^2), k = 1, 2, 3: the aux
    // factor vanishes at the origin, so the top-level descent is identically
    // zero for every combination
    auto component = [&](int k) {
        GaussianTerm t;
        t.A = MatC::Identity(n, n);
        t.b = VecC::Zero(n);
        Poly r2 = Poly::variable(n, n - 2) * Poly::variable(n, n - 2) +
                  Poly::variable(n, n - 1) * Poly::variable(n, n - 1);
        Poly p = r2;
        for (int j = 1; j < k; ++j) p = p * r2;
        t.poly = std::move(p);
        return GaussianFunction::from_term(std::move(t));
    };

    auto top_c = [&](const GaussianFunction& g) {
        QuadratureConfig quad = effective_quad(fam, lvl, g, cfg.quad);
        ZetaProfile zp = zeta_profile_r(fam, lvl, g, quad);
        return c_extract(zp, d, quad).value;
    };
    auto lower_block = [&](const GaussianFunction& g) {
        TestFunction t{fam, lvl, wedge_transform(g), 1};
        return lower_terms_total(t, cfg);
    };

    GaussianFunction g1 = component(1), g2 = component(2), g3 = component(3);
    cplx c1 = top_c(g1), c2 = top_c(g2), c3 = top_c(g3);
    cplx K1 = lower_block(g1), K2 = lower_block(g2), K3 = lower_block(g3);

    // f = g1 + beta g2 + gamma g3 with c_top(f) = 0 and lower block of the
    // transformed side = 0
    Eigen::Matrix2cd A;
    Eigen::Vector2cd rhs;
    A << c2, c3, K2, K3;
    rhs << -c1, -K1;
    Eigen::Vector2cd sol = A.fullPivLu().solve(rhs);

    GaussianFunction f = g1;
    f += g2.scaled(sol(0));
    f += g3.scaled(sol(1));
    f.merge_terms();
    return make_test_function(fam, lvl, std::move(f));
}

CountReport count_asymptotics(const TestFunction& tf, const std::vector<double>& B_list,
                              const SummationConfig& cfg) {
    const QuadFamily& fam = tf.fam;
    int lvl = tf.level;
    int d = fam.dim(lvl);
    if (d <= 4) throw std::invalid_argument("count_asymptotics: needs dim > 4");
    if (fam.dim0() != 0)
        throw std::invalid_argument("count_asymptotics: split towers only");

    CountReport rep;
    TestFunction fx = fourier_x(tf);
    {
        QuadratureConfig quad = effective_quad(fam, lvl, fx.arch, cfg.quad);
        ZetaProfile zp = zeta_profile_r(fam, lvl, fx.arch, quad);
        rep.c_main = c_extract(zp, d, quad).value;
    }
    rep.lower_coeff = lower_terms_total(fx, cfg);

    // density route: zeta(d/2) x singular series x Leray factor of the
    // radial profile of the quadric integral
    rep.sing_series_analytic = singular_series_analytic(d);
    rep.sing_series_product = singular_series_density_product(fam, lvl);
    rep.sing_series_rel_dev =
        std::abs(rep.sing_series_product - rep.sing_series_analytic) / rep.sing_series_analytic;
    {
        QuadratureConfig quad = effective_quad(fam, lvl, tf.arch, cfg.quad);
        QuadricIntegrator qi(fam, lvl, tf.arch, quad);
        int m = d / 2;
        double volS = 2.0 * std::pow(kPi, m / 2.0) / std::exp(std::lgamma(m / 2.0));
        GaussLegendre gl(64);
        cplx radial = 0.0;
        double lo = 1e-6;
        for (int panel = 0; panel < 14 && lo < 12.0; ++panel) {
            double hi = std::min(12.0, lo + 1.0);
            radial += gl.integrate(
                [&](double s) {
                    VecR e = VecR::Zero(d);
                    e(0) = s;
                    return std::pow(s, 2 * m - 3) * qi.eval(e);
                },
                lo, hi);
            lo = hi;
        }
        cplx leray = volS * volS * std::pow(2.0, 1 - m) * radial;
        DirichletL zeta(1);
        rep.c_density_route = zeta.value(d / 2.0).real() * rep.sing_series_analytic * leray;
        rep.c_route_rel_dev =
            std::abs(rep.c_main - rep.c_density_route) / std::max(1e-300, std::abs(rep.c_main));
    }

    for (double B : B_list) {
        SummationConfig cc = cfg;
        cc.initial_radius = static_cast<std::int64_t>(std::ceil(3.5 * B));
        cc.radius_cap = std::max(cc.radius_cap, cc.initial_radius + cc.initial_radius / 2);
        PointSumResult ps = quadric_point_sum(fam, lvl, tf.arch, 1.0 / B, tf.dilation, cc);
        if (!ps.converged) throw std::runtime_error("count_asymptotics: point sum diverged");
        CountRow row;
        row.B = B;
        row.count = ps.value.real();
        row.main_term = std::pow(B, d - 2.0) * rep.c_main.real();
        row.ratio = row.count / row.main_term;
        double corrected = row.main_term + std::pow(B, d / 2.0) * rep.lower_coeff.real();
        row.corrected_ratio = row.count / corrected;
        rep.rows.push_back(row);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Truncated theta integral over the modular surface

ThetaReport theta_truncation_experiment(const TestFunction& tf, const std::vector<double>& T_list,
                                        const SummationConfig& cfg) {
    const QuadFamily& fam = tf.fam;
    if (fam.dim0() != 0)
        throw std::invalid_argument("theta experiment: split towers only");
    if (tf.level != fam.ell())
        throw std::invalid_argument("theta experiment: top-level data required");
    if (tf.arch.term_count() != 1 || !tf.arch.terms()[0].poly.is_constant())
        throw std::invalid_argument("theta experiment: single Gaussian term required");
    if (!is_k_invariant(tf))
        throw std::invalid_argument("theta experiment: K-invariant data required");

    int lvl1 = tf.level + 1;          // theta lattice lives one level up
    int D = fam.dim(lvl1);            // = dim V_level + 2
    const GaussianTerm& term = tf.arch.terms()[0];
    double amin = tf.arch.min_re_eigenvalue();
    cplx cpref = term.c * term.poly.constant_value();

    // count lattice vectors by (Q value, squared norm); the Gaussian is
    // exp(-pi |x|^2)-shaped so only |x|^2 <= r2max matters at y >= sqrt(3)/2
    std::int64_t r2max =
        static_cast<std::int64_t>(std::ceil(46.0 / (kPi * amin * 0.8660254))) + 1;
    auto buckets = lattice_by_quad_value(fam, lvl1, r2max);
    // S_q(y) = y^{D/4} sum_{Q=q} f(sqrt(y) xi) = y^{D/4} sum_n N_{q,n} e^{-pi y n}
    std::map<std::int64_t, std::map<std::int64_t, double>> counts;  // q -> |x|^2 -> N
    for (const auto& [q, vecs] : buckets) {
        for (const auto& v : vecs) {
            std::int64_t n2 = v.squaredNorm();
            counts[q][n2] += 1.0;
        }
    }
    auto S = [&](std::int64_t q, double y) {
        double acc = 0.0;
        auto it = counts.find(q);
        if (it == counts.end()) return 0.0;
        for (const auto& [n2, N] : it->second) acc += N * std::exp(-kPi * y * n2);
        return std::pow(y, D / 4.0) * acc * cpref.real();
    };

    // sliver of the fundamental domain below y = 1
    GaussLegendre gl(48);
    double sliver = gl.integrate(
        [&](double y) {
            double xb = std::sqrt(std::max(0.0, 1.0 - y * y));
            double acc = S(0, y) * (1.0 - 2.0 * xb);
            for (const auto& [q, tbl] : counts) {
                (void)tbl;
                if (q == 0) continue;
                acc -= S(q, y) * std::sin(2.0 * kPi * q * xb) / (kPi * q);
            }
            return acc / (y * y);
        },
        0.8660254037844386, 1.0);

    // integral over y >= 1 as a function of the cutoff e^{2T}
    auto main_integral = [&](double T) {
        double Y = std::exp(2.0 * T);
        double acc = 0.0;
        double lo = 1.0;
        while (lo < Y) {
            double hi = std::min(Y, lo * 1.75);
            acc += gl.integrate([&](double y) { return S(0, y) / (y * y); }, lo, hi);
            lo = hi;
        }
        return acc;
    };

    ThetaReport rep;
    rep.T = T_list;
    for (double T : T_list) rep.integral.push_back(0.5 * (main_integral(T) + sliver));

    // least squares against 1, T, e^{sT} for the positive exponents of the tower
    std::vector<double> exps;
    for (int i = 1; i <= tf.level; ++i) {
        for (double s : {fam.dim(i) / 2.0 - 1.0, fam.dim(i) / 2.0 - 2.0})
            if (s > 0.25 && std::find(exps.begin(), exps.end(), s) == exps.end())
                exps.push_back(s);
    }
    std::sort(exps.rbegin(), exps.rend());
    int ncol = 2 + static_cast<int>(exps.size());
    Eigen::MatrixXd Amat(T_list.size(), ncol);
    Eigen::VectorXd bvec(T_list.size());
    for (std::size_t r = 0; r < T_list.size(); ++r) {
        Amat(r, 0) = 1.0;
        Amat(r, 1) = T_list[r];
        for (std::size_t c = 0; c < exps.size(); ++c) Amat(r, 2 + c) = std::exp(exps[c] * T_list[r]);
        bvec(r) = rep.integral[r];
    }
    // column scaling for conditioning
    Eigen::VectorXd colscale(ncol);
    for (int c = 0; c < ncol; ++c) colscale(c) = Amat.col(c).norm();
    for (int c = 0; c < ncol; ++c) Amat.col(c) /= colscale(c);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Amat);
    if (qr.rank() < ncol) throw std::runtime_error("theta experiment: fit is rank deficient");
    Eigen::VectorXd sol = qr.solve(bvec);
    rep.fit_residual = (Amat * sol - bvec).norm();
    for (int c = 0; c < ncol; ++c) sol(c) /= colscale(c);

    rep.constant_term = sol(0);
    rep.coef_T = sol(1);
    for (std::size_t c = 0; c < exps.size(); ++c) rep.exp_coeffs.push_back({exps[c], sol(2 + c)});

    // predicted constant: boundary total of the partial transform of f
    TestFunction ref{fam, tf.level, fourier_2(tf.arch), 1};
    rep.reference_total = side_assemble(ref, false, cfg).total;
    rep.rel_deviation = std::abs(rep.constant_term - rep.reference_total.real()) /
                        std::max(1e-300, std::abs(rep.reference_total.real()));
    return rep;
}

}  // namespace quadsum
