#include "quadsum/weil.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace quadsum {

namespace {

constexpr double kTriangularCutoff = 1e-6;  // |sin theta| below this: LDU branch

struct WeilCtx {
    const QuadFamily& fam;
    int level;      // quadratic space index i
    int block;      // dim V_i = number of leading coordinates rho acts on
    int total;      // dimension of the ambient function space
    const GaussianOpts& opts;
};

MatR embed_block(const WeilCtx& ctx, const MatR& m) {
    MatR M = MatR::Identity(ctx.total, ctx.total);
    M.topLeftCorner(ctx.block, ctx.block) = m;
    return M;
}

GaussianFunction rho_n(const WeilCtx& ctx, double t, const GaussianFunction& f) {
    if (ctx.block == 0 || t == 0.0) return f;
    MatR Jfull = MatR::Zero(ctx.total, ctx.total);
    Jfull.topLeftCorner(ctx.block, ctx.block) = ctx.fam.J_real(ctx.level);
    return mul_quadratic_phase(f, t, Jfull);
}

GaussianFunction rho_torus(const WeilCtx& ctx, double a, const GaussianFunction& f) {
    if (ctx.block == 0) return f;
    double scale = ctx.fam.chi_inf(a) * std::pow(std::abs(a), ctx.block / 2.0);
    MatR M = embed_block(ctx, a * MatR::Identity(ctx.block, ctx.block));
    return linear_sub(f, M, scale);
}

std::vector<int> block_coords(const WeilCtx& ctx) {
    std::vector<int> coords(ctx.block);
    for (int i = 0; i < ctx.block; ++i) coords[i] = i;
    return coords;
}

GaussianFunction rho_w(const WeilCtx& ctx, const GaussianFunction& f) {
    if (ctx.block == 0) return f;
    MatR J = ctx.fam.J_real(ctx.level);
    double root_det = std::sqrt(std::abs(J.determinant()));
    cplx gamma = ctx.fam.weil_index_arch();
    GaussianFunction g = fourier(f, block_coords(ctx), ctx.opts);
    return linear_sub(g, embed_block(ctx, J), gamma * root_det);
}

GaussianFunction rho_w_inv(const WeilCtx& ctx, const GaussianFunction& f) {
    if (ctx.block == 0) return f;
    MatR J = ctx.fam.J_real(ctx.level);
    double root_det = std::sqrt(std::abs(J.determinant()));
    cplx gamma = ctx.fam.weil_index_arch();
    GaussianFunction g = fourier(f, block_coords(ctx), ctx.opts);
    return linear_sub(g, embed_block(ctx, -J), root_det / gamma);
}

GaussianFunction rho_k(const WeilCtx& ctx, double theta, const GaussianFunction& f) {
    double si = std::sin(theta), co = std::cos(theta);
    if (si == 0.0) return rho_torus(ctx, co, f);
    if (std::abs(si) < kTriangularCutoff) {
        // k = n'(-tan) a(cos) n(tan) with n'(c) = w n(-c) w^{-1}
        double ta = si / co;
        GaussianFunction g = rho_n(ctx, ta, f);
        g = rho_torus(ctx, co, g);
        g = rho_w_inv(ctx, g);
        g = rho_n(ctx, ta, g);
        return rho_w(ctx, g);
    }
    // k = n(-cot) a(1/sin) w n(-cot)
    double ct = co / si;
    GaussianFunction g = rho_n(ctx, -ct, f);
    g = rho_w(ctx, g);
    g = rho_torus(ctx, 1.0 / si, g);
    return rho_n(ctx, -ct, g);
}

GaussianFunction rho_apply(const WeilCtx& ctx, const SL2Element& g, const GaussianFunction& f) {
    auto iw = g.iwasawa();
    GaussianFunction out = rho_k(ctx, iw.theta, f);
    out = rho_torus(ctx, iw.t, out);
    out = rho_n(ctx, iw.x, out);
    out.merge_terms();
    return out;
}

}  // namespace

GaussianFunction rho(const QuadFamily& fam, int i, const SL2Element& g,
                     const GaussianFunction& f, const GaussianOpts& opts) {
    int d = fam.dim(i);
    if (f.dim() != d) throw std::invalid_argument("rho: function dimension != dim V_i");
    WeilCtx ctx{fam, i, d, d, opts};
    return rho_apply(ctx, g, f);
}

GaussianFunction r_action(const QuadFamily& fam, int i, const SL2Element& g,
                          const GaussianFunction& f, const GaussianOpts& opts) {
    int d = fam.dim(i);
    if (f.dim() != d + 2) throw std::invalid_argument("r_action: function dimension != dim V_i + 2");
    WeilCtx ctx{fam, i, d, d + 2, opts};
    GaussianFunction out = rho_apply(ctx, g, f);
    // L^v(g): substitute g^T on the auxiliary pair.
    MatR M = MatR::Identity(d + 2, d + 2);
    M(d, d) = g.a;
    M(d, d + 1) = g.c;
    M(d + 1, d) = g.b;
    M(d + 1, d + 1) = g.d;
    return linear_sub(out, M, 1.0);
}

GaussianFunction wedge_transform(const GaussianFunction& f, const GaussianOpts& opts) {
    int n = f.dim();
    if (n < 2) throw std::invalid_argument("wedge_transform: needs at least two coordinates");
    GaussianFunction g = fourier(f, {n - 2, n - 1}, opts);
    MatR M = MatR::Identity(n, n);
    M(n - 2, n - 2) = 0.0;
    M(n - 1, n - 1) = 0.0;
    M(n - 2, n - 1) = 1.0;
    M(n - 1, n - 2) = -1.0;
    return linear_sub(g, M, 1.0);
}

GaussianFunction sigma_action(const QuadFamily& fam, int i, const GOElement& h,
                              const GaussianFunction& f, const GaussianOpts& opts) {
    int d = fam.dim(i);
    if (f.dim() != d + 2)
        throw std::invalid_argument("sigma_action: function dimension != dim V_i + 2");
    switch (h.kind) {
        case GOElement::Kind::Similitude: {
            if (h.h.rows() != d || h.h.cols() != d)
                throw std::invalid_argument("sigma_action: similitude block dimension");
            MatR M = MatR::Identity(d + 2, d + 2);
            M.topLeftCorner(d, d) = h.h.inverse();
            M(d, d) = 1.0 / h.lambda;
            return linear_sub(f, M, 1.0);
        }
        case GOElement::Kind::TorusA: {
            MatR M = MatR::Identity(d + 2, d + 2);
            M(d, d) = 1.0 / h.a;
            M(d + 1, d + 1) = 1.0 / h.a;
            return linear_sub(f, M, 1.0 / std::abs(h.a));
        }
        case GOElement::Kind::Unipotent: {
            if (h.x.size() != d) throw std::invalid_argument("sigma_action: unipotent dimension");
            MatR J = fam.J_real(i);
            VecR Jx = J * h.x;
            VecR JJx = J * Jx;
            MatR M = MatR::Identity(d + 2, d + 2);
            for (int r = 0; r < d; ++r) M(r, d) = -Jx(r);
            GaussianFunction g = linear_sub(f, M, 1.0);
            // phase psi(xi2' (-<xi, Jx> + Q(Jx) xi1')); for involutive J this
            // is psi(xi2' (-x.xi + Q(x) xi1')).
            MatR S = MatR::Zero(d + 2, d + 2);
            for (int r = 0; r < d; ++r) {
                S(r, d + 1) = -JJx(r);
                S(d + 1, r) = -JJx(r);
            }
            double q = fam.quad_value_real(i, Jx);
            S(d, d + 1) += q;
            S(d + 1, d) += q;
            return mul_quadratic_phase(g, 1.0, S);
        }
        case GOElement::Kind::WeylSwap:
            return wedge_transform(f, opts);
    }
    throw std::logic_error("sigma_action: unsupported element kind");
}

GaussianFunction fourier_2(const GaussianFunction& f, const GaussianOpts& opts) {
    if (f.dim() < 1) throw std::invalid_argument("fourier_2: empty function space");
    return fourier(f, {f.dim() - 1}, opts);
}

GaussianFunction fourier_2_inv(const GaussianFunction& f, const GaussianOpts& opts) {
    if (f.dim() < 1) throw std::invalid_argument("fourier_2_inv: empty function space");
    return fourier_conj(f, {f.dim() - 1}, opts);
}

}  // namespace quadsum
