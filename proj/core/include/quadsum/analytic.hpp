#pragma once

#include <memory>
#include <vector>

#include "quadsum/dirichlet.hpp"
#include "quadsum/gaussian.hpp"
#include "quadsum/quad_family.hpp"
#include "quadsum/quadrature.hpp"
#include "quadsum/sl2.hpp"
#include "quadsum/weil.hpp"

namespace quadsum {

// Measure constants under the conventions fixed here (self-dual additive
// measures, d^x a over both halves of R^x, K of mass one).
double vol1_constant();   // measure of the norm-one idele class group: 1
double kappa_constant();  // measure of SL2(Q)\SL2(A): pi/6

// ---------------------------------------------------------------------------
// K-averages

// r_i(k(theta)) f at Gauss-Legendre nodes over [0, 2pi), weights normalized
// to total mass 1.
struct ThetaOrbit {
    std::vector<GaussianFunction> funcs;
    std::vector<double> weights;
};

ThetaOrbit k_orbit_r(const QuadFamily& fam, int i, const GaussianFunction& f, int theta_order,
                     const GaussianOpts& opts = {});
// Same under rho_i (f lives on V_i itself).
ThetaOrbit k_orbit_rho(const QuadFamily& fam, int i, const GaussianFunction& f, int theta_order,
                       const GaussianOpts& opts = {});

// ---------------------------------------------------------------------------
// The archimedean integral over N\SL2 producing a function on the punctured
// quadric:  xi |-> int chi(a)|a|^{2-d/2} [r(k)f](xi/a, 0, a) dk d^x a.

// One-off evaluation.
cplx quadric_integral(const QuadFamily& fam, int i, const GaussianFunction& f, const VecR& xi,
                      const QuadratureConfig& cfg = {}, const GaussianOpts& opts = {});

// Precomputed evaluator for many points; const-callable from several threads.
class QuadricIntegrator {
  public:
    QuadricIntegrator(const QuadFamily& fam, int i, const GaussianFunction& f,
                      const QuadratureConfig& cfg = {}, const GaussianOpts& opts = {});
    ~QuadricIntegrator();
    QuadricIntegrator(QuadricIntegrator&&) noexcept;

    // abs_floor: skip work when the integrand peak is provably below it.
    cplx eval(const VecR& xi, double abs_floor = 0.0) const;
    int dim() const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// ---------------------------------------------------------------------------
// Zeta profiles and the meromorphic one-variable zeta integral.

struct ZetaProfile {
    GaussianFunction psi_arch;      // one variable
    GaussianFunction psi_arch_hat;  // conjugate-kernel Fourier transform
    DirichletL L;
    double vol1 = 1.0;
    std::int64_t dilation = 1;
};

// Profile Psi(x) = int_K [r_i(k) f](0, .., 0, x) dk for f on V_i + R^2.
ZetaProfile zeta_profile_r(const QuadFamily& fam, int i, const GaussianFunction& f,
                           const QuadratureConfig& cfg = {}, const GaussianOpts& opts = {});
// Profile under rho_i for f on V_i (used on the dual side of the functional
// equation, one level up).
ZetaProfile zeta_profile_rho(const QuadFamily& fam, int i, const GaussianFunction& f,
                             const QuadratureConfig& cfg = {}, const GaussianOpts& opts = {});

// Z(Psi, chi |.|^s) by the globally convergent decomposition: incomplete
// integrals over |t| >= 1 on both sides of the functional equation plus
// boundary poles at s = 0, 1 for the trivial character; for a nontrivial
// primitive character the dual side carries chi(-1) q^{1-s} / tau(chi) and
// integrates from 1/q.  Valid at every s away from the poles.
cplx tate_zeta(const ZetaProfile& zp, cplx s, const QuadratureConfig& cfg = {});

struct CValue {
    double s0 = 0.0;
    enum class Branch { Holomorphic, PoleDerivative } branch = Branch::Holomorphic;
    cplx value = 0.0;
    cplx pole_residue = 0.0;
};

// Boundary constant at s0 = 2 - dim/2: direct evaluation on the holomorphic
// branch, Richardson-extrapolated Laurent constant on the pole branch.
CValue c_extract(const ZetaProfile& zp, int dim_i, const QuadratureConfig& cfg = {});

// Independent continuation route: L(s, chi) times the archimedean zeta
// integral continued by Taylor subtraction, multiplied as Laurent series.
// Returns the Laurent constant term at s0 (equal to the value when regular).
cplx c_product_route(const ZetaProfile& zp, int dim_i, const QuadratureConfig& cfg = {});

// Residue of Z at s = 1 for the trivial character: vol1 * hat(Psi)(0).
cplx tate_residue_at_1(const ZetaProfile& zp);

// ---------------------------------------------------------------------------
// Functional equation check between the two zeta normalizations.

struct FEReport {
    std::vector<cplx> s_points;
    std::vector<cplx> lhs;
    std::vector<cplx> rhs;
    double max_abs_dev = 0.0;
};

FEReport fe_check(const QuadFamily& fam, int i, const GaussianFunction& f,
                  const std::vector<cplx>& sample_s = {}, const QuadratureConfig& cfg = {},
                  const GaussianOpts& opts = {});

}  // namespace quadsum
