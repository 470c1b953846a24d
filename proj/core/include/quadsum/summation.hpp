#pragma once

#include <optional>
#include <string>

#include "quadsum/analytic.hpp"
#include "quadsum/enumerate.hpp"
#include "quadsum/local_arith.hpp"
#include "quadsum/test_function.hpp"

namespace quadsum {

struct SummationConfig {
    QuadratureConfig quad;
    double tail_rel = 1e-9;          // relative point-sum tail target
    std::int64_t radius_cap = 64;    // sup-norm enumeration ceiling
    std::int64_t initial_radius = 6;
    int threads = 1;
    bool strict_sequential = false;  // forces single-threaded sums
    std::int64_t max_points = 8'000'000;

    int effective_threads() const { return strict_sequential ? 1 : threads; }
};

struct TermValue {
    std::string label;
    cplx value = 0.0;
    double err_bound = 0.0;
    double seconds = 0.0;
};

struct SideBreakdown {
    std::vector<TermValue> terms;
    cplx total = 0.0;
    double tail_bound = 0.0;
};

struct PointSumResult {
    cplx value = 0.0;
    double tail_bound = 0.0;
    std::int64_t points_used = 0;
    std::int64_t radius = 0;
    bool converged = true;
};

// sum over nonzero integral points of the level-i quadric of
// basic_weight(xi) * I(arch)(arg_scale * xi), with adaptive radius validated
// by shell decay.
PointSumResult quadric_point_sum(const QuadFamily& fam, int level, const GaussianFunction& arch,
                                 double arg_scale, std::int64_t dilation,
                                 const SummationConfig& cfg);

// One side of the summation identity: for each level the boundary constant
// and the weighted point sum of the descended function, plus the unit
// constant term when the core is zero-dimensional.
SideBreakdown side_assemble(const TestFunction& tf, bool fourier_side,
                            const SummationConfig& cfg = {});

struct VerificationReport {
    SideBreakdown lhs, rhs;
    double abs_deviation = 0.0;
    double rel_deviation = 0.0;
    double seconds = 0.0;
};

VerificationReport verify_main(const TestFunction& tf, const SummationConfig& cfg = {});

struct ScalingReport {
    double a = 1.0;
    cplx lhs = 0.0, rhs = 0.0;
    double rel_deviation = 0.0;
    SideBreakdown lhs_side, rhs_side;
};

// Both sides of the torus-scaling identity at the archimedean scalar
// a = num/den > 0; requires dim V_l > 4 or a nontrivial character.
ScalingReport scaling_check(const TestFunction& tf, std::int64_t num, std::int64_t den,
                            const SummationConfig& cfg = {});

struct CountRow {
    double B = 0.0;
    double count = 0.0;
    double main_term = 0.0;
    double ratio = 0.0;
    double corrected_ratio = 0.0;
};

struct CountReport {
    std::vector<CountRow> rows;
    cplx c_main = 0.0;           // boundary constant of the transformed function
    cplx lower_coeff = 0.0;      // coefficient of the B^{d/2} block
    cplx c_density_route = 0.0;  // zeta(d/2) x density product x Leray factor
    double c_route_rel_dev = 0.0;
    double sing_series_product = 0.0;
    double sing_series_analytic = 0.0;
    double sing_series_rel_dev = 0.0;
};

// Builds the smoothed-count test function for a split tower: the top-level
// descent vanishes identically by construction (aux factor zero at the
// origin) and a 2x2 linear solve over two reference components kills the
// top boundary constant and the lower-order block of the transformed side.
TestFunction arrange_count_function(const QuadFamily& fam, const SummationConfig& cfg = {});

CountReport count_asymptotics(const TestFunction& tf, const std::vector<double>& B_list,
                              const SummationConfig& cfg = {});

struct ThetaReport {
    std::vector<double> T;
    std::vector<double> integral;
    double constant_term = 0.0;
    cplx reference_total = 0.0;
    double rel_deviation = 0.0;
    double coef_T = 0.0;
    std::vector<std::pair<double, double>> exp_coeffs;  // (exponent, coefficient)
    double fit_residual = 0.0;
};

// Truncated theta integral over the modular surface against the predicted
// constant term; split tower, single-term K-invariant Gaussian only.  Slow.
ThetaReport theta_truncation_experiment(const TestFunction& tf, const std::vector<double>& T_list,
                                        const SummationConfig& cfg = {});

// Singular series of a split even form: local density Euler product with an
// integrated tail estimate, and the zeta-quotient evaluation.
double singular_series_density_product(const QuadFamily& fam, int level,
                                       std::int64_t prime_cap = 1'000'000);
double singular_series_analytic(int dim);

}  // namespace quadsum
