#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace quadsum {

using cplx = std::complex<double>;

// Gauss-Legendre nodes/weights on [-1, 1] (Newton on the Legendre recurrence).
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
    explicit GaussLegendre(int order);

    template <typename F>
    auto integrate(F&& f, double a, double b) const {
        using R = decltype(f(0.0));
        R acc{};
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (std::size_t i = 0; i < nodes.size(); ++i)
            acc += weights[i] * f(mid + half * nodes[i]);
        return acc * half;
    }
};

// Integral over [a, infinity) of a rapidly decaying function: fixed-order
// panels of doubling width until a panel falls below the cutoff.
cplx integrate_to_infinity(const std::function<cplx(double)>& f, double a,
                           double first_width = 1.0, int order = 32, double rel_cutoff = 1e-16,
                           int max_panels = 60);

// Trapezoid on an axis where the integrand decays doubly exponentially in
// both directions (the optimal rule for such integrands): n nodes spread over
// [center - width, center + width].
cplx integrate_log_axis(const std::function<cplx(double)>& f, double center, double width, int n);

struct QuadratureConfig {
    int theta_order = 128;   // K-average order (equispaced nodes on [0, 2pi))
    int radial_nodes = 400;  // log-axis nodes for the torus integral
    int mellin_order = 32;   // panel order for incomplete Mellin integrals
    double tail_eps = 1e-14; // series truncation threshold
};

}  // namespace quadsum
