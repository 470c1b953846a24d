#include "quadsum/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace quadsum {

GaussLegendre::GaussLegendre(int order) {
    if (order < 1) throw std::invalid_argument("GaussLegendre: order must be positive");
    nodes.resize(order);
    weights.resize(order);
    for (int i = 0; i < order; ++i) {
        // Chebyshev initial guess, Newton on P_n
        double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= order; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = order * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= order; ++k) {
            double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        double dp = order * (x * p1 - p0) / (x * x - 1.0);
        nodes[order - 1 - i] = x;
        weights[order - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
}

cplx integrate_to_infinity(const std::function<cplx(double)>& f, double a, double first_width,
                           int order, double rel_cutoff, int max_panels) {
    GaussLegendre gl(order);
    cplx acc = 0.0;
    double lo = a, width = first_width;
    double scale = 0.0;
    for (int panel = 0; panel < max_panels; ++panel) {
        cplx part = gl.integrate(f, lo, lo + width);
        acc += part;
        scale = std::max(scale, std::abs(part));
        if (panel > 2 && std::abs(part) < rel_cutoff * std::max(scale, 1e-300)) break;
        lo += width;
        width *= 2.0;
    }
    return acc;
}

cplx integrate_log_axis(const std::function<cplx(double)>& f, double center, double width, int n) {
    if (n < 2) throw std::invalid_argument("integrate_log_axis: need at least two nodes");
    double h = 2.0 * width / (n - 1);
    cplx acc = 0.0;
    for (int i = 0; i < n; ++i) {
        double s = center - width + i * h;
        double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        acc += w * f(s);
    }
    return acc * h;
}

}  // namespace quadsum
