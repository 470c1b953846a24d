#include "quadsum/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>

#include "quadsum/local_arith.hpp"

namespace quadsum {

namespace {

void push_point(QuadricPointSet& out, const VecI& xi, std::int64_t max_points) {
    if (!out.exhaustive) return;
    if (static_cast<std::int64_t>(out.points.size()) >= max_points) {
        out.exhaustive = false;
        return;
    }
    out.points.push_back({xi, content(xi)});
}

// divisors of |m| (m != 0)
std::vector<std::int64_t> divisors(std::int64_t m) {
    m = std::llabs(m);
    std::vector<std::int64_t> divs;
    for (std::int64_t e = 1; e * e <= m; ++e) {
        if (m % e != 0) continue;
        divs.push_back(e);
        if (e != m / e) divs.push_back(m / e);
    }
    return divs;
}

}  // namespace

QuadricPointSet enumerate_quadric(const QuadFamily& fam, int level, std::int64_t radius,
                                  std::int64_t max_points) {
    if (radius < 1) throw std::invalid_argument("enumerate_quadric: radius must be >= 1");
    QuadricPointSet out;
    out.level = level;
    out.radius = radius;
    int d = fam.dim(level);
    if (level == 0 || d < 2) return out;  // anisotropic core: no rational zeros

    const std::int64_t R = radius;
    int dfree = d - 2;
    MatI Jsub = fam.J(level).topLeftCorner(dfree, dfree);

    VecI v = VecI::Constant(dfree, -R);
    bool done = false;
    VecI xi(d);
    while (!done) {
        // m = Q restricted to the free block
        std::int64_t q2 = 0;
        for (int a = 0; a < dfree; ++a) {
            q2 += Jsub(a, a) * v(a) * v(a);
            for (int b = a + 1; b < dfree; ++b) q2 += 2 * Jsub(a, b) * v(a) * v(b);
        }
        std::int64_t m = q2 / 2;

        xi.head(dfree) = v;
        bool v_zero = (dfree == 0) || v.cwiseAbs().maxCoeff() == 0;
        if (m == 0) {
            // axis solutions of x1 x2 = 0
            for (std::int64_t x1 = -R; x1 <= R; ++x1) {
                xi(d - 2) = x1;
                xi(d - 1) = 0;
                if (x1 != 0 || !v_zero) push_point(out, xi, max_points);
            }
            for (std::int64_t x2 = -R; x2 <= R; ++x2) {
                if (x2 == 0) continue;
                xi(d - 2) = 0;
                xi(d - 1) = x2;
                push_point(out, xi, max_points);
            }
        } else if (std::llabs(m) <= R * R) {
            for (std::int64_t e : divisors(m)) {
                std::int64_t f = std::llabs(m) / e;
                if (e > R || f > R) continue;
                // x1 x2 = -m
                std::int64_t x2sign = (m > 0) ? -1 : 1;
                xi(d - 2) = e;
                xi(d - 1) = x2sign * f;
                push_point(out, xi, max_points);
                xi(d - 2) = -e;
                xi(d - 1) = -x2sign * f;
                push_point(out, xi, max_points);
            }
        }

        // odometer
        int pos = 0;
        while (pos < dfree) {
            if (v(pos) < R) {
                ++v(pos);
                break;
            }
            v(pos) = -R;
            ++pos;
        }
        if (pos == dfree) done = true;
        if (dfree == 0) done = true;
        if (!out.exhaustive) break;
    }
    return out;
}

QuadricPointSet enumerate_quadric_naive(const QuadFamily& fam, int level, std::int64_t radius) {
    QuadricPointSet out;
    out.level = level;
    out.radius = radius;
    int d = fam.dim(level);
    if (d == 0) return out;
    VecI v = VecI::Constant(d, -radius);
    bool done = false;
    while (!done) {
        if (v.cwiseAbs().maxCoeff() != 0 && fam.quad_value(level, v) == 0)
            out.points.push_back({v, content(v)});
        int pos = 0;
        while (pos < d) {
            if (v(pos) < radius) {
                ++v(pos);
                break;
            }
            v(pos) = -radius;
            ++pos;
        }
        if (pos == d) done = true;
    }
    return out;
}

std::vector<std::pair<std::int64_t, std::vector<VecI>>> lattice_by_quad_value(
    const QuadFamily& fam, int level, std::int64_t r2max) {
    int d = fam.dim(level);
    std::map<std::int64_t, std::vector<VecI>> buckets;
    std::int64_t R = static_cast<std::int64_t>(std::sqrt(static_cast<double>(r2max))) + 1;
    VecI v(d);
    // recursive ball enumeration
    std::function<void(int, std::int64_t)> rec = [&](int pos, std::int64_t norm2) {
        if (pos == d) {
            buckets[fam.quad_value(level, v)].push_back(v);
            return;
        }
        for (std::int64_t x = -R; x <= R; ++x) {
            std::int64_t n2 = norm2 + x * x;
            if (n2 > r2max) continue;
            v(pos) = x;
            rec(pos + 1, n2);
        }
    };
    rec(0, 0);
    return {buckets.begin(), buckets.end()};
}

}  // namespace quadsum
