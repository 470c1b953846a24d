#pragma once

#include <cmath>

namespace quadsum {

// Real SL2 element with its Iwasawa data g = n(x) diag(t, 1/t) k(theta),
// t > 0, k(theta) = [[cos, sin], [-sin, cos]].
struct SL2Element {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    struct Iwasawa {
        double x = 0.0;
        double t = 1.0;
        double theta = 0.0;
    };

    static SL2Element identity() { return {}; }
    static SL2Element from_entries(double a, double b, double c, double d);
    static SL2Element upper(double x) { return {1.0, x, 0.0, 1.0}; }
    static SL2Element torus(double t);  // diag(t, 1/t), t != 0
    static SL2Element rotation(double theta);
    static SL2Element weyl() { return {0.0, 1.0, -1.0, 0.0}; }

    SL2Element operator*(const SL2Element& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    SL2Element inverse() const { return {d, -b, -c, a}; }
    SL2Element transpose() const { return {a, c, b, d}; }
    double det() const { return a * d - b * c; }

    Iwasawa iwasawa() const;
    double H_B() const { return std::log(iwasawa().t); }
};

}  // namespace quadsum
