#include "quadsum/sl2.hpp"

#include <numbers>
#include <stdexcept>

namespace quadsum {

SL2Element SL2Element::from_entries(double a, double b, double c, double d) {
    if (std::abs(a * d - b * c - 1.0) > 1e-12)
        throw std::invalid_argument("SL2Element: determinant must be 1");
    return {a, b, c, d};
}

SL2Element SL2Element::torus(double t) {
    if (t == 0.0) throw std::invalid_argument("SL2Element::torus: t must be nonzero");
    return {t, 0.0, 0.0, 1.0 / t};
}

SL2Element SL2Element::rotation(double theta) {
    double co = std::cos(theta), si = std::sin(theta);
    return {co, si, -si, co};
}

SL2Element::Iwasawa SL2Element::iwasawa() const {
    Iwasawa iw;
    double r = std::hypot(c, d);
    iw.t = 1.0 / r;
    iw.theta = std::atan2(-c * iw.t, d * iw.t);
    if (iw.theta < 0) iw.theta += 2.0 * std::numbers::pi;
    iw.x = iw.t * iw.t * (a * c + b * d);
    return iw;
}

}  // namespace quadsum
