#include "quadsum/polynomial.hpp"

#include <cmath>
#include <stdexcept>

namespace quadsum {

Poly Poly::constant(int nvars, cplx c) {
    Poly p(nvars);
    p.add_term(Monomial{}, c);
    return p;
}

Poly Poly::variable(int nvars, int index) {
    if (index < 0 || index >= nvars) throw std::invalid_argument("Poly::variable index");
    Poly p(nvars);
    Monomial m;
    m.e[index] = 1;
    p.add_term(m, 1.0);
    return p;
}

Poly Poly::linear(int nvars, const std::vector<cplx>& coeffs, cplx c0) {
    Poly p(nvars);
    p.add_term(Monomial{}, c0);
    for (int i = 0; i < nvars; ++i) {
        Monomial m;
        m.e[i] = 1;
        p.add_term(m, coeffs[i]);
    }
    return p;
}

bool Poly::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && terms_.begin()->first.degree() == 0;
}

cplx Poly::constant_value() const {
    if (terms_.empty()) return 0.0;
    return terms_.begin()->second;
}

int Poly::degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
}

void Poly::add_term(const Monomial& m, cplx c) {
    if (c == cplx(0.0)) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == cplx(0.0)) terms_.erase(it);
    }
}

Poly& Poly::operator+=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Poly& Poly::operator*=(cplx s) {
    if (s == cplx(0.0)) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
}

Poly Poly::operator*(const Poly& o) const {
    Poly r(nvars_);
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            Monomial m;
            for (int i = 0; i < Monomial::kMaxVars; ++i) {
                int s = ma.e[i] + mb.e[i];
                if (s > 255) throw std::overflow_error("Poly: exponent overflow");
                m.e[i] = static_cast<std::uint8_t>(s);
            }
            r.add_term(m, ca * cb);
        }
    }
    return r;
}

cplx Poly::eval(const std::vector<cplx>& x) const {
    cplx acc = 0.0;
    for (const auto& [m, c] : terms_) {
        cplx v = c;
        for (int i = 0; i < nvars_; ++i) {
            for (int k = 0; k < m.e[i]; ++k) v *= x[i];
        }
        acc += v;
    }
    return acc;
}

cplx Poly::eval_real(const std::vector<double>& x) const {
    cplx acc = 0.0;
    for (const auto& [m, c] : terms_) {
        double v = 1.0;
        for (int i = 0; i < nvars_; ++i) {
            for (int k = 0; k < m.e[i]; ++k) v *= x[i];
        }
        acc += c * v;
    }
    return acc;
}

Poly Poly::derivative(int var) const {
    Poly r(nvars_);
    for (const auto& [m, c] : terms_) {
        if (m.e[var] == 0) continue;
        Monomial d = m;
        d.e[var] -= 1;
        r.add_term(d, c * static_cast<double>(m.e[var]));
    }
    return r;
}

Poly Poly::substitute_affine(int new_nvars,
                             const std::vector<std::vector<cplx>>& M,
                             const std::vector<cplx>& t) const {
    // Precompute powers of each substituted linear form on demand.
    std::vector<std::vector<Poly>> powers(nvars_);
    auto form_power = [&](int var, int k) -> const Poly& {
        auto& pw = powers[var];
        if (pw.empty()) {
            pw.push_back(Poly::constant(new_nvars, 1.0));
            pw.push_back(Poly::linear(new_nvars, M[var], t[var]));
        }
        while (static_cast<int>(pw.size()) <= k) pw.push_back(pw.back() * pw[1]);
        return pw[k];
    };

    Poly r(new_nvars);
    for (const auto& [m, c] : terms_) {
        Poly prod = Poly::constant(new_nvars, c);
        for (int i = 0; i < nvars_; ++i) {
            if (m.e[i] > 0) prod = prod * form_power(i, m.e[i]);
        }
        r += prod;
    }
    return r;
}

Poly Poly::restrict_vars(const std::vector<int>& keep) const {
    std::vector<int> pos(nvars_, -1);
    for (std::size_t j = 0; j < keep.size(); ++j) pos[keep[j]] = static_cast<int>(j);
    Poly r(static_cast<int>(keep.size()));
    for (const auto& [m, c] : terms_) {
        Monomial nm;
        bool dead = false;
        for (int i = 0; i < nvars_; ++i) {
            if (m.e[i] == 0) continue;
            if (pos[i] < 0) {
                dead = true;  // pinned variable to 0 with positive exponent
                break;
            }
            nm.e[pos[i]] = m.e[i];
        }
        if (!dead) r.add_term(nm, c);
    }
    return r;
}

double Poly::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [mo, c] : terms_) m = std::max(m, std::abs(c));
    return m;
}

}  // namespace quadsum
