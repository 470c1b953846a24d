#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <vector>

namespace quadsum {

using cplx = std::complex<double>;

// Exponent vector for a monomial in up to kMaxVars variables.
struct Monomial {
    static constexpr int kMaxVars = 16;
    std::array<std::uint8_t, kMaxVars> e{};

    bool operator<(const Monomial& o) const { return e < o.e; }
    bool operator==(const Monomial& o) const { return e == o.e; }
    int degree() const {
        int d = 0;
        for (auto x : e) d += x;
        return d;
    }
};

// Sparse multivariate polynomial with complex coefficients.
//
// Coefficients with magnitude exactly zero are dropped eagerly; nothing else
// is ever discarded, so arithmetic is exact up to floating point rounding.
class Poly {
  public:
    Poly() : nvars_(0) {}
    explicit Poly(int nvars) : nvars_(nvars) {}

    static Poly constant(int nvars, cplx c);
    static Poly variable(int nvars, int index);
    // Linear form coeffs . x + c0.
    static Poly linear(int nvars, const std::vector<cplx>& coeffs, cplx c0);

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    cplx constant_value() const;  // valid when is_constant()
    int degree() const;
    std::size_t term_count() const { return terms_.size(); }

    void add_term(const Monomial& m, cplx c);

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(cplx s);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, cplx s) { return a *= s; }
    friend Poly operator*(cplx s, Poly a) { return a *= s; }
    Poly operator*(const Poly& o) const;

    cplx eval(const std::vector<cplx>& x) const;
    cplx eval_real(const std::vector<double>& x) const;

    Poly derivative(int var) const;

    // Substitute x_i -> sum_j M[i][j] y_j + t[i]; the result lives in
    // `new_nvars` variables. M has nvars() rows.
    Poly substitute_affine(int new_nvars,
                           const std::vector<std::vector<cplx>>& M,
                           const std::vector<cplx>& t) const;

    // Keep only variables listed in `keep` (all others must have exponent 0 in
    // every term, else their monomials are evaluated at 0, i.e. dropped).
    // Result is renumbered to |keep| variables in the given order.
    Poly restrict_vars(const std::vector<int>& keep) const;

    double max_abs_coeff() const;

    const std::map<Monomial, cplx>& terms() const { return terms_; }

  private:
    int nvars_;
    std::map<Monomial, cplx> terms_;
};

}  // namespace quadsum
