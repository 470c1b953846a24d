#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "quadsum/polynomial.hpp"

namespace quadsum {

using MatC = Eigen::MatrixXcd;
using VecC = Eigen::VectorXcd;
using MatR = Eigen::MatrixXd;
using VecR = Eigen::VectorXd;

// One term  c * P(x) * exp(-pi x^T A x + 2 pi i b . x)  with A complex
// symmetric, Re(A) positive definite, b complex.  A function is a finite sum
// of such terms; this family is closed under every operator we need: Fourier
// transforms on any subset of coordinates, quadratic phases, linear
// substitutions, translations and zero-restrictions.
struct GaussianTerm {
    Poly poly;  // in n variables
    MatC A;     // n x n complex symmetric
    VecC b;     // n
    cplx c = 1.0;

    int dim() const { return static_cast<int>(A.rows()); }
};

class GaussianFunction {
  public:
    GaussianFunction() : n_(0) {}
    explicit GaussianFunction(int n) : n_(n) {}

    static GaussianFunction standard(int n);  // exp(-pi |x|^2)
    static GaussianFunction from_term(GaussianTerm t);

    int dim() const { return n_; }
    const std::vector<GaussianTerm>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    void append(GaussianTerm t);
    GaussianFunction& operator+=(const GaussianFunction& o);
    friend GaussianFunction operator+(GaussianFunction a, const GaussianFunction& b) {
        return a += b;
    }
    GaussianFunction scaled(cplx s) const;

    cplx eval(const VecR& x) const;
    cplx eval(const VecC& x) const;

    // Smallest eigenvalue of Re(A) over all terms (>0 is the Schwartz
    // invariant).
    double min_re_eigenvalue() const;

    // Merge terms whose (A, b) agree entrywise within `eps`; exact sum of the
    // polynomial parts, no lossy compression.  Terms whose polynomial became
    // identically zero are dropped.
    void merge_terms(double eps = 1e-14);

    int max_poly_degree() const;

  private:
    int n_;
    std::vector<GaussianTerm> terms_;
};

struct GaussianOpts {
    int max_degree = 8;       // cap on polynomial prefactor degree
    double cond_limit = 1e12; // Fourier A-block conditioning guard
};

// Fourier transform on the coordinates in `coords` (0-based, strictly
// increasing) with kernel psi(sum u_j x_j) = exp(+2 pi i u.x) and self-dual
// (Lebesgue) measure; transformed coordinates stay in place.
GaussianFunction fourier(const GaussianFunction& g, const std::vector<int>& coords,
                         const GaussianOpts& opts = {});
// Same with the conjugate kernel exp(-2 pi i u.x).
GaussianFunction fourier_conj(const GaussianFunction& g, const std::vector<int>& coords,
                              const GaussianOpts& opts = {});

// x -> exp(2 pi i t Q(x)) g(x) with Q(x) = x^T J x / 2.
GaussianFunction mul_quadratic_phase(const GaussianFunction& g, double t, const MatR& J);

// x -> scale * g(M x), M invertible real.
GaussianFunction linear_sub(const GaussianFunction& g, const MatR& M, cplx scale);

// x -> g(x - v).
GaussianFunction translate(const GaussianFunction& g, const VecR& v);

// Pin the coordinates in `coords` to zero; dimension drops by |coords|,
// remaining coordinates keep their relative order.
GaussianFunction restrict_zero(const GaussianFunction& g, const std::vector<int>& coords);

// d/dx of a one-variable function (stays in the algebra).
GaussianFunction derivative_1d(const GaussianFunction& g);

// Taylor coefficient  g^(k)(0) / k!  of a one-variable function.
cplx taylor_coeff_1d(const GaussianFunction& g, int k);

}  // namespace quadsum
