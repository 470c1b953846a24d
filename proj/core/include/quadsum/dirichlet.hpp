#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace quadsum {

using cplx = std::complex<double>;

class pole_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// log Gamma on C (Lanczos approximation, reflection for Re z < 1/2).
cplx lgamma_complex(cplx z);

// Hurwitz zeta zeta(s, x) for x > 0, continued to all s != 1 by
// Euler-Maclaurin with 12 correction terms after shifting x past 15.
cplx hurwitz_zeta(cplx s, double x);

// Dirichlet L-function of the real primitive character attached to a
// fundamental discriminant (disc = 1 gives the Riemann zeta function).
// Evaluation anywhere in C via the Hurwitz-zeta representation
// L(s) = q^{-s} sum_a chi(a) zeta(s, a/q).
class DirichletL {
  public:
    explicit DirichletL(std::int64_t fundamental_disc);

    std::int64_t disc() const { return disc_; }
    std::int64_t modulus() const { return q_; }
    bool trivial() const { return disc_ == 1; }
    int chi(std::int64_t n) const;
    int parity() const;  // chi(-1)
    cplx gauss_sum() const;
    double residue_at_1() const { return trivial() ? 1.0 : 0.0; }

    // Throws pole_error at s = 1 for the trivial character.
    cplx value(cplx s) const;

  private:
    std::int64_t disc_;
    std::int64_t q_;
    std::vector<int> table_;  // chi(0..q-1)
};

}  // namespace quadsum
