#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace quadsum {

using MatI = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using VecI = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

enum class FamilyError {
    OddDimension,
    SingularJ0,
    EllTooSmall,
    OddDiagonal,
    IsotropicCore,
};

class family_error : public std::runtime_error {
  public:
    family_error(FamilyError code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    FamilyError code() const { return code_; }

  private:
    FamilyError code_;
};

// Kronecker symbol (a|n), defined for all integers n (including n <= 0).
int kronecker_symbol(std::int64_t a, std::int64_t n);

// Hilbert symbol (a,b)_p over Q_p (p = 0 means the real place).  Used as a
// test oracle for the character attached to a quadratic space.
int hilbert_symbol(std::int64_t a, std::int64_t b, std::int64_t p);

// The tower V_i = V_0 + (hyperbolic plane)^i with Gram matrices
// J_i = diag(J_0, J, ..., J), J = [[0,1],[1,0]], and Q_i(x) = x^T J_i x / 2.
// Immutable after construction.
class QuadFamily {
  public:
    static QuadFamily build(const MatI& J0, int ell);

    int dim0() const { return dim0_; }
    int ell() const { return ell_; }
    int dim(int i) const { return dim0_ + 2 * i; }

    const MatI& J0() const { return J0_; }
    MatI J(int i) const;                 // exact integer Gram matrix of V_i
    Eigen::MatrixXd J_real(int i) const;

    // (-1)^{dim V_i / 2} det J_i, identical for every i.
    std::int64_t disc_raw(int i) const;
    // Fundamental discriminant of the square class of disc_raw (1 if square).
    std::int64_t disc() const { return disc_fund_; }
    std::int64_t conductor() const { return conductor_; }
    bool chi_trivial() const { return disc_fund_ == 1; }
    // chi(-1) = sign of the fundamental discriminant.
    int chi_minus_one() const { return disc_fund_ < 0 ? -1 : 1; }
    // Sign character exponent at the real place: chi_inf(a) = sign(a)^eps.
    int chi_inf(double a) const { return (a < 0 && disc_fund_ < 0) ? -1 : 1; }

    // Quadratic character attached to the tower, Kronecker-symbol semantics.
    int chi(std::int64_t n) const;

    int signature() const { return signature_; }
    std::complex<double> weil_index_arch() const;  // exp(2 pi i sig / 8)

    // Exact integer arithmetic helpers.
    std::int64_t pairing(int i, const VecI& v, const VecI& w) const;   // v^T J_i w
    std::int64_t quad_value(int i, const VecI& v) const;               // Q_i(v), exact
    double quad_value_real(int i, const Eigen::VectorXd& v) const;

  private:
    QuadFamily() = default;
    int dim0_ = 0;
    int ell_ = 0;
    MatI J0_;
    std::int64_t disc_fund_ = 1;
    std::int64_t conductor_ = 1;
    int signature_ = 0;
};

// Elements of the similitude group used in the action formulas, acting on
// V_{i+1} = V_i + (hyperbolic pair).
struct GOElement {
    enum class Kind { Similitude, TorusA, Unipotent, WeylSwap };
    Kind kind = Kind::WeylSwap;
    Eigen::MatrixXd h;       // Similitude: a GO(V_i) element
    double lambda = 1.0;     // similitude norm of h (1 for the other kinds)
    double a = 1.0;          // TorusA parameter
    Eigen::VectorXd x;       // Unipotent parameter, dim V_i

    static GOElement similitude(const Eigen::MatrixXd& h, double lambda);
    static GOElement torus(double a);
    static GOElement unipotent(const Eigen::VectorXd& x);
    static GOElement weyl_swap();
};

// The (d_i + 2) x (d_i + 2) integer matrix of u(x) for integral x; preserves
// Q_{i+1} exactly.
MatI unipotent_matrix(const QuadFamily& fam, int i, const VecI& x);

}  // namespace quadsum
