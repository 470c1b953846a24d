#pragma once

#include "quadsum/gaussian.hpp"
#include "quadsum/quad_family.hpp"
#include "quadsum/sl2.hpp"

namespace quadsum {

// Archimedean Weil representation attached to (Q_i, psi), psi(x) = e^{2 pi i x},
// acting on functions on V_i(R).  The rotation part of the Iwasawa
// factorization is split through triangular/Bruhat decompositions into the
// three generator types; the Weyl generator acts by gamma times the J-twisted
// self-dual Fourier transform.
GaussianFunction rho(const QuadFamily& fam, int i, const SL2Element& g,
                     const GaussianFunction& f, const GaussianOpts& opts = {});

// r_i = rho_i tensor L^v on functions on V_i + R^2 (L^v(g) h = h(g^T .) on the
// last two coordinates).
GaussianFunction r_action(const QuadFamily& fam, int i, const SL2Element& g,
                          const GaussianFunction& f, const GaussianOpts& opts = {});

// Similitude-group action on V_i + R^2 by the closed forms of the four
// element kinds.
GaussianFunction sigma_action(const QuadFamily& fam, int i, const GOElement& h,
                              const GaussianFunction& f, const GaussianOpts& opts = {});

// Symplectic Fourier transform on the last two coordinates (identity on the
// rest); an involution.
GaussianFunction wedge_transform(const GaussianFunction& f, const GaussianOpts& opts = {});

// Partial Fourier transform in the last coordinate and its inverse.
GaussianFunction fourier_2(const GaussianFunction& f, const GaussianOpts& opts = {});
GaussianFunction fourier_2_inv(const GaussianFunction& f, const GaussianOpts& opts = {});

}  // namespace quadsum
