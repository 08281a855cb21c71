#pragma once

// Closed-form radial stiffness and mass matrices of the Sobolev-orthogonal bases
//   Q_k = (2k+2b)/(k+2b) J_k^{-1,2b}(2r-1) r^{b+1-d/2}     (method I)
//   P_k = (2k+b)/(k+b)   J_k^{-1,b}(2r^2-1) r^{b+1-d/2}    (method II)
// for the form (u',v')_{r^{d-1}} + (c^2 + n(n+d-2)) (u,v)_{r^{d-3}}, per unit angular norm.

#include "isqeig/eiglin.hpp"

namespace isq {

enum class RadialBasis { Q, P };

struct RadialPair {
  SymBandedMatrix A;
  SymBandedMatrix B;
};

/// Rows/columns k = kmin..K (kmin 0 or 1), all entries multiplied by `prefactor`.
RadialPair radial_closed_form(RadialBasis basis, double beta, int d, int kmin, int K,
                              double prefactor);

/// Basis value and r-derivative, for oracles and traces. Requires r > 0 unless the
/// exponent b+1-d/2 is >= 1.
struct RadialValue {
  double v = 0.0;
  double dv = 0.0;
};
RadialValue radial_basis(RadialBasis basis, double beta, int d, int k, double r);

}  // namespace isq
