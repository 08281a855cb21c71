#pragma once

// Generalized Jacobi polynomials J_n^{a1,a2} on [-1,1], including the a = -1
// families used to build bases that vanish at an endpoint, and Gauss rules.

#include <span>
#include <vector>

namespace isq {

inline constexpr int kMaxJacobiDegree = 512;

/// Jacobi parameters (alpha1, alpha2). Each must be -1 or lie in (-1, inf).
class JacobiParam {
public:
  JacobiParam(double alpha1, double alpha2);

  double alpha1() const { return alpha1_; }
  double alpha2() const { return alpha2_; }

  /// Smallest admissible degree, chi(alpha1) + chi(alpha2).
  int min_degree() const;

private:
  double alpha1_;
  double alpha2_;
};

/// J_n^{a1,a2}(z). Classical parameters go through the three-term recurrence;
/// any parameter equal to -1 goes through the product forms.
double jacobi_eval(const JacobiParam& p, int n, double z);

/// Values J_0(z), ..., J_nmax(z) in one sweep.
std::vector<double> jacobi_eval_all(const JacobiParam& p, int nmax, double z);

/// Weighted L2 norm gamma_n = int w^{a1,a2} J_n^2.
double jacobi_norm(const JacobiParam& p, int n);

/// d/dz J_n^{a1,a2}(z) = (n+a1+a2+1)/2 * J_{n-1}^{a1+1,a2+1}(z).
/// Throws when -n-a1-a2 falls in {1,...,n} (degree-reduced case, e.g. J_1^{-1,-1}).
double jacobi_derivative(const JacobiParam& p, int n, double z);

/// Derivatives of J_0, ..., J_nmax at z in one sweep. For (-1,-1) the degree-1
/// entry is 1, the derivative of the supplemented J_1 = z.
std::vector<double> jacobi_derivative_all(const JacobiParam& p, int nmax, double z);

/// Coefficients of
///   (2n+b)/(n+b) J_n^{-1,b} = c0 J_n^{0,b+1} + c1 J_{n-1}^{0,b+1} + c2 J_{n-2}^{0,b+1}.
struct ConnectionCoeffs {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
};
ConnectionCoeffs connection_split(double beta, int n);

enum class QuadratureKind { legendre, jacobi };

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  QuadratureKind kind = QuadratureKind::legendre;
  double alpha = 0.0;  // weight (1-z)^alpha (1+z)^beta for the jacobi kind
  double beta = 0.0;

  int size() const { return static_cast<int>(nodes.size()); }
};

/// Golub-Welsch Gauss rule with m points; exact for degree 2m-1 against its weight.
QuadratureRule gauss_legendre(int m);
QuadratureRule gauss_jacobi(double alpha, double beta, int m);

/// Gauss-Legendre rule mapped to [a, b].
QuadratureRule gauss_legendre_on(double a, double b, int m);

}  // namespace isq
