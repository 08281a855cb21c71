#pragma once

// Radial-mode spectral solvers for -Laplace + c^2/|x|^2 on the unit ball B^d with
// Dirichlet data: the two Sobolev-orthogonal methods and two polynomial baselines.

#include "isqeig/eiglin.hpp"
#include "isqeig/spectrum.hpp"

namespace isq {

enum class Method { I, II, classic, poly };

const char* method_name(Method m);

struct BallProblem {
  int d = 2;
  double c = 0.0;
  int K = 16;
  int N = 3;
  Method method = Method::II;
};

/// One angular mode: radial generalized eigenproblem A x = lambda B x with
/// rows indexed by k = first_k, first_k + 1, ...
struct RadialMode {
  int n = 0;
  double beta = 0.0;
  long multiplicity = 1;
  int first_k = 1;
  SymBandedMatrix A{0, 0};
  SymBandedMatrix B{0, 0};
};

/// sqrt(c^2 + (n + d/2 - 1)^2)
double beta(int n, double c, int d);
/// Dimension of degree-n spherical harmonics in d variables.
long harmonic_dim(int n, int d);
/// Surface measure omega_d of the unit sphere S^{d-1}.
double sphere_area(int d);

RadialMode assemble_method1(int n, double c, int d, int K);
RadialMode assemble_method2(int n, double c, int d, int K);
RadialMode assemble_classic(int n, double c, int d, int K);
RadialMode assemble_poly(int n, double c, int d, int K);
RadialMode assemble_mode(Method method, int n, double c, int d, int K);

/// First admissible k of the baselines (2 when the basis must also vanish at r = 0).
int baseline_first_k(Method method, int n, double c, int d);

/// Eigenvalues of one mode, ascending, tagged (n, k).
Spectrum solve_mode(const RadialMode& mode, int want);

Spectrum solve_ball(const BallProblem& p, int want);

}  // namespace isq
