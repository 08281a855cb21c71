#pragma once

// Fractional-order Bessel functions of the first kind, their positive zeros,
// and exact Dirichlet spectra of -Laplace + c^2/|x|^2 on balls and sectors.

#include "isqeig/spectrum.hpp"

#include <vector>

namespace isq {

/// Gamma function via the Lanczos approximation (g = 7, 9 terms).
double lanczos_gamma(double x);
/// log|Gamma(x)| for x > 0, Lanczos based.
double lanczos_log_gamma(double x);

/// J_nu(x) for 0 <= nu <= 200, 0 <= x <= 1e6.
double bessel_j(double nu, double x);

struct BesselValue {
  double j = 0.0;      // J_nu(x)
  double dj = 0.0;     // J_nu'(x)
};
/// J_nu and its derivative together.
BesselValue bessel_j_with_derivative(double nu, double x);

/// k-th positive zero j_{nu,k}, k >= 1.
double bessel_zero(double nu, int k);
/// The first `count` positive zeros, ascending.
std::vector<double> bessel_zeros(double nu, int count);

struct Geometry {
  enum class Kind { ball, sector };
  Kind kind = Kind::ball;
  int dimension = 2;    // ball only
  double gamma = 0.5;   // sector opening angle pi/gamma

  static Geometry ball(int d) { return {Kind::ball, d, 0.0}; }
  static Geometry sector(double g) { return {Kind::sector, 2, g}; }
};

/// The m smallest eigenvalues j_{beta_n,k}^2 with multiplicities (ball: a_n^d) and
/// mode provenance.
Spectrum reference_spectrum(const Geometry& geometry, double c, int m);

}  // namespace isq
