#pragma once

// Spectral solvers on the planar sector {0 < r < 1, 0 < theta < pi/gamma} with
// angular modes sin(n gamma theta), n >= 1.

#include "isqeig/ball_solver.hpp"
#include "isqeig/spectrum.hpp"

namespace isq {

struct SectorProblem {
  double gamma = 0.5;
  double c = 0.0;
  int K = 16;
  int N = 3;
  Method method = Method::II;  // I or II
};

/// sqrt(c^2 + gamma^2 n^2)
double beta_sector(int n, double c, double gamma);

/// Sector mode n >= 1 on k = 1..K, prefactor pi/(2 gamma).
RadialMode assemble_sector(Method method, int n, double c, double gamma, int K);

Spectrum solve_sector(const SectorProblem& p, int want);

}  // namespace isq
