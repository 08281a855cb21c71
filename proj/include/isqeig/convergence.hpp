#pragma once
// Error-versus-degree sweeps for the radial solvers and rate fits on the results.
#include "isqeig/ball_solver.hpp"
#include "isqeig/specfun.hpp"

#include <span>
#include <vector>

namespace isq {

/// Errors at or below this multiple of |lambda| count as round-off floor.
inline constexpr double kRelativeFloor = 1e-13;

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  int points = 0;
};

/// Least-squares line y = slope * x + intercept.
SlopeFit least_squares(std::span<const double> x, std::span<const double> y);

/// Fit of log10(err) against x over the points with err > floor. Fewer than two such
/// points gives points < 2 and slope 0.
SlopeFit fit_prefloor(std::span<const double> x, std::span<const double> err, double floor);

/// One distinct reference eigenvalue and the mode it lives in.
struct TrackedEigenvalue {
  int index = 0;  // 1-based among distinct values
  int n = 0;
  int k = 1;
  int multiplicity = 1;
  double reference = 0.0;
};

/// The first `count` distinct eigenvalues of the exact spectrum.
std::vector<TrackedEigenvalue> tracked_eigenvalues(const Geometry& g, double c, int count);

/// k-th eigenvalue of angular mode n computed with `method` at radial degree K.
double mode_eigenvalue(const Geometry& g, Method method, double c, int n, int k, int K);

/// Methods I/II converge exponentially in K, the baselines algebraically.
bool exponential_method(Method m);

}  // namespace isq
