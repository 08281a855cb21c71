#include "isqeig/convergence.hpp"

#include "isqeig/sector_solver.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace isq {

SlopeFit least_squares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("least_squares: size mismatch");
  SlopeFit f;
  f.points = static_cast<int>(x.size());
  if (f.points < 2) return f;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= f.points;
  my /= f.points;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("least_squares: abscissae coincide");
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  return f;
}

SlopeFit fit_prefloor(std::span<const double> x, std::span<const double> err, double floor) {
  if (x.size() != err.size()) throw std::invalid_argument("fit_prefloor: size mismatch");
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(err[i] > floor)) continue;
    xs.push_back(x[i]);
    ys.push_back(std::log10(err[i]));
  }
  if (xs.size() < 2) {
    SlopeFit f;
    f.points = static_cast<int>(xs.size());
    return f;
  }
  return least_squares(xs, ys);
}

std::vector<TrackedEigenvalue> tracked_eigenvalues(const Geometry& g, double c, int count) {
  if (count < 1) throw std::invalid_argument("tracked eigenvalues: count must be >= 1");
  // Enough repeats that `count` distinct values survive the largest multiplicity.
  int m = count;
  for (;;) {
    const Spectrum s = reference_spectrum(g, c, m);
    const auto groups = s.groups();
    if (static_cast<int>(groups.size()) > count || m > 200000) {
      std::vector<TrackedEigenvalue> out;
      for (int i = 0; i < count && i < static_cast<int>(groups.size()); ++i) {
        TrackedEigenvalue t;
        t.index = i + 1;
        t.n = groups[i].tag.n;
        t.k = groups[i].tag.k;
        t.multiplicity = groups[i].multiplicity;
        t.reference = groups[i].value;
        out.push_back(t);
      }
      return out;
    }
    m *= 2;
  }
}

double mode_eigenvalue(const Geometry& g, Method method, double c, int n, int k, int K) {
  if (k < 1) throw std::invalid_argument("mode_eigenvalue: k must be >= 1");
  const RadialMode mode = g.kind == Geometry::Kind::ball
                              ? assemble_mode(method, n, c, g.dimension, K)
                              : assemble_sector(method, n, c, g.gamma, K);
  if (mode.A.order() < k)
    throw std::invalid_argument("mode_eigenvalue: K = " + std::to_string(K) + " gives only " +
                                std::to_string(mode.A.order()) + " radial functions for mode " +
                                std::to_string(n));
  const Spectrum s = solve_mode(mode, k);
  return s[static_cast<std::size_t>(k - 1)];
}

bool exponential_method(Method m) { return m == Method::I || m == Method::II; }

}  // namespace isq
