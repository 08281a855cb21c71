#pragma once
// Reference computations for the unit tests. Nothing here calls into the library.
#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

inline constexpr double kPi = std::numbers::pi;

// Classical Jacobi P_n^{(a,b)}(z) from the terminating 2F1 series,
// (a+1)_n / n! * 2F1(-n, n+a+b+1; a+1; (1-z)/2), summed in quad precision since the
// alternating terms cancel heavily near z = -1.
inline double jacobi_2f1(double a, double b, int n, double z) {
  using quad = __float128;
  quad pref = 1;
  for (int i = 1; i <= n; ++i) pref *= (quad(a) + i) / quad(i);
  const quad x = (quad(1) - quad(z)) / 2;
  quad term = 1, sum = 1;
  for (int j = 0; j < n; ++j) {
    term *= quad(-n + j) * (quad(n) + quad(a) + quad(b) + 1 + j) / ((quad(a) + 1 + j) * quad(j + 1)) * x;
    sum += term;
  }
  return static_cast<double>(pref * sum);
}

// Generalized J_n^{-1,b} and J_n^{-1,-1} from their product forms over classical ones.
inline double jacobi_m1(double b, int n, double z) {
  if (n == 0) return 1.0;
  if (b == -1.0) {
    if (n == 1) return z;
    return (z - 1.0) / 2.0 * (z + 1.0) / 2.0 * jacobi_2f1(1.0, 1.0, n - 2, z);
  }
  return (n + b) / n * (z - 1.0) / 2.0 * jacobi_2f1(1.0, b, n - 1, z);
}

// d/dz J_n^{-1,b} = (n+b)/2 P_{n-1}^{(0,b+1)}.
inline double jacobi_m1_derivative(double b, int n, double z) {
  if (n == 0) return 0.0;
  return (n + b) / 2.0 * jacobi_2f1(0.0, b + 1.0, n - 1, z);
}

// Gauss-Legendre nodes by Newton on the Legendre recurrence.
inline std::pair<std::vector<double>, std::vector<double>> legendre_rule(int m) {
  std::vector<double> x(m), w(m);
  for (int i = 0; i < m; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= m; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return {x, w};
}

// Adaptive 10/20-point Gauss-Legendre bisection on [a, b].
inline double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-14,
                        int depth = 0) {
  static const auto r10 = legendre_rule(10);
  static const auto r20 = legendre_rule(20);
  auto apply = [&](const std::pair<std::vector<double>, std::vector<double>>& r) {
    double s = 0.0;
    for (std::size_t i = 0; i < r.first.size(); ++i)
      s += r.second[i] * f(0.5 * (a + b) + 0.5 * (b - a) * r.first[i]);
    return 0.5 * (b - a) * s;
  };
  const double coarse = apply(r10), fine = apply(r20);
  if (std::abs(fine - coarse) <= tol * std::max(1.0, std::abs(fine)) || depth > 40) return fine;
  const double mid = 0.5 * (a + b);
  return integrate(f, a, mid, tol, depth + 1) + integrate(f, mid, b, tol, depth + 1);
}

// Integral over (0,1] of r^p g(r), smooth g, p > -1: substitute r = t^s so the
// integrand t^{s(p+1)-1} g(t^s) is smooth enough for adaptive Gauss-Legendre.
inline double integrate_power(double p, const std::function<double(double)>& g) {
  const double s = std::max(1.0, std::ceil(12.0 / (p + 1.0)));
  return integrate([&](double t) {
    if (t <= 0.0) return 0.0;
    const double r = std::pow(t, s);
    return s * std::pow(t, s * (p + 1.0) - 1.0) * g(r);
  }, 0.0, 1.0);
}

// Rayleigh-quotient iteration for A x = lambda B x started from the shift sigma.
inline double rayleigh_iteration(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, double sigma,
                                 std::mt19937_64& gen) {
  const int n = static_cast<int>(A.rows());
  Eigen::VectorXd x(n);
  std::normal_distribution<double> nd;
  for (int i = 0; i < n; ++i) x(i) = nd(gen);
  // Two plain inverse-iteration steps at the fixed shift lock onto the nearest eigenvalue.
  for (int it = 0; it < 3; ++it) {
    x = (A - sigma * B).partialPivLu().solve(B * x);
    x /= std::sqrt(x.dot(B * x));
  }
  double rho = x.dot(A * x);
  for (int it = 0; it < 20; ++it) {
    const Eigen::MatrixXd M = A - rho * B;
    Eigen::VectorXd y = M.partialPivLu().solve(B * x);
    if (!y.allFinite()) break;
    y /= std::sqrt(y.dot(B * y));
    const double next = y.dot(A * y);
    x = y;
    if (std::abs(next - rho) <= 1e-15 * std::abs(next)) {
      rho = next;
      break;
    }
    rho = next;
  }
  return rho;
}

// J_nu(x) from its ascending series, terms accumulated in long double.
inline double bessel_series(double nu, double x, int terms = 60) {
  const long double h = x / 2.0L;
  long double term = std::pow(h, static_cast<long double>(nu)) / std::tgamma(static_cast<long double>(nu) + 1.0L);
  long double sum = term;
  for (int m = 1; m < terms; ++m) {
    term *= -h * h / (m * (m + static_cast<long double>(nu)));
    sum += term;
  }
  return static_cast<double>(sum);
}

// Root of f bracketed by [a, b] by bisection.
inline double bisect(const std::function<double(double)>& f, double a, double b) {
  double fa = f(a);
  for (int it = 0; it < 200 && b - a > 1e-15 * b; ++it) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

// Stiffness and mass of the normalized Q/P radial bases, integrated with the
// r^{2 beta - 1} singular weight factored out, times omega.
inline std::pair<Eigen::MatrixXd, Eigen::MatrixXd> radial_gram(bool p_basis, double beta, int d, int K,
                                                               double omega, int kmin = 1) {
  const double e = beta + 1.0 - 0.5 * d;
  const double q = beta * beta - (0.5 * d - 1.0) * (0.5 * d - 1.0);
  auto f = [&](int k, double r, double& v, double& w) {
    // v = u / r^e, w = r^{1-e} u'
    if (!p_basis) {
      const double nrm = (2.0 * k + 2.0 * beta) / (k + 2.0 * beta);
      v = nrm * oracle::jacobi_m1(2 * beta, k, 2 * r - 1);
      w = nrm * (2 * r * oracle::jacobi_m1_derivative(2 * beta, k, 2 * r - 1)) + e * v;
    } else {
      const double nrm = (2.0 * k + beta) / (k + beta);
      v = nrm * oracle::jacobi_m1(beta, k, 2 * r * r - 1);
      w = nrm * (4 * r * r * oracle::jacobi_m1_derivative(beta, k, 2 * r * r - 1)) + e * v;
    }
  };
  const int size = K - kmin + 1;
  Eigen::MatrixXd A(size, size), B(size, size);
  for (int i = kmin; i <= K; ++i)
    for (int j = i; j <= K; ++j) {
      A(i - kmin, j - kmin) = A(j - kmin, i - kmin) = omega * oracle::integrate_power(2 * beta - 1, [&](double r) {
        double vi, wi, vj, wj;
        f(i, r, vi, wi);
        f(j, r, vj, wj);
        return wi * wj + q * vi * vj;
      });
      B(i - kmin, j - kmin) = B(j - kmin, i - kmin) = omega * oracle::integrate_power(2 * beta + 1, [&](double r) {
        double vi, wi, vj, wj;
        f(i, r, vi, wi);
        f(j, r, vj, wj);
        return vi * vj;
      });
    }
  return {A, B};
}

}  // namespace oracle
