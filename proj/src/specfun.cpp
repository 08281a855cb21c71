#include "isqeig/specfun.hpp"

#include "isqeig/errors.hpp"

#include "isqeig/ball_solver.hpp"
#include "isqeig/sector_solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace isq {

namespace {

constexpr double kPi = std::numbers::pi;

constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
constexpr double kLanczosG = 7.0;

double lanczos_series(double z) {
  double a = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) a += kLanczos[i] / (z + static_cast<double>(i));
  return a;
}

void check_args(double nu, double x) {
  if (!(nu >= 0.0) || nu > 200.0)
    throw std::domain_error("bessel_j: order must lie in [0, 200], got " + std::to_string(nu));
  if (!(x >= 0.0) || x > 1e6)
    throw std::domain_error("bessel_j: argument must lie in [0, 1e6], got " + std::to_string(x));
}

// Ascending series; used when (x/2)^2 <= nu + 1 so the terms decrease from the start.
BesselValue series(double nu, double x) {
  if (x == 0.0) return {nu == 0.0 ? 1.0 : 0.0, nu == 1.0 ? 0.5 : 0.0};
  const double h = 0.5 * x;
  const double q = h * h;
  double term = std::exp(nu * std::log(h) - lanczos_log_gamma(nu + 1.0));
  double sum = term;
  double dsum = nu * term;
  for (int m = 0; m < 400; ++m) {
    term *= -q / ((m + 1.0) * (m + 1.0 + nu));
    sum += term;
    dsum += (2.0 * (m + 1) + nu) * term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return {sum, dsum / x};
}

// Hankel asymptotic expansion of J_nu. Returns false when the series does not
// reach double precision before its terms start growing.
bool hankel_j(double nu, double x, double& out) {
  const double mu = 4.0 * nu * nu;
  double p = 1.0, q = 0.0;
  double term = 1.0;
  double prev = std::numeric_limits<double>::infinity();
  bool converged = false;
  for (int k = 1; k < 400; ++k) {
    term *= (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (k * 8.0 * x);
    const double mag = std::abs(term);
    if (mag > prev && mag > 1e-17) return false;
    prev = mag;
    switch (k % 4) {
      case 0: p += term; break;
      case 1: q += term; break;
      case 2: p -= term; break;
      default: q -= term; break;
    }
    if (mag < 1e-17) {
      converged = true;
      break;
    }
  }
  if (!converged) return false;
  const double phase = (0.5 * nu + 0.25) * kPi;
  const double cx = std::cos(x), sx = std::sin(x);
  const double cp = std::cos(phase), sp = std::sin(phase);
  const double cchi = cx * cp + sx * sp;  // cos(x - phase)
  const double schi = sx * cp - cx * sp;  // sin(x - phase)
  out = std::sqrt(2.0 / (kPi * x)) * (p * cchi - q * schi);
  return true;
}

// Temme/Steed scheme (continued fractions CF1 and CF2 plus the Wronskian), x >= 2.
BesselValue steed(double nu, double x) {
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;
  constexpr long kMaxIt = 50000000;
  const int nl = static_cast<int>(nu + 0.5);
  const double xmu = nu - nl;
  const double xmu2 = xmu * xmu;
  const double xi = 1.0 / x;
  const double xi2 = 2.0 * xi;
  const double w = xi2 / kPi;

  int isign = 1;
  double h = std::max(nu * xi, kTiny);
  double b = xi2 * nu, d = 0.0, c = h;
  long i = 1;
  for (; i <= kMaxIt; ++i) {
    b += xi2;
    d = b - d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b - 1.0 / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = c * d;
    h *= del;
    if (d < 0.0) isign = -isign;
    if (std::abs(del - 1.0) < kEps) break;
  }
  if (i > kMaxIt) throw NumericalError("bessel_j: continued fraction CF1 did not converge");

  double rjl = isign * 1e-200;
  double rjpl = h * rjl;
  double rjl1 = rjl, rjp1 = rjpl;
  double fact = nu * xi;
  for (int l = nl; l >= 1; --l) {
    const double t = fact * rjl + rjpl;
    fact -= xi;
    rjpl = fact * t - rjl;
    rjl = t;
    if (std::abs(rjl) > 1e200) {
      rjl *= 1e-200;
      rjpl *= 1e-200;
      rjl1 *= 1e-200;
      rjp1 *= 1e-200;
    }
  }
  if (rjl == 0.0) rjl = kEps;
  const double f = rjpl / rjl;

  double a = 0.25 - xmu2;
  double p = -0.5 * xi, q = 1.0;
  const double br = 2.0 * x;
  double bi = 2.0;
  fact = a * xi / (p * p + q * q);
  double cr = br + q * fact, ci = bi + p * fact;
  double den = br * br + bi * bi;
  double dr = br / den, di = -bi / den;
  double dlr = cr * dr - ci * di, dli = cr * di + ci * dr;
  double t = p * dlr - q * dli;
  q = p * dli + q * dlr;
  p = t;
  for (i = 2; i <= 100000; ++i) {
    a += 2.0 * (i - 1);
    bi += 2.0;
    dr = a * dr + br;
    di = a * di + bi;
    if (std::abs(dr) + std::abs(di) < kTiny) dr = kTiny;
    fact = a / (cr * cr + ci * ci);
    cr = br + cr * fact;
    ci = bi - ci * fact;
    if (std::abs(cr) + std::abs(ci) < kTiny) cr = kTiny;
    den = dr * dr + di * di;
    dr /= den;
    di /= -den;
    dlr = cr * dr - ci * di;
    dli = cr * di + ci * dr;
    t = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = t;
    if (std::abs(dlr - 1.0) + std::abs(dli) < kEps) break;
  }
  if (i > 100000) throw NumericalError("bessel_j: continued fraction CF2 did not converge");
  const double gam = (p - f) / q;
  double rjmu = std::sqrt(w / ((p - f) * gam + q));
  rjmu = std::copysign(rjmu, rjl);
  const double scale = rjmu / rjl;
  return {rjl1 * scale, rjp1 * scale};
}

bool use_series(double nu, double x) { return x <= 2.0 || 0.25 * x * x <= nu + 1.0; }

BesselValue evaluate(double nu, double x) {
  if (use_series(nu, x)) return series(nu, x);
  double j = 0.0, jp1 = 0.0;
  if (hankel_j(nu, x, j) && hankel_j(nu + 1.0, x, jp1)) return {j, nu / x * j - jp1};
  return steed(nu, x);
}

}  // namespace

double lanczos_gamma(double x) {
  if (x < 0.5) return kPi / (std::sin(kPi * x) * lanczos_gamma(1.0 - x));
  // Large arguments lose ~x ulps in t^(z+1/2) e^-t; step down with Gamma(x) = (x-1) Gamma(x-1).
  double scale = 1.0;
  while (x > 12.0) {
    x -= 1.0;
    scale *= x;
  }
  const double z = x - 1.0;
  const double t = z + kLanczosG + 0.5;
  return scale * (std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * lanczos_series(z));
}

double lanczos_log_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("lanczos_log_gamma: argument must be positive");
  if (x < 0.5) return std::log(kPi / std::abs(std::sin(kPi * x))) - lanczos_log_gamma(1.0 - x);
  const double z = x - 1.0;
  const double t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(lanczos_series(z));
}


double bessel_j(double nu, double x) {
  check_args(nu, x);
  return evaluate(nu, x).j;
}

BesselValue bessel_j_with_derivative(double nu, double x) {
  check_args(nu, x);
  return evaluate(nu, x);
}

namespace {

// Safeguarded Newton on a sign-change bracket [lo, hi].
double refine_zero(double nu, double lo, double hi) {
  double flo = evaluate(nu, lo).j;
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const BesselValue v = evaluate(nu, x);
    if (v.j == 0.0) return x;
    if ((v.j > 0.0) == (flo > 0.0)) {
      lo = x;
      flo = v.j;
    } else {
      hi = x;
    }
    double xn = x - v.j / v.dj;
    if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
    if (std::abs(xn - x) <= 2e-16 * x || hi - lo <= 4e-16 * x) return xn;
    x = xn;
  }
  throw NumericalError("bessel_zero: refinement did not converge for nu=" + std::to_string(nu));
}

// Walks the positive zeros of J_nu in increasing order.
class ZeroScanner {
public:
  explicit ZeroScanner(double nu) : nu_(nu), x_(std::max(nu, 0.5)) {}

  double next() {
    constexpr double kStep = 0.5;
    double fa = evaluate(nu_, x_).j;
    for (int it = 0; it < 4000000; ++it) {
      const double b = x_ + kStep;
      if (b > 1e6) break;
      const double fb = evaluate(nu_, b).j;
      if (fb == 0.0 || (fa > 0.0) != (fb > 0.0)) {
        const double z = fb == 0.0 ? b : refine_zero(nu_, x_, b);
        // Consecutive zeros are more than 3 apart for nu >= 0.
        x_ = z + 3.0;
        return z;
      }
      x_ = b;
      fa = fb;
    }
    throw NumericalError("bessel_zero: no sign change bracketed for nu=" + std::to_string(nu_));
  }

private:
  double nu_;
  double x_;
};

void check_zero_args(double nu, int k) {
  if (!(nu >= 0.0) || nu > 200.0)
    throw std::domain_error("bessel_zero: order must lie in [0, 200]");
  if (k < 1 || k > 10000) throw std::invalid_argument("bessel_zero: index must lie in [1, 10000]");
}

}  // namespace

double bessel_zero(double nu, int k) {
  check_zero_args(nu, k);
  // McMahon expansion for large k, then a unit-radius bracket around it.
  const double b = (k + 0.5 * nu - 0.25) * kPi;
  const double mu = 4.0 * nu * nu;
  const double e8b = 8.0 * b;
  const double t1 = (mu - 1.0) / e8b;
  const double t2 = 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e8b * e8b * e8b);
  if (k > 30 && std::abs(t1) < 0.5 * b && std::abs(t2) < 1e-2) {
    const double guess = b - t1 - t2;
    const double lo = guess - 1.0, hi = guess + 1.0;
    const double flo = evaluate(nu, lo).j, fhi = evaluate(nu, hi).j;
    if ((flo > 0.0) != (fhi > 0.0)) return refine_zero(nu, lo, hi);
  }
  ZeroScanner scan(nu);
  double z = 0.0;
  for (int i = 0; i < k; ++i) z = scan.next();
  return z;
}

std::vector<double> bessel_zeros(double nu, int count) {
  if (count < 0) throw std::invalid_argument("bessel_zeros: negative count");
  if (count == 0) return {};
  check_zero_args(nu, count);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  ZeroScanner scan(nu);
  for (int i = 0; i < count; ++i) out.push_back(scan.next());
  return out;
}

Spectrum reference_spectrum(const Geometry& geometry, double c, int m) {
  if (m < 1) throw std::invalid_argument("reference_spectrum: count must be positive");
  if (!(c >= 0.0)) throw std::invalid_argument("reference_spectrum: c must be non-negative");
  const bool ball = geometry.kind == Geometry::Kind::ball;
  if (ball && geometry.dimension < 2)
    throw std::invalid_argument("reference_spectrum: ball dimension must be >= 2");
  if (!ball && !(geometry.gamma >= 0.5))
    throw std::invalid_argument("reference_spectrum: sector gamma must be >= 1/2");

  Spectrum out;
  double threshold = std::numeric_limits<double>::infinity();
  for (int n = ball ? 0 : 1;; ++n) {
    const double nu = ball ? beta(n, c, geometry.dimension) : beta_sector(n, c, geometry.gamma);
    const long mult = ball ? harmonic_dim(n, geometry.dimension) : 1;
    if (nu > 200.0) {
      if (out.size() >= static_cast<std::size_t>(m)) break;
      throw std::domain_error("reference_spectrum: mode order exceeds Bessel range");
    }
    ZeroScanner scan(nu);
    for (int k = 1; k <= m; ++k) {
      const double j = scan.next();
      const double lambda = j * j;
      if (lambda > threshold) {
        if (k == 1) return out;  // first zeros grow with the order: nothing further can enter
        break;
      }
      out.add_repeated(lambda, ModeTag{n, k}, mult);
    }
    out.sort();
    if (out.size() >= static_cast<std::size_t>(m)) {
      out.truncate(static_cast<std::size_t>(m));
      threshold = out[static_cast<std::size_t>(m) - 1];
    }
  }
  return out;
}

}  // namespace isq
