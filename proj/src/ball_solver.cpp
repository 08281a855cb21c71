#include "isqeig/ball_solver.hpp"

#include "isqeig/orthopoly.hpp"
#include "isqeig/radial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace isq {

const char* method_name(Method m) {
  switch (m) {
    case Method::I: return "I";
    case Method::II: return "II";
    case Method::classic: return "classic";
    case Method::poly: return "poly";
  }
  return "?";
}

namespace {

void check_mode(int n, double c, int d, int K) {
  if (n < 0) throw std::invalid_argument("ball: harmonic degree must be >= 0");
  if (d < 2) throw std::invalid_argument("ball: dimension must be >= 2");
  if (!(c >= 0.0) || !std::isfinite(c)) throw std::invalid_argument("ball: c must be >= 0");
  if (K < 1) throw std::invalid_argument("ball: K must be >= 1");
}

long binom(long m, long k) {
  if (k < 0 || m < 0 || k > m) return 0;
  k = std::min(k, m - k);
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (m - k + i) / i;
  return r;
}

RadialMode closed_form_mode(RadialBasis basis, int n, double c, int d, int K) {
  check_mode(n, c, d, K);
  RadialMode m;
  m.n = n;
  m.beta = beta(n, c, d);
  m.multiplicity = harmonic_dim(n, d);
  m.first_k = 1;
  RadialPair p = radial_closed_form(basis, m.beta, d, 1, K, sphere_area(d));
  m.A = std::move(p.A);
  m.B = std::move(p.B);
  return m;
}

// Smallest half-bandwidth holding every entry above a relative threshold.
int detected_band(const Eigen::MatrixXd& M) {
  const double scale = M.cwiseAbs().maxCoeff();
  const int n = static_cast<int>(M.rows());
  int band = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(M(i, j)) > 1e-13 * scale) band = std::max(band, j - i);
  return band;
}

SymBandedMatrix to_banded(const Eigen::MatrixXd& M) {
  const int n = static_cast<int>(M.rows());
  SymBandedMatrix out(n, detected_band(M));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n && j <= i + out.half_bandwidth(); ++j) out.set(i, j, 0.5 * (M(i, j) + M(j, i)));
  return out;
}

// Gauss-Jacobi rule on [0,1] for the weight s^e, e > -1.
QuadratureRule jacobi_on_unit(double e, int m) {
  QuadratureRule rule = gauss_jacobi(0.0, e, m);
  const double scale = std::pow(0.5, e + 1.0);
  for (int i = 0; i < m; ++i) {
    rule.nodes[i] = 0.5 * (1.0 + rule.nodes[i]);
    rule.weights[i] *= scale;
  }
  return rule;
}

void add_outer(Eigen::MatrixXd& M, double w, const Eigen::VectorXd& a) { M.noalias() += w * a * a.transpose(); }

// (u',v')_{r^{d-1}} + q (u,v)_{r^{d-3}} and (u,v)_{r^{d-1}} over u_k = J_k^{-1,a}(2r-1),
// by Gauss-Legendre in r (all integrands are polynomials).
void classic_forms(const JacobiParam& jp, int k0, int K, int d, double q, Eigen::MatrixXd& A,
                   Eigen::MatrixXd& B) {
  const int size = K - k0 + 1;
  const int npts = K + d + 8;
  const QuadratureRule rule = gauss_legendre_on(0.0, 1.0, npts);
  Eigen::VectorXd u(size), du(size);
  for (int p = 0; p < npts; ++p) {
    const double r = rule.nodes[p];
    const std::vector<double> jv = jacobi_eval_all(jp, K, 2.0 * r - 1.0);
    const std::vector<double> jd = jacobi_derivative_all(jp, K, 2.0 * r - 1.0);
    for (int i = 0; i < size; ++i) {
      u(i) = jv[k0 + i];
      du(i) = 2.0 * jd[k0 + i];
    }
    const double wm = rule.weights[p] * std::pow(r, d - 1);
    add_outer(A, wm, du);
    add_outer(A, rule.weights[p] * q * std::pow(r, d - 3), u);
    add_outer(B, wm, u);
  }
}

// Same forms over u_k = r^n J_k^{-1,a}(2r^2-1). With s = r^2 and u = r^n p(2s-1):
//   mass      (1/2) int s^{n+d/2-1} p^2 ds
//   stiffness (1/2) int s^{n+d/2-2} [(n p + 4 s p')^2 + q p^2] ds
// where p' is the derivative in the Jacobi variable. Gauss-Jacobi in s absorbs the powers.
void poly_forms(const JacobiParam& jp, int k0, int K, int n, int d, double q, Eigen::MatrixXd& A,
                Eigen::MatrixXd& B) {
  const int size = K - k0 + 1;
  const int npts = K + 8;
  Eigen::VectorXd u(size), g(size);
  const double em = n + 0.5 * d - 1.0;
  const QuadratureRule mr = jacobi_on_unit(em, npts);
  for (int p = 0; p < npts; ++p) {
    const std::vector<double> jv = jacobi_eval_all(jp, K, 2.0 * mr.nodes[p] - 1.0);
    for (int i = 0; i < size; ++i) u(i) = jv[k0 + i];
    add_outer(B, 0.5 * mr.weights[p], u);
  }
  // Stiffness weight s^{em-1}; when em = 0 (d = 2, n = 0) integrate s^0 and divide by s,
  // exact because every integrand then carries a factor s.
  const bool divide = em - 1.0 <= -1.0;
  const QuadratureRule sr = jacobi_on_unit(divide ? 0.0 : em - 1.0, npts);
  for (int p = 0; p < npts; ++p) {
    const double sv = sr.nodes[p];
    const std::vector<double> jv = jacobi_eval_all(jp, K, 2.0 * sv - 1.0);
    const std::vector<double> jd = jacobi_derivative_all(jp, K, 2.0 * sv - 1.0);
    for (int i = 0; i < size; ++i) {
      u(i) = jv[k0 + i];
      g(i) = n * jv[k0 + i] + 4.0 * sv * jd[k0 + i];
    }
    const double w = 0.5 * sr.weights[p] / (divide ? sv : 1.0);
    add_outer(A, w, g);
    add_outer(A, w * q, u);
  }
}

RadialMode baseline_mode(Method method, int n, double c, int d, int K) {
  check_mode(n, c, d, K);
  const bool poly = method == Method::poly;
  const int k0 = baseline_first_k(method, n, c, d);
  if (K < k0)
    throw std::invalid_argument("ball: K must be >= " + std::to_string(k0) + " for this mode");

  double a = poly ? n + 0.5 * d - 2.0 : d - 3.0;
  // The (-1,-1) family has no Dirichlet member of degree 1; the unconstrained
  // d = 2, n = 0, c = 0 mode uses the (-1,0) family instead.
  if (a == -1.0 && k0 == 1) a = 0.0;
  const JacobiParam jp(-1.0, a);
  const double q = c * c + static_cast<double>(n) * (n + d - 2);

  const int size = K - k0 + 1;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(size, size);
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(size, size);
  if (poly) poly_forms(jp, k0, K, n, d, q, A, B);
  else classic_forms(jp, k0, K, d, q, A, B);

  RadialMode m;
  m.n = n;
  m.beta = beta(n, c, d);
  m.multiplicity = harmonic_dim(n, d);
  m.first_k = k0;
  m.A = to_banded(A);
  m.B = to_banded(B);
  return m;
}

}  // namespace

double beta(int n, double c, int d) {
  const double s = n + 0.5 * d - 1.0;
  return std::sqrt(c * c + s * s);
}

long harmonic_dim(int n, int d) {
  if (n < 0 || d < 2) throw std::invalid_argument("harmonic_dim: need n >= 0, d >= 2");
  return binom(n + d - 1, n) - (n >= 2 ? binom(n + d - 3, n - 2) : 0);
}

double sphere_area(int d) {
  if (d < 1) throw std::invalid_argument("sphere_area: d must be >= 1");
  return 2.0 * std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d);
}

int baseline_first_k(Method method, int n, double c, int d) {
  if (d != 2) return 1;
  if (method == Method::classic) return (c != 0.0 || n != 0) ? 2 : 1;
  if (method == Method::poly) return (n == 0 && c != 0.0) ? 2 : 1;
  return 1;
}

RadialMode assemble_method1(int n, double c, int d, int K) {
  return closed_form_mode(RadialBasis::Q, n, c, d, K);
}

RadialMode assemble_method2(int n, double c, int d, int K) {
  return closed_form_mode(RadialBasis::P, n, c, d, K);
}

RadialMode assemble_classic(int n, double c, int d, int K) { return baseline_mode(Method::classic, n, c, d, K); }
RadialMode assemble_poly(int n, double c, int d, int K) { return baseline_mode(Method::poly, n, c, d, K); }

RadialMode assemble_mode(Method method, int n, double c, int d, int K) {
  switch (method) {
    case Method::I: return assemble_method1(n, c, d, K);
    case Method::II: return assemble_method2(n, c, d, K);
    case Method::classic: return assemble_classic(n, c, d, K);
    case Method::poly: return assemble_poly(n, c, d, K);
  }
  throw std::invalid_argument("assemble_mode: unknown method");
}

Spectrum solve_mode(const RadialMode& mode, int want) {
  const int size = mode.A.order();
  want = std::min(want, size);
  GevpResult r = solve_gevp(mode.A.dense(), mode.B.dense(), want);
  Spectrum out;
  for (int i = 0; i < want; ++i) out.add(r.spectrum[static_cast<std::size_t>(i)], ModeTag{mode.n, i + 1});
  return out;
}

Spectrum solve_ball(const BallProblem& p, int want) {
  if (want < 1) throw std::invalid_argument("solve_ball: count must be >= 1");
  if (p.N < 0) throw std::invalid_argument("solve_ball: N must be >= 0");
  Spectrum all;
  long available = 0;
  for (int n = 0; n <= p.N; ++n) {
    const RadialMode mode = assemble_mode(p.method, n, p.c, p.d, p.K);
    available += static_cast<long>(mode.A.order()) * mode.multiplicity;
    const Spectrum s = solve_mode(mode, want);
    for (std::size_t i = 0; i < s.size(); ++i) all.add_repeated(s[i], s.tags()[i], mode.multiplicity);
  }
  if (want > available)
    throw std::invalid_argument("solve_ball: requested " + std::to_string(want) +
                                " eigenvalues, trial space has " + std::to_string(available));
  all.sort();
  all.truncate(static_cast<std::size_t>(want));
  return all;
}

}  // namespace isq
