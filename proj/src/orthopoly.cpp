#include "isqeig/orthopoly.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace isq {

namespace {

bool is_minus_one(double a) { return a == -1.0; }

void check_degree(int n) {
  if (n < 0) throw std::invalid_argument("jacobi: negative degree " + std::to_string(n));
  if (n > kMaxJacobiDegree)
    throw std::invalid_argument("jacobi: degree " + std::to_string(n) + " exceeds cap " +
                                std::to_string(kMaxJacobiDegree));
}

// Classical recurrence, a, b > -1. Fills out[0..nmax].
void recurrence_all(double a, double b, int nmax, double z, std::vector<double>& out) {
  out.assign(static_cast<std::size_t>(nmax) + 1, 0.0);
  out[0] = 1.0;
  if (nmax == 0) return;
  out[1] = (a + 1.0) + (a + b + 2.0) * (z - 1.0) / 2.0;
  const double a2b2 = a * a - b * b;
  for (int n = 2; n <= nmax; ++n) {
    const double s = 2.0 * n + a + b;
    const double c1 = 2.0 * n * (n + a + b) * (s - 2.0);
    const double c2 = (s - 1.0) * (s * (s - 2.0) * z + a2b2);
    const double c3 = 2.0 * (n + a - 1.0) * (n + b - 1.0) * s;
    out[static_cast<std::size_t>(n)] = (c2 * out[n - 1] - c3 * out[n - 2]) / c1;
  }
}

double recurrence_one(double a, double b, int n, double z) {
  std::vector<double> v;
  recurrence_all(a, b, n, z, v);
  return v.back();
}

}  // namespace

JacobiParam::JacobiParam(double alpha1, double alpha2) : alpha1_(alpha1), alpha2_(alpha2) {
  auto ok = [](double a) { return std::isfinite(a) && (a == -1.0 || a > -1.0); };
  if (!ok(alpha1) || !ok(alpha2))
    throw std::invalid_argument("JacobiParam: parameters must be -1 or > -1, got (" +
                                std::to_string(alpha1) + ", " + std::to_string(alpha2) + ")");
}

int JacobiParam::min_degree() const {
  return (is_minus_one(alpha1_) ? 1 : 0) + (is_minus_one(alpha2_) ? 1 : 0);
}

std::vector<double> jacobi_eval_all(const JacobiParam& p, int nmax, double z) {
  check_degree(nmax);
  const double a = p.alpha1();
  const double b = p.alpha2();
  std::vector<double> out;

  if (!is_minus_one(a) && !is_minus_one(b)) {
    recurrence_all(a, b, nmax, z, out);
    return out;
  }

  out.assign(static_cast<std::size_t>(nmax) + 1, 0.0);
  out[0] = 1.0;
  if (nmax == 0) return out;

  if (is_minus_one(a) && is_minus_one(b)) {
    out[1] = z;
    if (nmax >= 2) {
      std::vector<double> inner;
      recurrence_all(1.0, 1.0, nmax - 2, z, inner);
      const double bubble = (z - 1.0) / 2.0 * (z + 1.0) / 2.0;
      for (int n = 2; n <= nmax; ++n) out[static_cast<std::size_t>(n)] = bubble * inner[n - 2];
    }
    return out;
  }

  if (is_minus_one(a)) {
    std::vector<double> inner;
    recurrence_all(1.0, b, nmax - 1, z, inner);
    for (int n = 1; n <= nmax; ++n)
      out[static_cast<std::size_t>(n)] = (n + b) / n * (z - 1.0) / 2.0 * inner[n - 1];
    return out;
  }

  // b == -1: J_n^{a,-1}(z) = (-1)^n J_n^{-1,a}(-z)
  std::vector<double> inner;
  recurrence_all(1.0, a, nmax - 1, -z, inner);
  for (int n = 1; n <= nmax; ++n) {
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    out[static_cast<std::size_t>(n)] = sign * (n + a) / n * (-z - 1.0) / 2.0 * inner[n - 1];
  }
  return out;
}

double jacobi_eval(const JacobiParam& p, int n, double z) {
  check_degree(n);
  const double a = p.alpha1();
  const double b = p.alpha2();
  if (!is_minus_one(a) && !is_minus_one(b)) return recurrence_one(a, b, n, z);
  if (n == 0) return 1.0;
  if (is_minus_one(a) && is_minus_one(b)) {
    if (n == 1) return z;
    return (z - 1.0) / 2.0 * (z + 1.0) / 2.0 * recurrence_one(1.0, 1.0, n - 2, z);
  }
  if (is_minus_one(a)) return (n + b) / n * (z - 1.0) / 2.0 * recurrence_one(1.0, b, n - 1, z);
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  return sign * (n + a) / n * (-z - 1.0) / 2.0 * recurrence_one(1.0, a, n - 1, -z);
}

double jacobi_norm(const JacobiParam& p, int n) {
  check_degree(n);
  if (n < p.min_degree())
    throw std::invalid_argument("jacobi_norm: degree " + std::to_string(n) +
                                " below admissible range");
  const double a = p.alpha1();
  const double b = p.alpha2();
  const double s = a + b;
  if (n == 0) {
    // (2n+s+1) Gamma(n+s+1) collapses to Gamma(s+2) at n = 0.
    return std::exp((s + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                    std::lgamma(s + 2.0));
  }
  const double log_val = (s + 1.0) * std::log(2.0) - std::log(2.0 * n + s + 1.0) +
                         std::lgamma(n + a + 1.0) + std::lgamma(n + b + 1.0) -
                         std::lgamma(n + 1.0) - std::lgamma(n + s + 1.0);
  return std::exp(log_val);
}

double jacobi_derivative(const JacobiParam& p, int n, double z) {
  check_degree(n);
  const double a = p.alpha1();
  const double b = p.alpha2();
  const double t = -n - a - b;
  const double tr = std::round(t);
  if (std::abs(t - tr) < 1e-12 && tr >= 1.0 && tr <= n)
    throw std::domain_error("jacobi_derivative: degree-reduced combination (n=" +
                            std::to_string(n) + ", a1=" + std::to_string(a) +
                            ", a2=" + std::to_string(b) + ")");
  if (n == 0) return 0.0;
  return (n + a + b + 1.0) / 2.0 * jacobi_eval(JacobiParam(a + 1.0, b + 1.0), n - 1, z);
}

std::vector<double> jacobi_derivative_all(const JacobiParam& p, int nmax, double z) {
  check_degree(nmax);
  const double a = p.alpha1();
  const double b = p.alpha2();
  std::vector<double> out(static_cast<std::size_t>(nmax) + 1, 0.0);
  if (nmax == 0) return out;
  const std::vector<double> up = jacobi_eval_all(JacobiParam(a + 1.0, b + 1.0), nmax - 1, z);
  for (int n = 1; n <= nmax; ++n)
    out[static_cast<std::size_t>(n)] = (n + a + b + 1.0) / 2.0 * up[n - 1];
  if (is_minus_one(a) && is_minus_one(b)) out[1] = 1.0;
  return out;
}

ConnectionCoeffs connection_split(double beta, int n) {
  if (n < 0) throw std::invalid_argument("connection_split: negative degree");
  if (!(beta > -1.0)) throw std::invalid_argument("connection_split: beta must exceed -1");
  ConnectionCoeffs c;
  const double s = 2.0 * n + beta;
  c.c0 = (n + beta + 1.0) / (s + 1.0);
  if (n >= 1) c.c1 = -(1.0 + beta) * s / ((s - 1.0) * (s + 1.0));
  if (n >= 2) c.c2 = -(n - 1.0) / (s - 1.0);
  return c;
}

namespace {

// Polishes Golub-Welsch nodes by Newton on J_m and recomputes weights from the
// Christoffel formula.
void polish_rule(QuadratureRule& rule) {
  const int m = rule.size();
  const double a = rule.alpha;
  const double b = rule.beta;
  const JacobiParam p(a, b);
  const double log_c = (a + b + 1.0) * std::log(2.0) + std::lgamma(m + a + 1.0) +
                       std::lgamma(m + b + 1.0) - std::lgamma(m + a + b + 1.0) -
                       std::lgamma(m + 1.0);
  const double cst = std::exp(log_c);
  for (int i = 0; i < m; ++i) {
    double x = rule.nodes[i];
    double dp = 0.0;
    for (int it = 0; it < 3; ++it) {
      const double pm = jacobi_eval(p, m, x);
      dp = jacobi_derivative(p, m, x);
      const double step = pm / dp;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    dp = jacobi_derivative(p, m, x);
    rule.nodes[i] = x;
    rule.weights[i] = cst / ((1.0 - x * x) * dp * dp);
  }
}

QuadratureRule golub_welsch(double a, double b, int m, QuadratureKind kind) {
  if (m < 1) throw std::invalid_argument("gauss rule: need at least one point");
  if (m > kMaxJacobiDegree) throw std::invalid_argument("gauss rule: too many points");
  if (!(a > -1.0) || !(b > -1.0))
    throw std::invalid_argument("gauss rule: weight exponents must exceed -1");

  Eigen::VectorXd diag(m);
  Eigen::VectorXd off(std::max(m - 1, 1));
  for (int n = 0; n < m; ++n) {
    const double s = 2.0 * n + a + b;
    diag(n) = (n == 0) ? (b - a) / (a + b + 2.0) : (b * b - a * a) / (s * (s + 2.0));
  }
  for (int n = 1; n < m; ++n) {
    const double s = 2.0 * n + a + b;
    double v;
    if (n == 1)
      v = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b) * (2.0 + a + b) * (3.0 + a + b));
    else
      v = 4.0 * n * (n + a) * (n + b) * (n + a + b) / (s * s * (s + 1.0) * (s - 1.0));
    off(n - 1) = std::sqrt(v);
  }

  QuadratureRule rule;
  rule.kind = kind;
  rule.alpha = a;
  rule.beta = b;
  rule.nodes.resize(m);
  rule.weights.resize(m);

  const double mu0 = std::exp((a + b + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) +
                              std::lgamma(b + 1.0) - std::lgamma(a + b + 2.0));
  if (m == 1) {
    rule.nodes[0] = diag(0);
    rule.weights[0] = mu0;
    return rule;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, off.head(m - 1), Eigen::ComputeEigenvectors);
  for (int i = 0; i < m; ++i) {
    rule.nodes[i] = es.eigenvalues()(i);
    const double v0 = es.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v0 * v0;
  }
  polish_rule(rule);
  return rule;
}

}  // namespace

QuadratureRule gauss_legendre(int m) {
  QuadratureRule rule = golub_welsch(0.0, 0.0, m, QuadratureKind::legendre);
  // Enforce exact reflection symmetry.
  for (int i = 0; i < m / 2; ++i) {
    const int j = m - 1 - i;
    const double x = 0.5 * (rule.nodes[j] - rule.nodes[i]);
    const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
    rule.nodes[i] = -x;
    rule.nodes[j] = x;
    rule.weights[i] = rule.weights[j] = w;
  }
  if (m % 2 == 1) rule.nodes[m / 2] = 0.0;
  return rule;
}

QuadratureRule gauss_jacobi(double alpha, double beta, int m) {
  return golub_welsch(alpha, beta, m, QuadratureKind::jacobi);
}

QuadratureRule gauss_legendre_on(double a, double b, int m) {
  QuadratureRule rule = gauss_legendre(m);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  for (int i = 0; i < m; ++i) {
    rule.nodes[i] = mid + half * rule.nodes[i];
    rule.weights[i] *= half;
  }
  return rule;
}

}  // namespace isq
