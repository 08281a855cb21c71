#include "isqeig/radial.hpp"

#include "isqeig/orthopoly.hpp"

#include <cmath>
#include <stdexcept>

namespace isq {

namespace {

double stiffness_q(double b, int d, int k) { return k == 0 ? b - 0.5 * d + 1.0 : 2.0 * k + 2.0 * b; }
double stiffness_p(double b, int d, int k) { return k == 0 ? b - 0.5 * d + 1.0 : 2.0 * (2.0 * k + b); }

double mass_q(double b, int k, int l) {
  if (l < k) std::swap(k, l);
  const int gap = l - k;
  const double s = 2.0 * k + 2.0 * b;
  if (gap == 0) {
    if (k == 0) return 1.0 / (2.0 * (b + 1.0));
    if (k == 1) return 2.0 * (1.0 + b) / ((2.0 + b) * (3.0 + 2.0 * b));
    const double num = (k + b) * ((k - 1.0) * (k + 1.0) + 2.0 * k * b + 4.0 * b * b);
    return num / ((k + b - 1.0) * (k + b + 1.0) * (s - 1.0) * (s + 1.0));
  }
  if (gap == 1) {
    if (k == 0) return -1.0 / (2.0 * b + 3.0);
    return -(2.0 * b - 1.0) * (2.0 * b + 1.0) / ((s - 1.0) * (s + 1.0) * (s + 3.0));
  }
  if (gap == 2) return -(k + 1.0) * (k + 2.0 * b + 1.0) / (2.0 * (k + b + 1.0) * (s + 1.0) * (s + 3.0));
  return 0.0;
}

double mass_p(double b, int k, int l) {
  if (l < k) std::swap(k, l);
  const int gap = l - k;
  if (gap == 0) {
    double v = 1.0 / (2.0 * k + b + 1.0);
    if (k >= 1) v += 1.0 / (2.0 * k + b - 1.0);
    return 0.5 * v;
  }
  if (gap == 1) return -1.0 / (2.0 * (2.0 * k + b + 1.0));
  return 0.0;
}

}  // namespace

RadialPair radial_closed_form(RadialBasis basis, double beta, int d, int kmin, int K,
                              double prefactor) {
  if (kmin != 0 && kmin != 1) throw std::invalid_argument("radial_closed_form: kmin must be 0 or 1");
  if (K < kmin) throw std::invalid_argument("radial_closed_form: K below kmin");
  if (!(beta >= 0.0)) throw std::invalid_argument("radial_closed_form: beta must be >= 0");
  const int n = K - kmin + 1;
  const int band = basis == RadialBasis::Q ? 2 : 1;
  RadialPair out{SymBandedMatrix(n, 0), SymBandedMatrix(n, band)};
  for (int i = 0; i < n; ++i) {
    const int k = kmin + i;
    out.A.set(i, i, prefactor * (basis == RadialBasis::Q ? stiffness_q(beta, d, k)
                                                          : stiffness_p(beta, d, k)));
    for (int j = i; j < n && j <= i + band; ++j) {
      const int l = kmin + j;
      out.B.set(i, j, prefactor * (basis == RadialBasis::Q ? mass_q(beta, k, l) : mass_p(beta, k, l)));
    }
  }
  return out;
}

RadialValue radial_basis(RadialBasis basis, double beta, int d, int k, double r) {
  const double a = basis == RadialBasis::Q ? 2.0 * beta : beta;
  const double scale = (k == 0 && a == 0.0) ? 1.0 : (2.0 * k + a) / (k + a);
  const JacobiParam jp(-1.0, a);
  const double z = basis == RadialBasis::Q ? 2.0 * r - 1.0 : 2.0 * r * r - 1.0;
  const double dz = basis == RadialBasis::Q ? 2.0 : 4.0 * r;
  const double jv = jacobi_eval(jp, k, z);
  // d/dz J_k^{-1,a} = (k+a)/2 J_{k-1}^{0,a+1}
  const double jd = k == 0 ? 0.0 : (k + a) / 2.0 * jacobi_eval(JacobiParam(0.0, a + 1.0), k - 1, z);
  const double p = beta + 1.0 - 0.5 * d;
  const double rp = p == 0.0 ? 1.0 : std::pow(r, p);
  const double drp = p == 0.0 ? 0.0 : p * std::pow(r, p - 1.0);
  return {scale * jv * rp, scale * (jd * dz * rp + jv * drp)};
}

}  // namespace isq
