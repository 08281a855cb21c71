#include "isqeig/gordon_hall.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace isq {

namespace {

constexpr double kPi = std::numbers::pi;
using cplx = std::complex<double>;

cplx turn(int kappa) {
  // i^{kappa-1}
  static const cplx powers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return powers[(kappa - 1) % 4];
}

bool uses_f(Domain d, int kappa) { return d == Domain::lshape && (kappa == 1 || kappa == 4); }

}  // namespace

const char* domain_name(Domain d) { return d == Domain::square ? "square" : "lshape"; }

GordonHallMap::GordonHallMap(Domain domain, int kappa, double R) : domain_(domain), kappa_(kappa), R_(R) {
  if (kappa < 1 || kappa > 4) throw std::invalid_argument("GordonHallMap: kappa must be 1..4");
  if (!(R > 0.0 && R < 1.0)) throw std::invalid_argument("GordonHallMap: R must lie in (0,1)");
}

Eigen::Vector2d GordonHallMap::map(double xi, double eta) const {
  const double p = 0.5 * (1.0 + xi), m = 0.5 * (1.0 - xi);
  if (uses_f(domain_, kappa_)) {
    const double phi = kPi * (eta + 1.0) / 8.0;
    const double h = 0.5 * (1.0 + eta);
    if (kappa_ == 1) return {p + m * R_ * std::cos(phi), p * h + m * R_ * std::sin(phi)};
    return {-p * h - m * R_ * std::sin(phi), -p - m * R_ * std::cos(phi)};
  }
  const cplx g = p * cplx(1.0, eta) + m * R_ * std::polar(1.0, kPi * eta / 4.0);
  const cplx w = turn(kappa_) * g;
  return {w.real(), w.imag()};
}

Jacobian GordonHallMap::jacobian(double xi, double eta) const {
  const double p = 0.5 * (1.0 + xi), m = 0.5 * (1.0 - xi);
  double xx, yx, xe, ye;  // x_xi, y_xi, x_eta, y_eta
  if (uses_f(domain_, kappa_)) {
    const double phi = kPi * (eta + 1.0) / 8.0;
    const double dphi = kPi / 8.0;
    const double c = std::cos(phi), s = std::sin(phi);
    const double h = 0.5 * (1.0 + eta);
    if (kappa_ == 1) {
      xx = 0.5 - 0.5 * R_ * c;
      yx = 0.5 * h - 0.5 * R_ * s;
      xe = -m * R_ * s * dphi;
      ye = 0.5 * p + m * R_ * c * dphi;
    } else {
      xx = -0.5 * h + 0.5 * R_ * s;
      yx = -0.5 + 0.5 * R_ * c;
      xe = -0.5 * p - m * R_ * c * dphi;
      ye = m * R_ * s * dphi;
    }
  } else {
    const cplx e = std::polar(1.0, kPi * eta / 4.0);
    const cplx t = turn(kappa_);
    const cplx gx = t * (0.5 * cplx(1.0, eta) - 0.5 * R_ * e);
    const cplx ge = t * (p * cplx(0.0, 1.0) + m * R_ * cplx(0.0, kPi / 4.0) * e);
    xx = gx.real();
    yx = gx.imag();
    xe = ge.real();
    ye = ge.imag();
  }
  Jacobian out;
  out.J << xx, yx, xe, ye;
  out.det = xx * ye - yx * xe;
  return out;
}

double GordonHallMap::arc_angle(double eta) const {
  if (uses_f(domain_, kappa_)) {
    const double phi = kPi * (eta + 1.0) / 8.0;
    return kappa_ == 1 ? phi : 1.5 * kPi - phi;
  }
  return (kappa_ - 1) * kPi / 2.0 + kPi * eta / 4.0;
}

double GordonHallMap::arc_angle_rate(double) const {
  if (uses_f(domain_, kappa_)) return kappa_ == 1 ? kPi / 8.0 : -kPi / 8.0;
  return kPi / 4.0;
}

}  // namespace isq
