#pragma once

// Transfinite maps from [-1,1]^2 onto the curvilinear quadrilaterals around the
// circle of radius R. The edge xi = -1 always lies on the circle.

#include <Eigen/Dense>

namespace isq {

enum class Domain { square, lshape };

const char* domain_name(Domain d);

struct Jacobian {
  // Rows are d/dxi and d/deta of (x, y), so grad_ref = J grad_xy.
  Eigen::Matrix2d J;
  double det = 0.0;
};

class GordonHallMap {
public:
  GordonHallMap(Domain domain, int kappa, double R);

  Domain domain() const { return domain_; }
  int kappa() const { return kappa_; }
  double radius() const { return R_; }

  Eigen::Vector2d map(double xi, double eta) const;
  Jacobian jacobian(double xi, double eta) const;

  /// Polar angle of T(-1, eta) and its derivative in eta.
  double arc_angle(double eta) const;
  double arc_angle_rate(double eta) const;

private:
  Domain domain_;
  int kappa_;
  double R_;
};

}  // namespace isq
