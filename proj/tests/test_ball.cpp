#include "isqeig/ball_solver.hpp"
#include "isqeig/radial.hpp"
#include "isqeig/specfun.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace isq;
using oracle::kPi;

namespace {

double max_outside_band(const Eigen::MatrixXd& M, int band) {
  double m = 0.0;
  for (int i = 0; i < M.rows(); ++i)
    for (int j = 0; j < M.cols(); ++j)
      if (std::abs(i - j) > band) m = std::max(m, std::abs(M(i, j)));
  return m / M.norm();
}

}  // namespace

TEST_CASE("beta and harmonic dimensions") {
  CHECK(beta(0, 0.5, 2) == 0.5);
  CHECK(beta(1, 0.0, 3) == 1.5);
  CHECK(beta(2, 2.0 / 3.0, 2) == doctest::Approx(std::sqrt(40.0) / 3.0).epsilon(1e-15));
  for (int d = 2; d <= 5; ++d) CHECK(harmonic_dim(0, d) == 1);
  CHECK(harmonic_dim(3, 2) == 2);
  CHECK(harmonic_dim(2, 3) == 5);
  CHECK(harmonic_dim(2, 4) == 9);
  CHECK(sphere_area(2) == doctest::Approx(2 * kPi));
  CHECK(sphere_area(3) == doctest::Approx(4 * kPi));
}

TEST_CASE("closed-form entries") {
  CHECK(assemble_method1(0, 0.5, 2, 1).A(0, 0) == doctest::Approx(6 * kPi).epsilon(1e-15));
  CHECK(assemble_method2(0, 0.5, 2, 1).A(0, 0) == doctest::Approx(10 * kPi).epsilon(1e-15));
  // Corrected mass diagonal, half the printed value (checked by the quadrature oracle below).
  CHECK(assemble_method2(1, 0.0, 3, 1).B(0, 0) == doctest::Approx(2 * kPi * (1 / 4.5 + 1 / 2.5)).epsilon(1e-14));
  const RadialMode m = assemble_method2(2, 0.5, 3, 4);
  CHECK(m.multiplicity == 5);
  CHECK(m.beta == doctest::Approx(std::sqrt(0.25 + 6.25)));
  CHECK(m.first_k == 1);
}

TEST_CASE("closed forms match the quadrature oracle") {
  for (RadialBasis basis : {RadialBasis::Q, RadialBasis::P})
    for (double b : {0.4, 0.5, std::sqrt(2.0) / 2, 1.5, 2.3, 3.0})
      for (int d : {2, 3}) {
        if (d == 3 && b < 0.5) continue;
        const int K = 10;
        const auto [A, B] = oracle::radial_gram(basis == RadialBasis::P, b, d, K, d == 2 ? 2 * kPi : 4 * kPi);
        const RadialPair cf = radial_closed_form(basis, b, d, 1, K, d == 2 ? 2 * kPi : 4 * kPi);
        CAPTURE(b);
        CAPTURE(d);
        CHECK((cf.A.dense() - A).cwiseAbs().maxCoeff() <= 1e-12 * A.norm());
        CHECK((cf.B.dense() - B).cwiseAbs().maxCoeff() <= 1e-12 * B.norm());
        CHECK(max_outside_band(A, 0) <= 1e-12);
        CHECK(max_outside_band(B, basis == RadialBasis::Q ? 2 : 1) <= 1e-12);
      }
}

TEST_CASE("mode matrices are positive definite Gram matrices") {
  for (Method m : {Method::I, Method::II, Method::classic, Method::poly})
    for (int n = 0; n <= 3; ++n) {
      const RadialMode mode = assemble_mode(m, n, 0.5, 2, 12);
      CHECK(Eigen::LLT<Eigen::MatrixXd>(mode.B.dense()).info() == Eigen::Success);
      CHECK(Eigen::LLT<Eigen::MatrixXd>(mode.A.dense()).info() == Eigen::Success);
    }
}

TEST_CASE("baseline sparsity") {
  for (int d : {2, 3})
    for (double c : {0.0, 0.5})
      for (int n = 0; n <= 2; ++n) {
        const RadialMode cl = assemble_classic(n, c, d, 14);
        const RadialMode po = assemble_poly(n, c, d, 14);
        CHECK(max_outside_band(cl.A.dense(), 1) <= 1e-12);
        CHECK(max_outside_band(cl.B.dense(), 3) <= 1e-12);
        CHECK(max_outside_band(po.A.dense(), 1) <= 1e-12);
        CHECK(max_outside_band(po.B.dense(), 2) <= 1e-12);
      }
}

TEST_CASE("baseline limits") {
  const Spectrum s = solve_mode(assemble_classic(0, 0.0, 3, 40), 1);
  CHECK(std::abs(s[0] - kPi * kPi) <= 1e-10 * kPi * kPi);
  const double j11 = bessel_zero(1.0, 1);
  const Spectrum t = solve_mode(assemble_poly(1, 0.0, 2, 30), 1);
  CHECK(std::abs(t[0] - j11 * j11) <= 1e-10 * j11 * j11);
  CHECK(baseline_first_k(Method::classic, 0, 0.5, 2) == 2);
  CHECK(baseline_first_k(Method::classic, 0, 0.0, 2) == 1);
}

TEST_CASE("solve_ball examples") {
  const Spectrum a = solve_ball({2, 0.5, 16, 3, Method::II}, 3);
  CHECK(std::abs(a[0] - kPi * kPi) <= 1e-12 * kPi * kPi);
  CHECK(a[1] == a[2]);
  CHECK(a.tags()[1].n == 1);
  const Spectrum ref = reference_spectrum(Geometry::ball(3), 2.0 / 3.0, 9);
  const Spectrum b = solve_ball({3, 2.0 / 3.0, 16, 2, Method::II}, 9);
  for (int i = 0; i < 9; ++i) CHECK(std::abs(b[i] - ref[i]) <= 1e-10 * ref[i]);
  CHECK(b.multiplicity_at(8) == 5);
  CHECK_THROWS(solve_ball({2, 0.5, 2, 0, Method::II}, 3));
}

TEST_CASE("methods I and II at K=24 match Bessel references") {
  for (int d : {2, 3})
    for (double c : {0.0, 0.5, 2.0 / 3.0})
      for (Method m : {Method::I, Method::II}) {
        if (d == 2 && c == 0.0) continue;  // beta_0 = 0: no singular mode to speak of
        const Spectrum ref = reference_spectrum(Geometry::ball(d), c, 10);
        const Spectrum got = solve_ball({d, c, 24, 6, m}, 10);
        for (int i = 0; i < 10; ++i) CHECK(std::abs(got[i] - ref[i]) <= 1e-10 * ref[i]);
      }
}

TEST_CASE("disk with c = 0") {
  const Spectrum ref = reference_spectrum(Geometry::ball(2), 0.0, 6);
  for (Method m : {Method::I, Method::II}) {
    const Spectrum got = solve_ball({2, 0.0, 24, 4, m}, 6);
    for (int i = 0; i < 6; ++i) CHECK(std::abs(got[i] - ref[i]) <= 1e-10 * ref[i]);
  }
}

TEST_CASE("Ritz values decrease with K") {
  for (Method m : {Method::I, Method::II, Method::classic, Method::poly}) {
    double prev = 1e300;
    for (int K = 3; K <= 14; ++K) {
      const double v = solve_mode(assemble_mode(m, 1, 0.5, 2, K), 1)[0];
      CHECK(v <= prev * (1 + 1e-12));
      prev = v;
    }
  }
}
