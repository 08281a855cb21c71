#include "isqeig/mortar_sem.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

using namespace isq;
using oracle::kPi;

namespace {

const MsemResult& square_reference() {
  static const MsemResult r = solve_msem(MortarMesh(square_reference_config(0.5)), 8);
  return r;
}

// Stiffness entry of two functions on the mapped element from linear triangles on an
// n x n reference grid pushed through the map.
double p1_stiffness(const GordonHallMap& m, const std::function<double(double, double)>& u,
                    const std::function<double(double, double)>& v, int n) {
  std::vector<Eigen::Vector2d> X((n + 1) * (n + 1));
  std::vector<double> U(X.size()), V(X.size());
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      const double xi = -1.0 + 2.0 * i / n, eta = -1.0 + 2.0 * j / n;
      const int id = i * (n + 1) + j;
      X[id] = m.map(xi, eta);
      U[id] = u(xi, eta);
      V[id] = v(xi, eta);
    }
  double sum = 0.0;
  auto tri = [&](int a, int b, int c) {
    Eigen::Matrix2d E;
    E.col(0) = X[b] - X[a];
    E.col(1) = X[c] - X[a];
    const double area = 0.5 * std::abs(E.determinant());
    const Eigen::Matrix2d Et = E.transpose().inverse();
    const Eigen::Vector2d gu = Et * Eigen::Vector2d(U[b] - U[a], U[c] - U[a]);
    const Eigen::Vector2d gv = Et * Eigen::Vector2d(V[b] - V[a], V[c] - V[a]);
    sum += area * gu.dot(gv);
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int a = i * (n + 1) + j, b = a + n + 1;
      tri(a, b, b + 1);
      tri(a, b + 1, a + 1);
    }
  return sum;
}

}  // namespace

TEST_CASE("Gordon-Hall maps: corner values") {
  const GordonHallMap s(Domain::square, 1, 0.3);
  for (double eta : {-1.0, -0.3, 0.0, 0.6, 1.0}) {
    const Eigen::Vector2d p = s.map(1.0, eta);
    CHECK(p.x() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(p.y() == doctest::Approx(eta).epsilon(1e-15));
  }
  CHECK(s.map(-1.0, 0.0).x() == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(std::abs(s.map(-1.0, 0.0).y()) <= 1e-15);
  const GordonHallMap l(Domain::lshape, 1, 0.5);
  CHECK((l.map(1.0, 1.0) - Eigen::Vector2d(1.0, 1.0)).norm() <= 1e-15);
  CHECK(std::abs(s.jacobian(1.0, 0.0).det) == doctest::Approx(0.35).epsilon(1e-14));
}

TEST_CASE("Gordon-Hall Jacobian against finite differences") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> ud(-1.0, 1.0);
  for (Domain dom : {Domain::square, Domain::lshape})
    for (double R : {0.3, 0.5})
      for (int kappa = 1; kappa <= 4; ++kappa) {
        const GordonHallMap m(dom, kappa, R);
        const double h = 1e-6;
        double sgn = 0.0;
        for (int i = 0; i < 50; ++i) {
          const double xi = ud(gen), eta = ud(gen);
          const Eigen::Vector2d dx = (m.map(xi + h, eta) - m.map(xi - h, eta)) / (2 * h);
          const Eigen::Vector2d de = (m.map(xi, eta + h) - m.map(xi, eta - h)) / (2 * h);
          const Jacobian J = m.jacobian(xi, eta);
          CHECK(std::abs(J.det - (dx.x() * de.y() - dx.y() * de.x())) <= 1e-6);
          if (sgn == 0.0) sgn = J.det;
          CHECK(J.det * sgn > 0.0);
        }
        for (int i = 0; i <= 20; ++i) {
          const double eta = -1.0 + i / 10.0;
          CHECK(std::abs(m.map(-1.0, eta).norm() - R) <= 1e-13);
          for (int j = 0; j <= 20; ++j) CHECK(m.jacobian(-1.0 + j / 10.0, eta).det * sgn > 0.0);
        }
      }
}

TEST_CASE("mapped element areas") {
  const auto [x, w] = oracle::legendre_rule(40);
  for (Domain dom : {Domain::square, Domain::lshape}) {
    const double R = dom == Domain::square ? 0.3 : 0.5;
    double total = 0.0;
    for (int kappa = 1; kappa <= 4; ++kappa) {
      const GordonHallMap m(dom, kappa, R);
      double area = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) area += w[i] * w[j] * std::abs(m.jacobian(x[i], x[j]).det);
      if (dom == Domain::square) CHECK(std::abs(area - (4 - kPi * R * R) / 4) <= 1e-10);
      total += area;
    }
    const double expect = dom == Domain::square ? 4 - kPi * R * R : 3 - 0.75 * kPi * R * R;
    CHECK(std::abs(total - expect) <= 1e-10);
  }
}

TEST_CASE("interface block") {
  for (Domain dom : {Domain::square, Domain::lshape}) {
    std::vector<InnerMode> modes;
    const ElementMatrices a = assemble_interface_block(dom, 0.3, 0.5, 6, 3, &modes);
    const ElementMatrices b = assemble_interface_block(dom, 1.0 - 1e-12, 0.5, 6, 3);
    CHECK((a.A - b.A).norm() <= 1e-14 * a.A.norm());
    CHECK((a.B - 0.09 / ((1 - 1e-12) * (1 - 1e-12)) * b.B).norm() <= 1e-14 * a.B.norm());
    CHECK(modes.size() == (dom == Domain::square ? 7u * 7u : 7u * 3u));

    // Each angular mode against the quadrature oracle, k = 0..K0.
    std::map<std::pair<int, int>, std::vector<int>> groups;
    for (std::size_t i = 0; i < modes.size(); ++i) groups[{modes[i].n, modes[i].trig}].push_back(static_cast<int>(i));
    for (const auto& [key, idx] : groups) {
      const int n = key.first;
      const double gamma = dom == Domain::square ? 1.0 : 2.0 / 3.0;
      const double beta = std::sqrt(0.25 + gamma * gamma * n * n);
      const double norm = dom == Domain::square ? (n == 0 ? 2 * kPi : kPi) : 0.75 * kPi;
      const auto [A, B] = oracle::radial_gram(true, beta, 2, 6, norm, 0);
      for (std::size_t i = 0; i < idx.size(); ++i) {
        CHECK(modes[idx[i]].k == static_cast<int>(i));
        for (std::size_t j = 0; j < idx.size(); ++j) {
          CHECK(std::abs(a.A(idx[i], idx[j]) - A(i, j)) <= 1e-12 * A.norm());
          CHECK(std::abs(a.B(idx[i], idx[j]) - 0.09 * B(i, j)) <= 1e-12 * B.norm());
        }
      }
    }
  }
  // k = 0, n = 0 in closed form: 2 pi beta and 2 pi / (2 beta + 2)
  std::vector<InnerMode> modes;
  const ElementMatrices e = assemble_interface_block(Domain::square, 0.5, 0.5, 3, 0, &modes);
  CHECK(modes[0].k == 0);
  CHECK(e.A(0, 0) == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(e.B(0, 0) == doctest::Approx(0.25 * 2 * kPi / 3).epsilon(1e-14));
  CHECK_THROWS(assemble_interface_block(Domain::square, 1.2, 0.5, 3, 0));
  CHECK_THROWS(assemble_interface_block(Domain::lshape, 0.5, 0.5, 3, 0));
}

TEST_CASE("quad elements") {
  const ElementMatrices e1 = assemble_quad_element(GordonHallMap(Domain::square, 1, 0.3), 0.5, 6, 7, 30);
  CHECK((e1.A - e1.A.transpose()).norm() <= 1e-14 * e1.A.norm());
  CHECK(Eigen::LLT<Eigen::MatrixXd>(e1.B).info() == Eigen::Success);
  CHECK(Eigen::LLT<Eigen::MatrixXd>(e1.A).info() == Eigen::Success);
  for (int kappa = 2; kappa <= 4; ++kappa) {
    const ElementMatrices ek = assemble_quad_element(GordonHallMap(Domain::square, kappa, 0.3), 0.5, 6, 7, 30);
    CHECK((ek.A - e1.A).norm() <= 1e-12 * e1.A.norm());
    CHECK((ek.B - e1.B).norm() <= 1e-12 * e1.B.norm());
  }
  int q = 0;
  const ElementMatrices chk = assemble_quad_element_checked(GordonHallMap(Domain::square, 1, 0.3), 0.5, 6, 7, 12, &q);
  CHECK(q >= 12);
  CHECK((chk.A - e1.A).norm() <= 1e-10 * e1.A.norm());
  CHECK_THROWS(assemble_quad_element(GordonHallMap(Domain::square, 1, 0.3), 0.5, 0, 3, 10));
}

TEST_CASE("hat-mode stiffness against linear finite elements") {
  for (Domain dom : {Domain::square, Domain::lshape}) {
    const GordonHallMap m(dom, 1, dom == Domain::square ? 0.3 : 0.5);
    const ElementMatrices e = assemble_quad_element(m, 0.0, 3, 3, 30);
    auto h0 = [](double xi, double eta) { return 0.25 * (1 - xi) * (1 + eta); };
    auto h1 = [](double xi, double eta) { return 0.25 * (1 - xi) * (1 - eta); };
    const double a00 = p1_stiffness(m, h0, h0, 400), a01 = p1_stiffness(m, h0, h1, 400);
    CHECK(std::abs(e.A(0, 0) - a00) <= 1e-4 * std::abs(a00));
    CHECK(std::abs(e.A(0, 1) - a01) <= 1e-4 * std::abs(a00));
  }
}

TEST_CASE("mortar constraint rows") {
  const MortarMesh mesh(square_reference_config(0.5));
  const Eigen::MatrixXd C = assemble_mortar_constraints(mesh);
  CHECK(C.rows() == 21);
  CHECK(C.cols() == mesh.total_dofs());
  const auto& modes = mesh.inner_modes();
  int constant = -1;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    if (modes[i].k >= 1) CHECK(C.col(static_cast<Eigen::Index>(i)).norm() == 0.0);
    if (modes[i].k == 0 && modes[i].n == 0) constant = static_cast<int>(i);
  }
  REQUIRE(constant >= 0);
  Eigen::Index row = 0;
  C.col(constant).cwiseAbs().maxCoeff(&row);
  CHECK(std::abs(C(row, constant)) == doctest::Approx(2 * kPi * 0.3).epsilon(1e-13));
  CHECK(C.col(constant).norm() == doctest::Approx(2 * kPi * 0.3).epsilon(1e-13));

  // constant one on the circle from both sides
  Eigen::VectorXd u = Eigen::VectorXd::Zero(C.cols());
  u(constant) = 1.0;
  for (int kappa = 1; kappa <= 4; ++kappa)
    for (int b : {0, 1}) u(mesh.quad_dof(kappa, 0, b)) = 1.0;
  CHECK((C * u).norm() <= 1e-10 * u.norm());
}

TEST_CASE("functions with zero trace on the circle satisfy the constraints") {
  std::mt19937_64 gen(11);
  std::normal_distribution<double> nd;
  for (Domain dom : {Domain::square, Domain::lshape}) {
    const MortarMesh mesh(msem_sweep_config(dom, 0.5, dom == Domain::square ? 0.3 : 0.5, 5));
    const Eigen::MatrixXd C = assemble_mortar_constraints(mesh);
    Eigen::VectorXd u = Eigen::VectorXd::Zero(mesh.total_dofs());
    for (int i = 0; i < mesh.inner_dofs(); ++i)
      if (mesh.inner_modes()[i].k >= 1) u(i) = nd(gen);
    for (int kappa = 1; kappa <= 4; ++kappa) {
      const QuadDegrees d = mesh.config().quads[kappa - 1];
      for (int a = 1; a < d.K; ++a)
        for (int b = 0; b <= d.N; ++b)
          if (mesh.quad_dof(kappa, a, b) >= 0) u(mesh.quad_dof(kappa, a, b)) = nd(gen);
    }
    CHECK((C * u).norm() <= 1e-10 * u.norm());
  }
}

TEST_CASE("reference degree counts") {
  CHECK(MortarMesh(square_reference_config(0.5)).total_dofs() == 1539);
  CHECK(MortarMesh(lshape_reference_config()).total_dofs() == 1152);
  CHECK(square_reference().columns == 1539);
  CHECK(square_reference().constraint_rank == 21);
  CHECK(square_reference().dof == 1518);
  const MsemResult l = solve_msem(MortarMesh(lshape_reference_config()), 10);
  CHECK(l.constraint_rank == 17);
  const std::vector<double> ref = msem_reference(Domain::lshape, 0.0);
  for (int i = 0; i < 10; ++i) CHECK(std::abs(l.spectrum[i] - ref[i]) <= 1e-7);
  CHECK(std::abs(l.spectrum[2] - 2 * kPi * kPi) <= 1e-9);
}

TEST_CASE("square spectra") {
  const std::vector<double> ref = msem_reference(Domain::square, 0.5);
  for (int i = 0; i < 8; ++i) CHECK(std::abs(square_reference().spectrum[i] - ref[i]) <= 1e-8);
  const auto groups = square_reference().spectrum.groups();
  REQUIRE(groups.size() >= 6);
  CHECK(groups[1].multiplicity == 2);
  CHECK(groups[5].multiplicity == 2);
  CHECK(groups[0].multiplicity == 1);

  const MsemResult lap = solve_msem(MortarMesh(square_reference_config(0.0)), 6);
  const std::vector<double> exact = msem_reference(Domain::square, 0.0);
  CHECK(std::abs(lap.spectrum[0] - kPi * kPi / 2) <= 1e-9);
  for (int i = 0; i < 6; ++i) CHECK(std::abs(lap.spectrum[i] - exact[i]) <= 1e-8);
  CHECK(msem_reference(Domain::lshape, 0.5).empty());
}

TEST_CASE("interface radius does not matter once converged") {
  MortarConfig cfg = square_reference_config(0.5);
  cfg.R = 0.4;
  const MsemResult r = solve_msem(MortarMesh(cfg), 6);
  for (int i = 0; i < 6; ++i) CHECK(std::abs(r.spectrum[i] - square_reference().spectrum[i]) <= 1e-7);
}

TEST_CASE("quadrature order is converged") {
  MortarConfig cfg = msem_sweep_config(Domain::square, 0.5, 0.3, 6);
  cfg.quad_order = 28;
  const MsemResult a = solve_msem(MortarMesh(cfg), 6);
  cfg.quad_order = 56;
  const MsemResult b = solve_msem(MortarMesh(cfg), 6);
  CHECK(a.quad_order == 28);
  for (int i = 0; i < 6; ++i) CHECK(std::abs(a.spectrum[i] - b.spectrum[i]) <= 1e-10);
}

// N0 is left out: it also sizes the matching test space.
TEST_CASE("enlarging degrees never raises eigenvalues") {
  for (Domain dom : {Domain::square, Domain::lshape}) {
    const MortarConfig base = msem_sweep_config(dom, 0.5, dom == Domain::square ? 0.3 : 0.5, 4);
    const MsemResult r0 = solve_msem(MortarMesh(base), 4);
    std::vector<MortarConfig> bigger(4, base);
    bigger[0].K0 += 1;
    for (QuadDegrees& q : bigger[1].quads) q.K += 1;  // shared edges need a common K
    bigger[2].quads[2].N += 1;
    bigger[3].quads[3].N += 2;
    for (const MortarConfig& cfg : bigger) {
      const MsemResult r = solve_msem(MortarMesh(cfg), 4);
      for (int i = 0; i < 4; ++i) CHECK(r.spectrum[i] <= r0.spectrum[i] + 1e-10);
    }
  }
}

TEST_CASE("sweep configurations") {
  const MortarConfig s = msem_sweep_config(Domain::square, 0.5, 0.3, 5);
  CHECK(s.K0 == 5);
  CHECK(s.N0 == 7);
  for (const QuadDegrees& q : s.quads) {
    CHECK(q.K == 9);
    CHECK(q.N == 10);
  }
  const MortarConfig l = msem_sweep_config(Domain::lshape, 0.0, 0.5, 5);
  CHECK(l.quads[0].N == 5);
  CHECK(l.quads[1].N == 10);
  CHECK_THROWS(msem_sweep_config(Domain::square, 0.5, 0.3, 1));
}
