#include "isqeig/validate.hpp"

#include "isqeig/ball_solver.hpp"
#include "isqeig/eiglin.hpp"
#include "isqeig/gordon_hall.hpp"
#include "isqeig/mortar_sem.hpp"
#include "isqeig/orthopoly.hpp"
#include "isqeig/radial.hpp"
#include "isqeig/sector_solver.hpp"
#include "isqeig/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>

namespace isq {

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

const std::vector<std::string>& validation_modules() {
  static const std::vector<std::string> names{"orthopoly", "specfun", "eiglin", "ball", "sector", "mortar"};
  return names;
}

namespace {

constexpr double kPi = std::numbers::pi;

// Draws are made in a fixed order per suite, so results depend on the seed only.
class Sampler {
public:
  explicit Sampler(std::uint64_t seed) : gen_(seed) {}
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(gen_); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(gen_); }

private:
  std::mt19937_64 gen_;
};

struct Suite {
  std::string module;
  std::vector<CheckResult>* out;
  void record(const std::string& name, double value, double tol) {
    out->push_back({module, name, value, tol, std::isfinite(value) && value <= tol});
  }
};

double max_rel(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const double scale = std::max(1e-300, b.cwiseAbs().maxCoeff());
  return (a - b).cwiseAbs().maxCoeff() / scale;
}

// ---- orthopoly ----

void orthopoly_suite(Suite& s, Sampler& rng) {
  double ortho = 0.0, sym = 0.0, deriv = 0.0, endpoint = 0.0;
  for (int trial = 0; trial < 6; ++trial) {
    const double a1 = rng.uniform(-0.9, 3.0), a2 = rng.uniform(-0.9, 3.0);
    const int nmax = rng.integer(5, 24);
    const JacobiParam p(a1, a2);
    const QuadratureRule rule = gauss_jacobi(a1, a2, nmax + 2);
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(nmax + 1, nmax + 1);
    for (int q = 0; q < rule.size(); ++q) {
      const std::vector<double> v = jacobi_eval_all(p, nmax, rule.nodes[q]);
      for (int i = 0; i <= nmax; ++i)
        for (int j = 0; j <= nmax; ++j) G(i, j) += rule.weights[q] * v[i] * v[j];
    }
    for (int i = 0; i <= nmax; ++i)
      for (int j = 0; j <= nmax; ++j) {
        const double expect = i == j ? jacobi_norm(p, i) : 0.0;
        ortho = std::max(ortho, std::abs(G(i, j) - expect) / std::sqrt(jacobi_norm(p, i) * jacobi_norm(p, j)));
      }

    const double z = rng.uniform(-1.0, 1.0);
    const JacobiParam pr(a2, a1);
    const JacobiParam gen(-1.0, a2);
    for (int n = 0; n <= nmax; ++n) {
      const double lhs = jacobi_eval(p, n, -z);
      const double rhs = (n % 2 ? -1.0 : 1.0) * jacobi_eval(pr, n, z);
      sym = std::max(sym, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
      if (n >= 1) {
        const double h = 1e-6;
        const double fd = (jacobi_eval(p, n, z + h) - jacobi_eval(p, n, z - h)) / (2.0 * h);
        const double d = jacobi_derivative(p, n, z);
        deriv = std::max(deriv, std::abs(fd - d) / std::max(1.0, std::abs(d)));
        endpoint = std::max(endpoint, std::abs(jacobi_eval(gen, n, 1.0)) / std::max(1.0, std::abs(jacobi_eval(gen, n, -1.0))));
      }
    }
  }
  s.record("gauss-jacobi orthogonality", ortho, 1e-12);
  s.record("reflection symmetry", sym, 1e-12);
  s.record("derivative vs central difference", deriv, 1e-6);
  s.record("J^{-1,b} vanishes at z=1", endpoint, 1e-13);

  // Exactness of Gauss-Legendre on monomials.
  double exact = 0.0;
  const QuadratureRule gl = gauss_legendre(12);
  for (int p = 0; p <= 23; ++p) {
    double sum = 0.0;
    for (int q = 0; q < gl.size(); ++q) sum += gl.weights[q] * std::pow(gl.nodes[q], p);
    const double expect = p % 2 ? 0.0 : 2.0 / (p + 1);
    exact = std::max(exact, std::abs(sum - expect));
  }
  s.record("gauss-legendre monomial exactness", exact, 1e-13);
}

// ---- specfun ----

void specfun_suite(Suite& s, Sampler& rng) {
  double ident = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double x = i < 100 ? rng.uniform(0.05, 50.0) : rng.uniform(50.0, 1000.0);
    const double f = std::sqrt(2.0 / (kPi * x));
    ident = std::max(ident, std::abs(bessel_j(0.5, x) - f * std::sin(x)));
    ident = std::max(ident, std::abs(bessel_j(1.5, x) - f * (std::sin(x) / x - std::cos(x))));
  }
  s.record("J_{1/2}, J_{3/2} closed forms", ident, 1e-12);

  double resid = 0.0, interlace = 0.0;
  for (int i = 0; i < 12; ++i) {
    const double nu = rng.uniform(0.0, 50.0);
    const int k = rng.integer(1, 30);
    const double j = bessel_zero(nu, k);
    const BesselValue v = bessel_j_with_derivative(nu, j);
    resid = std::max(resid, std::abs(v.j / v.dj) / j);
    const double jn = bessel_zero(nu + 1.0, k), jk = bessel_zero(nu, k + 1);
    if (!(j < jn && jn < jk)) interlace = 1.0;
  }
  s.record("zero residual |J/J'| / j", resid, 1e-13);
  s.record("zero interlacing", interlace, 0.0);

  double pi_zeros = 0.0;
  const std::vector<double> z = bessel_zeros(0.5, 20);
  for (int k = 1; k <= 20; ++k) pi_zeros = std::max(pi_zeros, std::abs(z[k - 1] - k * kPi) / (k * kPi));
  s.record("zeros of J_{1/2} are k pi", pi_zeros, 1e-14);

  const Spectrum disk = reference_spectrum(Geometry::ball(2), 0.5, 1);
  s.record("disk c=1/2 lambda_1 = pi^2", std::abs(disk[0] - kPi * kPi) / (kPi * kPi), 1e-14);

  double gam = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double x = rng.uniform(0.5, 10.0);
    gam = std::max(gam, std::abs(lanczos_gamma(x + 1.0) - x * lanczos_gamma(x)) / lanczos_gamma(x + 1.0));
  }
  s.record("Gamma(x+1) = x Gamma(x)", gam, 1e-13);
}

// ---- eiglin ----

// Count of eigenvalues below sigma from the inertia of A - sigma B.
int count_below(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, double sigma) {
  Eigen::LDLT<Eigen::MatrixXd> ldlt(A - sigma * B);
  const Eigen::VectorXd d = ldlt.vectorD();
  return static_cast<int>((d.array() < 0.0).count());
}

// 1-D Dirichlet Laplacian on (0,2) as two elements of polynomial degree p, each with
// its own interface value. Basis on element e: hat at the interface plus bubbles.
struct Toy {
  Eigen::MatrixXd A, B, C;              // two-element system, one coupling row
  Eigen::MatrixXd A_conf, B_conf;       // shared interface dof
};

Toy build_toy(int p) {
  const QuadratureRule gl = gauss_legendre(p + 4);
  // Local basis on [-1,1]: phi_0 = hat equal to 1 at the interface end, phi_j = (1-x^2) x^{j-1}.
  auto local = [&](int e, int j, double x, double& v, double& dv) {
    const double t = e == 0 ? x : -x;  // interface at x = +1 for the left element, -1 for the right
    const double sgn = e == 0 ? 1.0 : -1.0;
    if (j == 0) {
      v = 0.5 * (1.0 + t);
      dv = 0.5 * sgn;
    } else {
      v = (1.0 - x * x) * std::pow(x, j - 1);
      dv = -2.0 * x * std::pow(x, j - 1) + (j >= 2 ? (1.0 - x * x) * (j - 1) * std::pow(x, j - 2) : 0.0);
    }
  };
  const int nl = p;  // hat + (p-1) bubbles
  Eigen::MatrixXd Ae = Eigen::MatrixXd::Zero(nl, nl), Be = Ae;
  std::array<Eigen::MatrixXd, 2> Aloc{Ae, Ae}, Bloc{Be, Be};
  for (int e = 0; e < 2; ++e)
    for (int q = 0; q < gl.size(); ++q) {
      std::vector<double> v(nl), dv(nl);
      for (int j = 0; j < nl; ++j) local(e, j, gl.nodes[q], v[j], dv[j]);
      // element length 1, Jacobian 1/2
      for (int i = 0; i < nl; ++i)
        for (int j = 0; j < nl; ++j) {
          Aloc[e](i, j) += gl.weights[q] * dv[i] * dv[j] * 2.0;
          Bloc[e](i, j) += gl.weights[q] * v[i] * v[j] * 0.5;
        }
    }
  Toy t;
  t.A = Eigen::MatrixXd::Zero(2 * nl, 2 * nl);
  t.B = t.A;
  t.A.topLeftCorner(nl, nl) = Aloc[0];
  t.A.bottomRightCorner(nl, nl) = Aloc[1];
  t.B.topLeftCorner(nl, nl) = Bloc[0];
  t.B.bottomRightCorner(nl, nl) = Bloc[1];
  t.C = Eigen::MatrixXd::Zero(1, 2 * nl);
  t.C(0, 0) = 1.0;
  t.C(0, nl) = -1.0;
  // Conforming: merge dof nl into dof 0.
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(2 * nl, 2 * nl - 1);
  for (int i = 0; i < nl; ++i) P(i, i) = 1.0;
  P(nl, 0) = 1.0;
  for (int i = 1; i < nl; ++i) P(nl + i, nl - 1 + i) = 1.0;
  t.A_conf = P.transpose() * t.A * P;
  t.B_conf = P.transpose() * t.B * P;
  return t;
}

void eiglin_suite(Suite& s, Sampler& rng) {
  double resid = 0.0;
  int count_err = 0;
  for (int trial = 0; trial < 4; ++trial) {
    const int n = rng.integer(6, 20);
    Eigen::MatrixXd X(n, n), Y(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        X(i, j) = rng.uniform(-1.0, 1.0);
        Y(i, j) = rng.uniform(-1.0, 1.0);
      }
    const Eigen::MatrixXd A = X * X.transpose() + n * Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd B = Y * Y.transpose() + Eigen::MatrixXd::Identity(n, n);
    const int want = std::min(n, 5);
    const GevpResult r = solve_gevp(A, B, want, true);
    for (int i = 0; i < want; ++i) {
      const Eigen::VectorXd x = r.vectors.col(i);
      const double rq = x.dot(A * x) / x.dot(B * x);
      resid = std::max(resid, std::abs(rq - r.spectrum[i]) / r.spectrum[i]);
      resid = std::max(resid, (A * x - r.spectrum[i] * B * x).norm() / (A.norm() * x.norm()));
    }
    for (int i = 0; i + 1 < want; ++i) {
      const double mid = 0.5 * (r.spectrum[i] + r.spectrum[i + 1]);
      if (r.spectrum[i + 1] - r.spectrum[i] > 1e-8 * r.spectrum[i + 1] && count_below(A, B, mid) != i + 1)
        ++count_err;
    }
  }
  s.record("random pencil Rayleigh quotient and residual", resid, 1e-10);
  s.record("eigenvalue counts from inertia", count_err, 0.0);

  const Toy toy = build_toy(8);
  const ConstrainedResult cr = reduce_constrained_gevp(toy.A, toy.B, toy.C, 6);
  const GevpResult conf = solve_gevp(toy.A_conf, toy.B_conf, 6);
  double diff = 0.0;
  for (int i = 0; i < 6; ++i) diff = std::max(diff, std::abs(cr.gevp.spectrum[i] - conf.spectrum[i]) / conf.spectrum[i]);
  s.record("two-element toy: constrained = conforming", diff, 1e-12);
  s.record("two-element toy: lambda_1 = pi^2/4",
           std::abs(conf.spectrum[0] - kPi * kPi / 4.0) / (kPi * kPi / 4.0), 1e-8);

  Eigen::MatrixXd C(3, 7);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 7; ++j) C(i, j) = rng.uniform(-1.0, 1.0);
  C.row(2) = C.row(0) - 2.0 * C.row(1);
  const Eigen::MatrixXd Z = nullspace(C);
  double ns = (C * Z).cwiseAbs().maxCoeff();
  ns = std::max(ns, (Z.transpose() * Z - Eigen::MatrixXd::Identity(Z.cols(), Z.cols())).cwiseAbs().maxCoeff());
  if (Z.cols() != 5) ns = 1.0;
  s.record("null space of a rank-2 3x7 matrix", ns, 1e-13);
}

// ---- radial closed forms vs quadrature ----

// Quadrature matrices of the radial basis for the form with prefactor `pref`.
RadialPair radial_quadrature(RadialBasis basis, double beta, int d, int kmin, int K, double pref) {
  const int m = 2 * K + 8;
  const QuadratureRule rule = gauss_jacobi(0.0, 2.0 * beta - 1.0, m);
  const double wscale = std::pow(2.0, -2.0 * beta);
  const double q = beta * beta - (0.5 * d - 1.0) * (0.5 * d - 1.0);
  const int size = K - kmin + 1;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(size, size), B = A;
  for (int i = 0; i < m; ++i) {
    const double r = 0.5 * (1.0 + rule.nodes[i]);
    const double w = rule.weights[i] * wscale / std::pow(r, 2.0 * beta - 1.0);
    std::vector<RadialValue> f(size);
    for (int k = kmin; k <= K; ++k) f[k - kmin] = radial_basis(basis, beta, d, k, r);
    for (int a = 0; a < size; ++a)
      for (int b = 0; b < size; ++b) {
        B(a, b) += w * f[a].v * f[b].v * std::pow(r, d - 1);
        A(a, b) += w * (f[a].dv * f[b].dv * std::pow(r, d - 1) + q * f[a].v * f[b].v * std::pow(r, d - 3));
      }
  }
  RadialPair out{SymBandedMatrix(size, size - 1), SymBandedMatrix(size, size - 1)};
  for (int a = 0; a < size; ++a)
    for (int b = a; b < size; ++b) {
      out.A.set(a, b, pref * A(a, b));
      out.B.set(a, b, pref * B(a, b));
    }
  return out;
}

void ball_suite(Suite& s, Sampler& rng) {
  double cf = 0.0;
  for (int trial = 0; trial < 8; ++trial) {
    const RadialBasis basis = trial % 2 ? RadialBasis::P : RadialBasis::Q;
    const int d = 2 + (trial / 2) % 2;
    const double beta = rng.uniform(0.4, 3.0);
    const int K = rng.integer(2, 20);
    const int kmin = trial >= 4 ? 0 : 1;
    const RadialPair closed = radial_closed_form(basis, beta, d, kmin, K, 1.0);
    const RadialPair quad = radial_quadrature(basis, beta, d, kmin, K, 1.0);
    cf = std::max(cf, max_rel(closed.A.dense(), quad.A.dense()));
    cf = std::max(cf, max_rel(closed.B.dense(), quad.B.dense()));
  }
  s.record("methods I/II closed form vs quadrature", cf, 1e-12);

  double disk = 0.0;
  const Spectrum ref = reference_spectrum(Geometry::ball(2), 0.5, 5);
  const Spectrum got = solve_ball(BallProblem{2, 0.5, 16, 3, Method::II}, 5);
  for (int i = 0; i < 5; ++i) disk = std::max(disk, std::abs(got[i] - ref[i]) / ref[i]);
  s.record("disk method II K=16 vs Bessel zeros", disk, 1e-11);

  double ball = 0.0;
  const Spectrum ref3 = reference_spectrum(Geometry::ball(3), 2.0 / 3.0, 5);
  const Spectrum got3 = solve_ball(BallProblem{3, 2.0 / 3.0, 16, 3, Method::I}, 5);
  for (int i = 0; i < 5; ++i) ball = std::max(ball, std::abs(got3[i] - ref3[i]) / ref3[i]);
  s.record("ball3 method I K=16 vs Bessel zeros", ball, 1e-9);

  double dims = 0.0;
  for (int n = 0; n < 8; ++n) dims += std::abs(harmonic_dim(n, 3) - (2 * n + 1)) + std::abs(harmonic_dim(n, 2) - (n ? 2 : 1));
  s.record("spherical harmonic dimensions", dims, 0.0);
}

void sector_suite(Suite& s, Sampler& rng) {
  double cf = 0.0;
  for (int trial = 0; trial < 6; ++trial) {
    const double gamma = trial % 3 == 0 ? 0.5 : (trial % 3 == 1 ? 2.0 / 3.0 : 1.0);
    const int n = rng.integer(1, 2);
    const double c = rng.uniform(0.0, 1.0);
    const int K = rng.integer(2, 20);
    const Method m = trial % 2 ? Method::II : Method::I;
    const double b = beta_sector(n, c, gamma);
    const RadialMode mode = assemble_sector(m, n, c, gamma, K);
    const RadialPair quad = radial_quadrature(m == Method::I ? RadialBasis::Q : RadialBasis::P, b, 2, 1, K,
                                              kPi / (2.0 * gamma));
    cf = std::max(cf, max_rel(mode.A.dense(), quad.A.dense()));
    cf = std::max(cf, max_rel(mode.B.dense(), quad.B.dense()));
  }
  s.record("sector closed form vs quadrature", cf, 1e-12);

  double err = 0.0;
  for (double gamma : {0.5, 2.0 / 3.0})
    for (Method m : {Method::I, Method::II}) {
      const Spectrum ref = reference_spectrum(Geometry::sector(gamma), 0.5, 3);
      const Spectrum got = solve_sector(SectorProblem{gamma, 0.5, 16, 3, m}, 3);
      for (int i = 0; i < 3; ++i) err = std::max(err, std::abs(got[i] - ref[i]) / ref[i]);
    }
  s.record("sector K=16 vs Bessel zeros", err, 1e-10);
}

// ---- mortar ----

void mortar_suite(Suite& s, Sampler& rng) {
  double fd = 0.0, arc = 0.0, sign = 0.0;
  for (Domain dom : {Domain::square, Domain::lshape}) {
    const double R = dom == Domain::square ? 0.3 : 0.5;
    for (int kappa = 1; kappa <= 4; ++kappa) {
      const GordonHallMap m(dom, kappa, R);
      double first_sign = 0.0;
      for (int i = 0; i < 30; ++i) {
        const double xi = rng.uniform(-0.95, 0.95), eta = rng.uniform(-0.95, 0.95);
        const double h = 1e-6;
        const Eigen::Vector2d dxi = (m.map(xi + h, eta) - m.map(xi - h, eta)) / (2.0 * h);
        const Eigen::Vector2d deta = (m.map(xi, eta + h) - m.map(xi, eta - h)) / (2.0 * h);
        const Jacobian J = m.jacobian(xi, eta);
        fd = std::max(fd, (J.J.row(0).transpose() - dxi).cwiseAbs().maxCoeff());
        fd = std::max(fd, (J.J.row(1).transpose() - deta).cwiseAbs().maxCoeff());
        fd = std::max(fd, std::abs(J.det - J.J.determinant()));
        if (first_sign == 0.0) first_sign = J.det;
        if (!(J.det * first_sign > 0.0)) sign = 1.0;
        arc = std::max(arc, std::abs(m.map(-1.0, eta).norm() - R));
      }
    }
  }
  s.record("Gordon-Hall Jacobian vs central difference", fd, 1e-6);
  s.record("Gordon-Hall edge xi=-1 on the circle", arc, 1e-14);
  s.record("Gordon-Hall det J keeps its sign", sign, 0.0);

  const MortarMesh square(square_reference_config(0.5));
  s.record("square reference DoF count 1539", std::abs(square.total_dofs() - 1539), 0.0);
  const MortarMesh lshape(lshape_reference_config());
  s.record("L-shape reference DoF count 1152", std::abs(lshape.total_dofs() - 1152), 0.0);

  const MortarMesh small(msem_sweep_config(Domain::square, 0.0, 0.3, 6));
  const MsemResult r = solve_msem(small, 1);
  const double exact = kPi * kPi / 2.0;
  s.record("square c=0 lambda_1 = pi^2/2 at sweep scale 6", std::abs(r.spectrum[0] - exact) / exact, 1e-7);
}

}  // namespace

ValidationReport run_validation(const std::string& module, std::uint64_t seed) {
  const auto& names = validation_modules();
  if (!module.empty() && std::find(names.begin(), names.end(), module) == names.end())
    throw std::invalid_argument("validate: unknown module '" + module + "'");
  using Fn = std::function<void(Suite&, Sampler&)>;
  const std::vector<std::pair<std::string, Fn>> suites{
      {"orthopoly", orthopoly_suite}, {"specfun", specfun_suite}, {"eiglin", eiglin_suite},
      {"ball", ball_suite},           {"sector", sector_suite},   {"mortar", mortar_suite}};
  ValidationReport report;
  for (std::size_t i = 0; i < suites.size(); ++i) {
    if (!module.empty() && module != suites[i].first) continue;
    // Each suite gets its own stream so --module runs draw the same samples.
    Sampler rng(seed * 1000003ULL + i);
    Suite s{suites[i].first, &report.checks};
    suites[i].second(s, rng);
  }
  return report;
}

}  // namespace isq
