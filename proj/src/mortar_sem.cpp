#include "isqeig/mortar_sem.hpp"

#include "isqeig/ball_solver.hpp"
#include "isqeig/errors.hpp"
#include "isqeig/orthopoly.hpp"
#include "isqeig/radial.hpp"
#include "isqeig/sector_solver.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace isq {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSectorGamma = 2.0 / 3.0;

double inner_beta(Domain d, int n, double c) {
  return d == Domain::square ? beta(n, c, 2) : beta_sector(n, c, kSectorGamma);
}

// L2 norm squared of the angular factor over the inner block's angular range.
double angular_norm(Domain d, int n) {
  if (d == Domain::lshape) return kPi / (2.0 * kSectorGamma);
  return n == 0 ? 2.0 * kPi : kPi;
}

double angular_value(Domain d, const InnerMode& m, double theta) {
  if (d == Domain::lshape) return std::sin(m.n * kSectorGamma * theta);
  if (m.n == 0) return 1.0;
  return m.trig == 0 ? std::cos(m.n * theta) : std::sin(m.n * theta);
}

std::vector<InnerMode> inner_mode_list(Domain d, int K0, int N0) {
  std::vector<InnerMode> out;
  if (d == Domain::square) {
    for (int n = 0; n <= N0; ++n)
      for (int t = 0; t < (n == 0 ? 1 : 2); ++t)
        for (int k = 0; k <= K0; ++k) out.push_back({n, t, k});
  } else {
    for (int n = 1; n <= N0; ++n)
      for (int k = 0; k <= K0; ++k) out.push_back({n, 1, k});
  }
  return out;
}

// Basis along xi: index 0 is the hat equal to 1 on the circle, index a >= 1 is J_{a+1}^{-1,-1}.
void xi_basis(int K, double xi, std::vector<double>& v, std::vector<double>& dv) {
  v.assign(static_cast<std::size_t>(K), 0.0);
  dv.assign(static_cast<std::size_t>(K), 0.0);
  v[0] = 0.5 * (1.0 - xi);
  dv[0] = -0.5;
  if (K >= 2) {
    const JacobiParam jp(-1.0, -1.0);
    const std::vector<double> j = jacobi_eval_all(jp, K, xi);
    const std::vector<double> dj = jacobi_derivative_all(jp, K, xi);
    for (int a = 1; a < K; ++a) {
      v[a] = j[a + 1];
      dv[a] = dj[a + 1];
    }
  }
}

// Basis along eta: (1+eta)/2, (1-eta)/2, then J_b^{-1,-1} for b >= 2.
void eta_basis(int N, double eta, std::vector<double>& v, std::vector<double>& dv) {
  v.assign(static_cast<std::size_t>(N) + 1, 0.0);
  dv.assign(static_cast<std::size_t>(N) + 1, 0.0);
  v[0] = 0.5 * (1.0 + eta);
  dv[0] = 0.5;
  v[1] = 0.5 * (1.0 - eta);
  dv[1] = -0.5;
  if (N >= 2) {
    const JacobiParam jp(-1.0, -1.0);
    const std::vector<double> j = jacobi_eval_all(jp, N, eta);
    const std::vector<double> dj = jacobi_derivative_all(jp, N, eta);
    for (int b = 2; b <= N; ++b) {
      v[b] = j[b];
      dv[b] = dj[b];
    }
  }
}

int default_order(int K, int N) { return std::max(K, N) + 16; }

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

MortarConfig square_reference_config(double c) {
  MortarConfig cfg;
  cfg.domain = Domain::square;
  cfg.R = 0.3;
  cfg.c = c;
  cfg.K0 = 14;
  cfg.N0 = 10;
  cfg.quads = {QuadDegrees{17, 18}, QuadDegrees{17, 18}, QuadDegrees{17, 18}, QuadDegrees{17, 18}};
  cfg.test = MortarTest::inner;
  return cfg;
}

MortarConfig lshape_reference_config() {
  MortarConfig cfg;
  cfg.domain = Domain::lshape;
  cfg.R = 0.5;
  cfg.c = 0.0;
  cfg.K0 = 20;
  cfg.N0 = 17;
  cfg.quads = {QuadDegrees{15, 9}, QuadDegrees{15, 18}, QuadDegrees{15, 18}, QuadDegrees{15, 9}};
  cfg.test = MortarTest::inner;
  return cfg;
}

MortarConfig msem_sweep_config(Domain domain, double c, double R, int p) {
  if (p < 2) throw std::invalid_argument("msem sweep: scale must be >= 2");
  MortarConfig cfg = domain == Domain::square ? square_reference_config(c) : lshape_reference_config();
  cfg.c = c;
  cfg.R = R;
  cfg.K0 = p;
  cfg.N0 = p + 2;
  for (QuadDegrees& q : cfg.quads) q = QuadDegrees{p + 4, 2 * p};
  if (domain == Domain::lshape) {
    cfg.quads[0].N = p;
    cfg.quads[3].N = p;
  }
  return cfg;
}

std::vector<double> msem_reference(Domain domain, double c) {
  auto expand = [](std::initializer_list<std::pair<double, int>> table) {
    std::vector<double> out;
    for (const auto& [v, m] : table) out.insert(out.end(), m, v);
    return out;
  };
  if (domain == Domain::square) {
    if (c == 0.5)
      return expand({{8.37681498711058, 1}, {13.35313963139164, 2}, {20.33106215893244, 1},
                     {25.42501776089188, 1}, {30.86901223422695, 1}, {32.83995595781530, 2}});
    if (c == 2.0 / 3.0)
      return expand({{9.65231567885163, 1}, {14.0914338712714, 2}, {20.7838715370525, 1},
                     {25.9999831911128, 1}, {32.8581767543383, 1}, {33.3937111616692, 2}});
    if (c == 0.0) {
      std::vector<double> out;
      for (int i = 1; i <= 12; ++i)
        for (int j = 1; j <= 12; ++j) out.push_back(std::numbers::pi * std::numbers::pi / 4.0 * (i * i + j * j));
      std::sort(out.begin(), out.end());
      out.resize(40);
      return out;
    }
    return {};
  }
  if (c == 0.0)
    return {9.639723844021988,  15.197251926454335, 19.739208802178716, 29.521481114144805,
            31.912635957137759, 41.474509890214925, 44.948487781351275, 49.348022005446765,
            49.348022005446765, 56.709609887385042};
  return {};
}

ElementMatrices assemble_interface_block(Domain domain, double R, double c, int K0, int N0,
                                         std::vector<InnerMode>* modes) {
  if (!(R > 0.0 && R < 1.0)) throw std::invalid_argument("interface block: R must lie in (0,1)");
  if (K0 < 1) throw std::invalid_argument("interface block: K0 must be >= 1");
  if (N0 < (domain == Domain::square ? 0 : 1))
    throw std::invalid_argument("interface block: N0 out of range");
  if (!(c >= 0.0)) throw std::invalid_argument("interface block: c must be >= 0");
  const std::vector<InnerMode> list = inner_mode_list(domain, K0, N0);
  const int size = static_cast<int>(list.size());
  ElementMatrices out;
  out.A = Eigen::MatrixXd::Zero(size, size);
  out.B = Eigen::MatrixXd::Zero(size, size);
  out.global.resize(static_cast<std::size_t>(size));
  std::iota(out.global.begin(), out.global.end(), 0);
  for (int start = 0; start < size; start += K0 + 1) {
    const InnerMode& m = list[static_cast<std::size_t>(start)];
    const RadialPair p = radial_closed_form(RadialBasis::P, inner_beta(domain, m.n, c), 2, 0, K0,
                                            angular_norm(domain, m.n));
    out.A.block(start, start, K0 + 1, K0 + 1) = p.A.dense();
    out.B.block(start, start, K0 + 1, K0 + 1) = R * R * p.B.dense();
  }
  if (modes) *modes = list;
  return out;
}

ElementMatrices assemble_quad_element(const GordonHallMap& m, double c, int K, int N, int q) {
  if (K < 1 || N < 1) throw std::invalid_argument("quad element: K and N must be >= 1");
  if (q < 2) throw std::invalid_argument("quad element: quadrature order must be >= 2");
  const int nb = K * (N + 1);
  const QuadratureRule g = gauss_legendre(q);
  const int P = q * q;
  Eigen::MatrixXd U(P, nb), Gx(P, nb), Gy(P, nb);
  Eigen::VectorXd w(P), wr(P);
  std::vector<std::vector<double>> fa(q), dfa(q), gb(q), dgb(q);
  for (int i = 0; i < q; ++i) {
    xi_basis(K, g.nodes[i], fa[i], dfa[i]);
    eta_basis(N, g.nodes[i], gb[i], dgb[i]);
  }
  for (int i = 0; i < q; ++i) {
    for (int j = 0; j < q; ++j) {
      const int p = i * q + j;
      const double xi = g.nodes[i], eta = g.nodes[j];
      const Jacobian jac = m.jacobian(xi, eta);
      const Eigen::Matrix2d Jinv = jac.J.inverse();
      const Eigen::Vector2d xy = m.map(xi, eta);
      const double ad = std::abs(jac.det);
      w(p) = g.weights[i] * g.weights[j] * ad;
      wr(p) = w(p) * c * c / xy.squaredNorm();
      for (int a = 0; a < K; ++a)
        for (int b = 0; b <= N; ++b) {
          const int l = a * (N + 1) + b;
          const double d_xi = dfa[i][a] * gb[j][b];
          const double d_eta = fa[i][a] * dgb[j][b];
          U(p, l) = fa[i][a] * gb[j][b];
          Gx(p, l) = Jinv(0, 0) * d_xi + Jinv(0, 1) * d_eta;
          Gy(p, l) = Jinv(1, 0) * d_xi + Jinv(1, 1) * d_eta;
        }
    }
  }
  ElementMatrices out;
  out.A = Gx.transpose() * w.asDiagonal() * Gx + Gy.transpose() * w.asDiagonal() * Gy +
          U.transpose() * wr.asDiagonal() * U;
  out.B = U.transpose() * w.asDiagonal() * U;
  out.A = 0.5 * (out.A + out.A.transpose()).eval();
  out.B = 0.5 * (out.B + out.B.transpose()).eval();
  out.global.assign(static_cast<std::size_t>(nb), -1);
  return out;
}

ElementMatrices assemble_quad_element_checked(const GordonHallMap& m, double c, int K, int N, int q,
                                              int* q_used) {
  if (q <= 0) q = default_order(K, N);
  ElementMatrices prev = assemble_quad_element(m, c, K, N, q);
  while (2 * q <= kMaxJacobiDegree) {
    ElementMatrices next = assemble_quad_element(m, c, K, N, 2 * q);
    const double da = (next.A - prev.A).cwiseAbs().maxCoeff() / next.A.cwiseAbs().maxCoeff();
    const double db = (next.B - prev.B).cwiseAbs().maxCoeff() / next.B.cwiseAbs().maxCoeff();
    if (da < 1e-11 && db < 1e-11) {
      if (q_used) *q_used = q;
      return prev;
    }
    q *= 2;
    prev = std::move(next);
  }
  throw NumericalError("quad element: quadrature did not stabilize up to order " + std::to_string(q));
}

MortarMesh::MortarMesh(const MortarConfig& config) : config_(config) {
  if (!(config.R > 0.0 && config.R < 1.0)) throw std::invalid_argument("mortar: R must lie in (0,1)");
  if (!(config.c >= 0.0)) throw std::invalid_argument("mortar: c must be >= 0");
  if (config.K0 < 1) throw std::invalid_argument("mortar: K0 must be >= 1");
  if (config.N0 < (config.domain == Domain::square ? 0 : 1))
    throw std::invalid_argument("mortar: N0 out of range");
  for (const QuadDegrees& d : config.quads)
    if (d.K < 1 || d.N < 1) throw std::invalid_argument("mortar: quad degrees must be >= 1");
  for (int k = 1; k < 4; ++k)
    if (config.quads[k].K != config.quads[0].K)
      throw std::invalid_argument("mortar: adjacent quads must share the xi degree K");

  for (int k = 1; k <= 4; ++k) maps_.emplace_back(config.domain, k, config.R);
  inner_modes_ = inner_mode_list(config.domain, config.K0, config.N0);

  std::array<int, 5> offset{};
  for (int k = 0; k < 4; ++k) offset[k + 1] = offset[k] + local_size(k + 1);
  UnionFind uf(offset[4]);
  std::vector<char> dirichlet(static_cast<std::size_t>(offset[4]), 0);
  auto id = [&](int kappa, int a, int b) { return offset[kappa - 1] + a * (config_.quads[kappa - 1].N + 1) + b; };
  const int K = config.quads[0].K;

  // Shared straight edges: (kappa, eta-end) pairs; eta-end 0 is eta = +1, 1 is eta = -1.
  std::vector<std::array<int, 4>> edges;
  if (config.domain == Domain::square) {
    for (int k = 1; k <= 4; ++k) edges.push_back({k, 0, k % 4 + 1, 1});
  } else {
    edges = {{1, 0, 2, 1}, {2, 0, 3, 1}, {3, 0, 4, 0}};
    for (int a = 0; a < K; ++a) {
      dirichlet[id(1, a, 1)] = 1;
      dirichlet[id(4, a, 1)] = 1;
    }
  }
  for (const auto& e : edges)
    for (int a = 0; a < K; ++a) uf.unite(id(e[0], a, e[1]), id(e[2], a, e[3]));

  std::vector<char> root_dirichlet(static_cast<std::size_t>(offset[4]), 0);
  for (int i = 0; i < offset[4]; ++i)
    if (dirichlet[i]) root_dirichlet[uf.find(i)] = 1;
  std::map<int, int> number;
  int next = inner_dofs();
  for (int kappa = 1; kappa <= 4; ++kappa) {
    auto& g = quad_global_[kappa - 1];
    g.assign(static_cast<std::size_t>(local_size(kappa)), -1);
    for (int l = 0; l < local_size(kappa); ++l) {
      const int root = uf.find(offset[kappa - 1] + l);
      if (root_dirichlet[root]) continue;
      auto it = number.find(root);
      if (it == number.end()) it = number.emplace(root, next++).first;
      g[l] = it->second;
    }
  }
  outer_dofs_ = next - inner_dofs();
}

int MortarMesh::local_size(int kappa) const {
  const QuadDegrees& d = config_.quads[kappa - 1];
  return d.K * (d.N + 1);
}

int MortarMesh::quad_dof(int kappa, int a, int b) const {
  const QuadDegrees& d = config_.quads[kappa - 1];
  return quad_global_[kappa - 1][static_cast<std::size_t>(a * (d.N + 1) + b)];
}

Eigen::MatrixXd assemble_mortar_constraints(const MortarMesh& mesh) {
  const MortarConfig& cfg = mesh.config();
  const std::vector<InnerMode>& modes = mesh.inner_modes();
  const double R = cfg.R;
  int max_n = 0;
  for (const QuadDegrees& d : cfg.quads) max_n = std::max(max_n, d.N);
  const int npts = std::max(64, 2 * (max_n + cfg.N0) + 16);
  const QuadratureRule g = gauss_legendre(npts);

  // Arc traces: for each quad, the eta functions of the xi-hat (a = 0) column.
  std::vector<int> inner_trace;  // inner dofs with nonzero trace (k = 0)
  for (int i = 0; i < static_cast<int>(modes.size()); ++i)
    if (modes[i].k == 0) inner_trace.push_back(i);

  std::vector<int> outer_trace;  // distinct global ids on the arc, first-seen order
  for (int kappa = 1; kappa <= 4; ++kappa)
    for (int b = 0; b <= cfg.quads[kappa - 1].N; ++b) {
      const int gid = mesh.quad_dof(kappa, 0, b);
      if (gid >= 0 && std::find(outer_trace.begin(), outer_trace.end(), gid) == outer_trace.end())
        outer_trace.push_back(gid);
    }

  const bool inner_test = cfg.test == MortarTest::inner;
  const int rows = static_cast<int>(inner_test ? inner_trace.size() : outer_trace.size());
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(rows, mesh.total_dofs());

  if (inner_test) {
    for (int r = 0; r < rows; ++r) {
      const InnerMode& test = modes[static_cast<std::size_t>(inner_trace[r])];
      C(r, inner_trace[r]) += R * angular_norm(cfg.domain, test.n);
      for (int kappa = 1; kappa <= 4; ++kappa) {
        const GordonHallMap& m = mesh.map(kappa);
        const int N = cfg.quads[kappa - 1].N;
        std::vector<double> v, dv;
        for (int p = 0; p < npts; ++p) {
          const double eta = g.nodes[p];
          eta_basis(N, eta, v, dv);
          const double s = g.weights[p] * R * std::abs(m.arc_angle_rate(eta)) *
                           angular_value(cfg.domain, test, m.arc_angle(eta));
          for (int b = 0; b <= N; ++b) {
            const int gid = mesh.quad_dof(kappa, 0, b);
            if (gid >= 0) C(r, gid) -= s * v[b];
          }
        }
      }
    }
    return C;
  }

  std::map<int, int> row_of;
  for (int r = 0; r < rows; ++r) row_of[outer_trace[r]] = r;
  for (int kappa = 1; kappa <= 4; ++kappa) {
    const GordonHallMap& m = mesh.map(kappa);
    const int N = cfg.quads[kappa - 1].N;
    std::vector<double> v, dv;
    for (int p = 0; p < npts; ++p) {
      const double eta = g.nodes[p];
      eta_basis(N, eta, v, dv);
      const double theta = m.arc_angle(eta);
      const double s = g.weights[p] * R * std::abs(m.arc_angle_rate(eta));
      for (int b = 0; b <= N; ++b) {
        const int gid = mesh.quad_dof(kappa, 0, b);
        if (gid < 0) continue;
        const int r = row_of[gid];
        for (int i : inner_trace)
          C(r, i) += s * v[b] * angular_value(cfg.domain, modes[static_cast<std::size_t>(i)], theta);
        for (int b2 = 0; b2 <= N; ++b2) {
          const int h = mesh.quad_dof(kappa, 0, b2);
          if (h >= 0) C(r, h) -= s * v[b] * v[b2];
        }
      }
    }
  }
  return C;
}

GlobalSystem assemble_global(const MortarMesh& mesh) {
  const MortarConfig& cfg = mesh.config();
  const int n = mesh.total_dofs();
  GlobalSystem sys;
  sys.A = Eigen::MatrixXd::Zero(n, n);
  sys.B = Eigen::MatrixXd::Zero(n, n);
  const ElementMatrices inner = assemble_interface_block(cfg.domain, cfg.R, cfg.c, cfg.K0, cfg.N0);
  const int ni = mesh.inner_dofs();
  sys.A.topLeftCorner(ni, ni) = inner.A;
  sys.B.topLeftCorner(ni, ni) = inner.B;
  for (int kappa = 1; kappa <= 4; ++kappa) {
    const QuadDegrees& d = cfg.quads[kappa - 1];
    int q = 0;
    const ElementMatrices e =
        assemble_quad_element_checked(mesh.map(kappa), cfg.c, d.K, d.N, cfg.quad_order, &q);
    sys.quad_order = std::max(sys.quad_order, q);
    const int nl = mesh.local_size(kappa);
    for (int i = 0; i < nl; ++i) {
      const int gi = mesh.quad_dof(kappa, i / (d.N + 1), i % (d.N + 1));
      if (gi < 0) continue;
      for (int j = 0; j < nl; ++j) {
        const int gj = mesh.quad_dof(kappa, j / (d.N + 1), j % (d.N + 1));
        if (gj < 0) continue;
        sys.A(gi, gj) += e.A(i, j);
        sys.B(gi, gj) += e.B(i, j);
      }
    }
  }
  return sys;
}

MsemResult solve_msem(const MortarMesh& mesh, int want) {
  if (want < 1) throw std::invalid_argument("solve_msem: count must be >= 1");
  const GlobalSystem sys = assemble_global(mesh);
  const Eigen::MatrixXd C = assemble_mortar_constraints(mesh);
  ConstrainedResult r = reduce_constrained_gevp(sys.A, sys.B, C, want);
  MsemResult out;
  out.spectrum = std::move(r.gevp.spectrum);
  out.columns = mesh.total_dofs();
  out.constraint_rank = r.constraint_rank;
  out.dof = out.columns - r.constraint_rank;
  out.quad_order = sys.quad_order;
  return out;
}

}  // namespace isq
