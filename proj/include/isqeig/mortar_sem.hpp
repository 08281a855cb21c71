#pragma once

// Mortar spectral element method on the square [-1,1]^2 and the L-shape
// [-1,1]^2 \ ([0,1] x [-1,0]): a singularity-adapted disk (or 3/4-disk sector) of
// radius R around the origin, four Gordon-Hall quadrilaterals outside it, and
// weak trace matching on the circle.

#include "isqeig/eiglin.hpp"
#include "isqeig/gordon_hall.hpp"
#include "isqeig/spectrum.hpp"

#include <Eigen/Dense>

#include <array>
#include <vector>

namespace isq {

/// Which trace space supplies the matching test functions on the circle.
enum class MortarTest { inner, outer };

struct QuadDegrees {
  int K = 0;  // xi direction (towards the outer boundary)
  int N = 0;  // eta direction (along the circle)
};

struct MortarConfig {
  Domain domain = Domain::square;
  double R = 0.3;
  double c = 0.5;
  int K0 = 14;  // radial degree of the inner block, k = 0..K0
  int N0 = 10;  // angular degree of the inner block
  std::array<QuadDegrees, 4> quads{};
  int quad_order = 0;  // points per direction; 0 selects max(K,N) + 16 with a doubling check
  MortarTest test = MortarTest::inner;
};

/// Reference square degrees, delta = (10,14,17,18).
MortarConfig square_reference_config(double c);
/// Reference L-shape degrees, delta = ({17,20},{15,9},{15,18}^2,{15,9}).
MortarConfig lshape_reference_config();

/// Proportional family used for convergence sweeps: K0 = p, N0 = p+2, quads (p+4, 2p).
/// On the L-shape the two short-arc quads 1 and 4 use eta degree p.
MortarConfig msem_sweep_config(Domain domain, double c, double R, int p);

/// Reference eigenvalues with repeats: tabulated square values for c = 1/2 and 2/3,
/// exact (i^2 + j^2) pi^2 / 4 for c = 0, tabulated L-shape values for c = 0.
/// Empty when no ground truth is known.
std::vector<double> msem_reference(Domain domain, double c);

struct ElementMatrices {
  Eigen::MatrixXd A;
  Eigen::MatrixXd B;
  std::vector<int> global;  // local index -> global dof, -1 when excluded
};

/// One inner-block basis function: radial index k and angular mode.
struct InnerMode {
  int n = 0;
  int trig = 0;  // 0: cos (or constant for n = 0), 1: sin
  int k = 0;
};

/// Closed-form inner block (disk: P-basis with 1, cos n theta, sin n theta;
/// sector: P-basis with sin(n gamma theta), gamma = 2/3). Radius R scales the mass by R^2.
ElementMatrices assemble_interface_block(Domain domain, double R, double c, int K0, int N0,
                                         std::vector<InnerMode>* modes = nullptr);

/// Local quadrilateral matrices over phi_a(xi) phi_b(eta), a over {(1-xi)/2, J_2..J_K},
/// b over {(1+eta)/2, (1-eta)/2, J_2..J_N}; local index a * (N + 1) + b.
ElementMatrices assemble_quad_element(const GordonHallMap& m, double c, int K, int N, int q);

/// As above, doubling q until entries move by less than 1e-11 relative. Returns the order used.
ElementMatrices assemble_quad_element_checked(const GordonHallMap& m, double c, int K, int N,
                                              int q, int* q_used = nullptr);

class MortarMesh {
public:
  explicit MortarMesh(const MortarConfig& config);

  const MortarConfig& config() const { return config_; }
  const GordonHallMap& map(int kappa) const { return maps_[kappa - 1]; }
  const std::vector<InnerMode>& inner_modes() const { return inner_modes_; }

  int inner_dofs() const { return static_cast<int>(inner_modes_.size()); }
  int outer_dofs() const { return outer_dofs_; }
  int total_dofs() const { return inner_dofs() + outer_dofs_; }

  /// Global dof of quad kappa's local mode (a, b), or -1 on the Dirichlet boundary.
  int quad_dof(int kappa, int a, int b) const;
  int local_size(int kappa) const;

private:
  MortarConfig config_;
  std::vector<GordonHallMap> maps_;
  std::vector<InnerMode> inner_modes_;
  std::array<std::vector<int>, 4> quad_global_;
  int outer_dofs_ = 0;
};

/// Matching rows (gamma^- v - gamma^+ v, phi) on the circle, one per test function.
Eigen::MatrixXd assemble_mortar_constraints(const MortarMesh& mesh);

struct MsemResult {
  Spectrum spectrum;
  int columns = 0;          // inner + distinct outer dofs
  int constraint_rank = 0;
  int dof = 0;              // columns - constraint_rank
  int quad_order = 0;
};

struct GlobalSystem {
  Eigen::MatrixXd A;
  Eigen::MatrixXd B;
  int quad_order = 0;
};
GlobalSystem assemble_global(const MortarMesh& mesh);

MsemResult solve_msem(const MortarMesh& mesh, int want);

}  // namespace isq
