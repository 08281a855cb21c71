#pragma once

// Symmetric matrix containers and generalized symmetric-definite eigensolvers,
// including elimination of linear constraints through a null-space basis.

#include "isqeig/spectrum.hpp"

#include <Eigen/Dense>

#include <vector>

namespace isq {

/// Symmetric band matrix; only the diagonal and upper bands are stored.
class SymBandedMatrix {
public:
  SymBandedMatrix(int order, int half_bandwidth);

  int order() const { return n_; }
  int half_bandwidth() const { return b_; }

  /// Zero outside the band.
  double operator()(int i, int j) const;
  /// Writes (i,j) and, implicitly, (j,i). Throws outside the band.
  void set(int i, int j, double v);

  Eigen::MatrixXd dense() const;

private:
  int n_;
  int b_;
  std::vector<std::vector<double>> bands_;  // bands_[d][i] = entry (i, i+d)
};

class DenseSymMatrix {
public:
  explicit DenseSymMatrix(int order);
  /// Symmetrizes m; throws when it is not square or visibly non-symmetric.
  explicit DenseSymMatrix(const Eigen::MatrixXd& m);
  explicit DenseSymMatrix(const SymBandedMatrix& m);

  int order() const { return static_cast<int>(m_.rows()); }
  double operator()(int i, int j) const { return m_(i, j); }
  void set(int i, int j, double v);
  /// Adds v to (i,j) and to (j,i) when i != j.
  void add(int i, int j, double v);

  const Eigen::MatrixXd& matrix() const { return m_; }

private:
  Eigen::MatrixXd m_;
};

struct GevpResult {
  Spectrum spectrum;
  Eigen::MatrixXd vectors;  // column i pairs with spectrum[i]; empty unless requested
};

/// Smallest `want` eigenvalues of A x = lambda B x.
///
/// A diagonal and positive: congruence with A^{-1/2}. A positive definite: Cholesky
/// of A and the largest eigenvalues of L^{-1} B L^{-T}. Otherwise Cholesky of B.
/// Throws NumericalError naming the failing pivot when B is not positive definite.
GevpResult solve_gevp(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, int want,
                      bool vectors = false);
Spectrum solve_gevp(const SymBandedMatrix& A, const SymBandedMatrix& B, int want);
Spectrum solve_gevp(const DenseSymMatrix& A, const DenseSymMatrix& B, int want);

inline constexpr double kNullspaceTolerance = 1e-11;

/// Orthonormal basis of ker C. Rank is the number of singular values above tol * sigma_max.
Eigen::MatrixXd nullspace(const Eigen::MatrixXd& C, double tol = kNullspaceTolerance);

/// Numerical rank of C under the same rule as nullspace.
int numerical_rank(const Eigen::MatrixXd& C, double tol = kNullspaceTolerance);

struct ConstrainedResult {
  GevpResult gevp;     // vectors, when requested, are in the original coordinates
  int constraint_rank = 0;
};

/// Spectrum of Z^T A Z y = lambda Z^T B Z y with Z spanning ker C.
ConstrainedResult reduce_constrained_gevp(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                                          const Eigen::MatrixXd& C, int want,
                                          bool vectors = false,
                                          double tol = kNullspaceTolerance);
Spectrum reduce_constrained_gevp(const DenseSymMatrix& A, const DenseSymMatrix& B,
                                 const Eigen::MatrixXd& C, int want);

}  // namespace isq
