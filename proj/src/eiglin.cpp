#include "isqeig/eiglin.hpp"

#include "isqeig/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace isq {

SymBandedMatrix::SymBandedMatrix(int order, int half_bandwidth) : n_(order), b_(half_bandwidth) {
  if (order < 0) throw std::invalid_argument("SymBandedMatrix: negative order");
  if (half_bandwidth < 0) throw std::invalid_argument("SymBandedMatrix: negative bandwidth");
  bands_.resize(static_cast<std::size_t>(b_) + 1);
  for (int d = 0; d <= b_; ++d) bands_[d].assign(static_cast<std::size_t>(std::max(n_ - d, 0)), 0.0);
}

double SymBandedMatrix::operator()(int i, int j) const {
  if (i < 0 || j < 0 || i >= n_ || j >= n_) throw std::out_of_range("SymBandedMatrix: index");
  const int lo = std::min(i, j);
  const int d = std::abs(i - j);
  if (d > b_) return 0.0;
  return bands_[d][lo];
}

void SymBandedMatrix::set(int i, int j, double v) {
  if (i < 0 || j < 0 || i >= n_ || j >= n_) throw std::out_of_range("SymBandedMatrix: index");
  const int d = std::abs(i - j);
  if (d > b_)
    throw std::out_of_range("SymBandedMatrix: entry (" + std::to_string(i) + "," +
                            std::to_string(j) + ") outside the band");
  bands_[d][std::min(i, j)] = v;
}

Eigen::MatrixXd SymBandedMatrix::dense() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n_, n_);
  for (int d = 0; d <= b_; ++d)
    for (int i = 0; i + d < n_; ++i) m(i, i + d) = m(i + d, i) = bands_[d][i];
  return m;
}

DenseSymMatrix::DenseSymMatrix(int order) : m_(Eigen::MatrixXd::Zero(order, order)) {}

DenseSymMatrix::DenseSymMatrix(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("DenseSymMatrix: matrix not square");
  const double scale = m.cwiseAbs().maxCoeff();
  if (m.size() > 0 && (m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw std::invalid_argument("DenseSymMatrix: matrix not symmetric");
  m_ = 0.5 * (m + m.transpose());
}

DenseSymMatrix::DenseSymMatrix(const SymBandedMatrix& m) : m_(m.dense()) {}

void DenseSymMatrix::set(int i, int j, double v) { m_(i, j) = m_(j, i) = v; }

void DenseSymMatrix::add(int i, int j, double v) {
  m_(i, j) += v;
  if (i != j) m_(j, i) += v;
}

namespace {

// Unblocked Cholesky used only to locate the first non-positive pivot.
int failing_pivot(const Eigen::MatrixXd& B) {
  const int n = static_cast<int>(B.rows());
  Eigen::MatrixXd L = B;
  for (int j = 0; j < n; ++j) {
    double d = L(j, j);
    for (int k = 0; k < j; ++k) d -= L(j, k) * L(j, k);
    if (!(d > 0.0)) return j;
    d = std::sqrt(d);
    L(j, j) = d;
    for (int i = j + 1; i < n; ++i) {
      double s = L(i, j);
      for (int k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
      L(i, j) = s / d;
    }
  }
  return -1;
}

bool positive_diagonal_only(const Eigen::MatrixXd& A) {
  const int n = static_cast<int>(A.rows());
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      if (i == j) {
        if (!(A(i, i) > 0.0)) return false;
      } else if (A(i, j) != 0.0) {
        return false;
      }
    }
  return true;
}

Eigen::MatrixXd sandwich(const Eigen::MatrixXd& L, const Eigen::MatrixXd& M) {
  // L^{-1} M L^{-T} for symmetric M.
  Eigen::MatrixXd Y = L.triangularView<Eigen::Lower>().solve(M);
  Eigen::MatrixXd Yt = Y.transpose();
  Eigen::MatrixXd S = L.triangularView<Eigen::Lower>().solve(Yt);
  return 0.5 * (S + S.transpose());
}

// Fills the result from the eigen-decomposition of a reciprocal problem (mu = 1/lambda).
// Returns false when B is not positive definite on the wanted subspace.
bool take_reciprocal(const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>& es, int want,
                     GevpResult& out, Eigen::MatrixXd* basis_vectors) {
  const int n = static_cast<int>(es.eigenvalues().size());
  if (!(es.eigenvalues()(n - want) > 0.0)) return false;
  for (int i = 0; i < want; ++i) out.spectrum.add(1.0 / es.eigenvalues()(n - 1 - i));
  if (basis_vectors) {
    basis_vectors->resize(n, want);
    for (int i = 0; i < want; ++i) basis_vectors->col(i) = es.eigenvectors().col(n - 1 - i);
  }
  return true;
}

}  // namespace

GevpResult solve_gevp(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, int want,
                      bool vectors) {
  const int n = static_cast<int>(A.rows());
  if (A.cols() != n || B.rows() != n || B.cols() != n)
    throw std::invalid_argument("solve_gevp: order mismatch");
  if (want < 1 || want > n)
    throw std::invalid_argument("solve_gevp: requested " + std::to_string(want) +
                                " eigenvalues of an order-" + std::to_string(n) + " problem");
  const auto opts = vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly;
  GevpResult out;

  if (positive_diagonal_only(A)) {
    const Eigen::VectorXd s = A.diagonal().cwiseSqrt().cwiseInverse();
    const Eigen::MatrixXd M = s.asDiagonal() * B * s.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (M + M.transpose()), opts);
    Eigen::MatrixXd y;
    if (take_reciprocal(es, want, out, vectors ? &y : nullptr)) {
      if (vectors) out.vectors = s.asDiagonal() * y;
      return out;
    }
  }

  Eigen::LLT<Eigen::MatrixXd> lla(A);
  if (lla.info() == Eigen::Success) {
    const Eigen::MatrixXd L = lla.matrixL();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sandwich(L, B), opts);
    Eigen::MatrixXd y;
    if (take_reciprocal(es, want, out, vectors ? &y : nullptr)) {
      if (vectors) out.vectors = L.transpose().triangularView<Eigen::Upper>().solve(y);
      return out;
    }
  }

  Eigen::LLT<Eigen::MatrixXd> llb(B);
  if (llb.info() != Eigen::Success)
    throw NumericalError("solve_gevp: B is not positive definite (pivot " +
                         std::to_string(failing_pivot(B)) + ")");
  const Eigen::MatrixXd L = llb.matrixL();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sandwich(L, A), opts);
  for (int i = 0; i < want; ++i) out.spectrum.add(es.eigenvalues()(i));
  if (vectors)
    out.vectors = L.transpose().triangularView<Eigen::Upper>().solve(es.eigenvectors().leftCols(want));
  return out;
}

Spectrum solve_gevp(const SymBandedMatrix& A, const SymBandedMatrix& B, int want) {
  return solve_gevp(A.dense(), B.dense(), want).spectrum;
}

Spectrum solve_gevp(const DenseSymMatrix& A, const DenseSymMatrix& B, int want) {
  return solve_gevp(A.matrix(), B.matrix(), want).spectrum;
}

namespace {

struct NullBasis {
  int n = 0;
  int rank = 0;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr;  // of the row-space basis V (n x rank)
};

NullBasis null_basis(const Eigen::MatrixXd& C, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("nullspace: tolerance must be positive");
  NullBasis nb;
  nb.n = static_cast<int>(C.cols());
  if (C.rows() == 0 || C.cols() == 0) return nb;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(C, Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  if (smax == 0.0) return nb;
  int r = 0;
  while (r < sv.size() && sv(r) > tol * smax) ++r;
  if (r >= nb.n) throw std::domain_error("nullspace: constraints have full column rank");
  nb.rank = r;
  nb.qr.compute(svd.matrixV().leftCols(r));
  return nb;
}

}  // namespace

int numerical_rank(const Eigen::MatrixXd& C, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("numerical_rank: tolerance must be positive");
  if (C.rows() == 0 || C.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(C);
  const Eigen::VectorXd& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int r = 0;
  while (r < sv.size() && sv(r) > tol * sv(0)) ++r;
  return r;
}

Eigen::MatrixXd nullspace(const Eigen::MatrixXd& C, double tol) {
  const NullBasis nb = null_basis(C, tol);
  if (nb.rank == 0) return Eigen::MatrixXd::Identity(nb.n, nb.n);
  Eigen::MatrixXd Q = Eigen::MatrixXd::Identity(nb.n, nb.n);
  Q.applyOnTheLeft(nb.qr.householderQ());
  return Q.rightCols(nb.n - nb.rank);
}

ConstrainedResult reduce_constrained_gevp(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                                          const Eigen::MatrixXd& C, int want, bool vectors,
                                          double tol) {
  const int n = static_cast<int>(A.rows());
  if (C.rows() > 0 && C.cols() != n)
    throw std::invalid_argument("reduce_constrained_gevp: constraint width mismatch");
  ConstrainedResult out;
  const NullBasis nb = null_basis(C.rows() > 0 ? C : Eigen::MatrixXd(0, n), tol);
  out.constraint_rank = nb.rank;
  if (nb.rank == 0) {
    out.gevp = solve_gevp(A, B, want, vectors);
    return out;
  }
  // Q^T M Q with the Householder reflectors; the trailing block is Z^T M Z.
  const auto Q = nb.qr.householderQ();
  const int m = n - nb.rank;
  Eigen::MatrixXd Ar = A, Br = B;
  Ar.applyOnTheLeft(Q.adjoint());
  Ar.applyOnTheRight(Q);
  Br.applyOnTheLeft(Q.adjoint());
  Br.applyOnTheRight(Q);
  const Eigen::MatrixXd Az = Ar.bottomRightCorner(m, m);
  const Eigen::MatrixXd Bz = Br.bottomRightCorner(m, m);
  out.gevp = solve_gevp(0.5 * (Az + Az.transpose()), 0.5 * (Bz + Bz.transpose()), want, vectors);
  if (vectors) {
    Eigen::MatrixXd full = Eigen::MatrixXd::Zero(n, want);
    full.bottomRows(m) = out.gevp.vectors;
    full.applyOnTheLeft(Q);
    out.gevp.vectors = full;
  }
  return out;
}

Spectrum reduce_constrained_gevp(const DenseSymMatrix& A, const DenseSymMatrix& B,
                                 const Eigen::MatrixXd& C, int want) {
  return reduce_constrained_gevp(A.matrix(), B.matrix(), C, want).gevp.spectrum;
}

}  // namespace isq
