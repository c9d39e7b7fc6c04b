#pragma once

// Dense symmetric spectral kernels used by every other module.

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "fkica/errors.hpp"

namespace fkica {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Eigenvalues in descending order with orthonormal eigenvectors as columns.
/// Each column is signed so that its largest-magnitude entry is positive
/// (ties go to the lowest index).
struct EigenSystem {
  Vector values;
  Matrix vectors;
};

namespace detail {

inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline void fix_sign(Eigen::Ref<Vector> v) {
  Eigen::Index best = 0;
  double best_abs = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    if (a > best_abs) {
      best_abs = a;
      best = i;
    }
  }
  if (v(best) < 0.0) v = -v;
}

}  // namespace detail

inline bool is_symmetric(const Matrix& m, double rel_tol = 1e-10) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(detail::max_abs(m), 1e-300);
  return detail::max_abs(m - m.transpose()) <= rel_tol * scale;
}

inline EigenSystem sym_eigen(const Matrix& m) {
  if (!is_symmetric(m)) {
    throw Error(ErrorKind::NotSymmetric, "sym_eigen requires a symmetric matrix");
  }
  const Eigen::Index q = m.rows();
  // Symmetrize exactly so that the result depends only on one triangle.
  const Matrix sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::NotSymmetric, "eigen solver did not converge");
  }
  EigenSystem out;
  out.values.resize(q);
  out.vectors.resize(q, q);
  // Eigen returns ascending order.
  for (Eigen::Index j = 0; j < q; ++j) {
    out.values(j) = solver.eigenvalues()(q - 1 - j);
    out.vectors.col(j) = solver.eigenvectors().col(q - 1 - j);
    detail::fix_sign(out.vectors.col(j));
  }
  return out;
}

/// V f(Λ) Vᵀ for a symmetric matrix.
template <typename F>
Matrix spectral_apply(const EigenSystem& es, F&& f) {
  Vector mapped = es.values.unaryExpr(std::forward<F>(f));
  return es.vectors * mapped.asDiagonal() * es.vectors.transpose();
}

/// Symmetric inverse square root. Throws NearSingular carrying the smallest
/// eigenvalue when it is not above `tol`.
inline Matrix inv_sqrt(const Matrix& m, double tol = 0.0) {
  const EigenSystem es = sym_eigen(m);
  const double lmin = es.values(es.values.size() - 1);
  if (!(lmin > tol)) {
    throw Error(ErrorKind::NearSingular,
                "smallest eigenvalue " + std::to_string(lmin) + " not above tolerance",
                lmin);
  }
  return spectral_apply(es, [](double l) { return 1.0 / std::sqrt(l); });
}

/// Symmetric square root of a positive semidefinite matrix.
inline Matrix sqrt_psd(const Matrix& m) {
  const EigenSystem es = sym_eigen(m);
  return spectral_apply(es, [](double l) { return std::sqrt(std::max(l, 0.0)); });
}

inline Matrix cholesky_lower(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::NotPositiveDefinite, "matrix is not square");
  }
  Eigen::LLT<Matrix> llt(m);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorKind::NotPositiveDefinite, "Cholesky factorization failed");
  }
  Matrix l = llt.matrixL();
  for (Eigen::Index i = 0; i < l.rows(); ++i) {
    if (!(l(i, i) > 0.0)) {
      throw Error(ErrorKind::NotPositiveDefinite, "non-positive pivot in Cholesky factor");
    }
  }
  return l;
}

/// Inverse of a lower-triangular matrix by forward substitution.
inline Matrix lower_inverse(const Matrix& l) {
  return l.triangularView<Eigen::Lower>().solve(Matrix::Identity(l.rows(), l.cols()));
}

inline double hs_distance_to_identity(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::IndexOutOfRange, "hs_distance_to_identity needs a square matrix");
  }
  return (m - Matrix::Identity(m.rows(), m.cols())).norm();
}

}  // namespace fkica
