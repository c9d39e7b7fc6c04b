#pragma once

// Functional whitening in the Gram metric: coefficients A are mapped to
// B = (A - center) G^{1/2}, whose covariance C is sent to the identity by W.

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "fkica/errors.hpp"
#include "fkica/funbasis.hpp"
#include "fkica/specmat.hpp"

namespace fkica {

enum class WhiteningMethod { PCA, PCACor, ZCA, ZCACor, Cholesky };

inline constexpr std::array<WhiteningMethod, 5> kAllWhiteningMethods = {
    WhiteningMethod::PCA, WhiteningMethod::PCACor, WhiteningMethod::ZCA, WhiteningMethod::ZCACor,
    WhiteningMethod::Cholesky};

/// Default eigenvalue floor for covariance matrices.
inline constexpr double kDefaultEigenTol = 5e-10;

inline std::string_view to_string(WhiteningMethod m) {
  switch (m) {
    case WhiteningMethod::PCA: return "pca";
    case WhiteningMethod::PCACor: return "pca-cor";
    case WhiteningMethod::ZCA: return "zca";
    case WhiteningMethod::ZCACor: return "zca-cor";
    case WhiteningMethod::Cholesky: return "cholesky";
  }
  return "?";
}

inline WhiteningMethod parse_whitening(std::string_view s) {
  for (auto m : kAllWhiteningMethods) {
    if (s == to_string(m)) return m;
  }
  if (s == "chol") return WhiteningMethod::Cholesky;
  throw Error(ErrorKind::InvalidConfig, "unknown whitening method '" + std::string(s) + "'");
}

struct WhiteningModel {
  WhiteningMethod method = WhiteningMethod::ZCA;
  Matrix w;
  Vector center;
  Matrix gram_sqrt;
  Matrix gram_inv_sqrt;
  double tol = kDefaultEigenTol;
  BasisPtr basis;
};

/// Covariance n⁻¹ BᵀB of the Gram-metric coordinates B = (A - mean) G^{1/2}.
inline Matrix gram_metric_covariance(const Matrix& coefficients, const Matrix& gram_sqrt,
                                     const Vector& mean) {
  const Matrix b = (coefficients.rowwise() - mean.transpose()) * gram_sqrt;
  Matrix c = b.transpose() * b / static_cast<double>(coefficients.rows());
  return 0.5 * (c + c.transpose());
}

namespace detail {

inline Matrix whitening_core(const Matrix& c, WhiteningMethod base, double tol) {
  const EigenSystem es = sym_eigen(c);
  const double lmin = es.values(es.values.size() - 1);
  if (!(lmin > tol)) {
    throw Error(ErrorKind::NearSingular,
                "covariance eigenvalue " + std::to_string(lmin) + " not above tolerance; reduce q",
                lmin);
  }
  switch (base) {
    case WhiteningMethod::PCA: {
      Vector s = es.values.unaryExpr([](double l) { return 1.0 / std::sqrt(l); });
      return s.asDiagonal() * es.vectors.transpose();
    }
    case WhiteningMethod::ZCA:
      return spectral_apply(es, [](double l) { return 1.0 / std::sqrt(l); });
    case WhiteningMethod::Cholesky:
      return lower_inverse(cholesky_lower(c));
    default:
      break;
  }
  throw Error(ErrorKind::InvalidConfig, "not a base whitening method");
}

}  // namespace detail

/// Whitening matrix for a covariance C (W C Wᵀ = I).
inline Matrix whitening_matrix(const Matrix& c, WhiteningMethod method,
                               double tol = kDefaultEigenTol) {
  switch (method) {
    case WhiteningMethod::PCA:
    case WhiteningMethod::ZCA:
    case WhiteningMethod::Cholesky:
      return detail::whitening_core(c, method, tol);
    case WhiteningMethod::PCACor:
    case WhiteningMethod::ZCACor: {
      const Vector var = c.diagonal();
      if ((var.array() <= tol).any()) {
        throw Error(ErrorKind::NearSingular, "zero variance coordinate", var.minCoeff());
      }
      const Vector inv_sd = var.array().rsqrt();
      const Matrix p = inv_sd.asDiagonal() * c * inv_sd.asDiagonal();
      const auto base =
          method == WhiteningMethod::PCACor ? WhiteningMethod::PCA : WhiteningMethod::ZCA;
      // The correlation matrix has unit diagonal, so the floor is applied to
      // the covariance's own smallest eigenvalue first.
      const double lmin = sym_eigen(c).values(c.rows() - 1);
      if (!(lmin > tol)) {
        throw Error(ErrorKind::NearSingular,
                    "covariance eigenvalue " + std::to_string(lmin) + " not above tolerance", lmin);
      }
      return detail::whitening_core(0.5 * (p + p.transpose()), base, 0.0) * inv_sd.asDiagonal();
    }
  }
  throw Error(ErrorKind::InvalidConfig, "unknown whitening method");
}

namespace detail {

// Whitening computed from the centered Gram-metric coordinates B themselves
// (thin SVD or QR of B) rather than from C = n⁻¹BᵀB, which would square the
// condition number. Mathematically identical to whitening_matrix(C, ...).
inline Matrix whitening_from_coordinates(const Matrix& b, WhiteningMethod method, double tol) {
  const auto n = static_cast<double>(b.rows());
  const Eigen::Index q = b.cols();
  const Eigen::JacobiSVD<Matrix> full(b);
  const double lmin = full.singularValues()(q - 1) * full.singularValues()(q - 1) / n;
  if (!(lmin > tol)) {
    throw Error(ErrorKind::NearSingular,
                "covariance eigenvalue " + std::to_string(lmin) + " not above tolerance; reduce q", lmin);
  }
  Vector scale = Vector::Ones(q);
  WhiteningMethod base = method;
  if (method == WhiteningMethod::PCACor || method == WhiteningMethod::ZCACor) {
    const Vector var = b.colwise().squaredNorm().transpose() / n;
    scale = var.array().rsqrt();
    base = method == WhiteningMethod::PCACor ? WhiteningMethod::PCA : WhiteningMethod::ZCA;
  }
  const Matrix bs = b * scale.asDiagonal();
  Matrix w;
  if (base == WhiteningMethod::Cholesky) {
    // C = RᵀR/n from B = QR, so L = Rᵀ/√n up to column signs.
    const Eigen::HouseholderQR<Matrix> qr(bs);
    Matrix l = qr.matrixQR().topRows(q).triangularView<Eigen::Upper>().toDenseMatrix().transpose() /
               std::sqrt(n);
    for (Eigen::Index j = 0; j < q; ++j) {
      if (l(j, j) < 0.0) l.col(j) = -l.col(j);
    }
    w = lower_inverse(l);
  } else {
    const Eigen::JacobiSVD<Matrix> svd(bs, Eigen::ComputeThinV);
    Matrix v = svd.matrixV();
    for (Eigen::Index j = 0; j < q; ++j) fix_sign(v.col(j));
    const Vector inv_sd = (svd.singularValues().array() / std::sqrt(n)).inverse();
    w = inv_sd.asDiagonal() * v.transpose();
    if (base == WhiteningMethod::ZCA) w = v * w;
  }
  return w * scale.asDiagonal();
}

}  // namespace detail

/// Fits on (uncentered or centered) coefficients; the pooled row mean is
/// estimated here and stored as the model's center.
inline WhiteningModel fit_whitening(const FDataSet& data, WhiteningMethod method,
                                    double tol = kDefaultEigenTol) {
  const Eigen::Index n = data.size();
  const int q = data.dimension();
  if (n < q + 1) {
    throw Error(ErrorKind::InsufficientSamples,
                "whitening needs n >= q + 1 (n=" + std::to_string(n) + ", q=" + std::to_string(q) +
                    ")");
  }
  WhiteningModel model;
  model.method = method;
  model.tol = tol;
  model.basis = data.basis;
  const EigenSystem ges = sym_eigen(data.basis->gram());
  model.gram_sqrt = spectral_apply(ges, [](double l) { return std::sqrt(l); });
  model.gram_inv_sqrt = spectral_apply(ges, [](double l) { return 1.0 / std::sqrt(l); });
  model.center = column_mean(data.coefficients);
  const Matrix b = (data.coefficients.rowwise() - model.center.transpose()) * model.gram_sqrt;
  model.w = detail::whitening_from_coordinates(b, method, tol);
  return model;
}

/// Ã = (A - center) G^{1/2} Wᵀ G^{-1/2}: whitened curves in the same basis.
inline FDataSet apply_whitening(const WhiteningModel& model, const FDataSet& data) {
  require_same_basis(*model.basis, *data.basis);
  FDataSet out;
  out.basis = data.basis;
  out.labels = data.labels;
  out.center = model.center;
  out.coefficients = (data.coefficients.rowwise() - model.center.transpose()) * model.gram_sqrt *
                     model.w.transpose() * model.gram_inv_sqrt;
  return out;
}

/// n⁻¹ G^{1/2} ÃᵀÃ G^{1/2}: second moment of whitened data in the Gram metric.
inline Matrix whitened_covariance(const FDataSet& whitened, const Matrix& gram_sqrt) {
  const Matrix b = whitened.coefficients * gram_sqrt;
  Matrix c = b.transpose() * b / static_cast<double>(whitened.size());
  return 0.5 * (c + c.transpose());
}

inline Matrix whitened_covariance(const FDataSet& whitened) {
  return whitened_covariance(whitened, sqrt_psd(whitened.basis->gram()));
}

}  // namespace fkica
