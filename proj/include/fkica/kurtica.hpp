#pragma once

// Kurtosis operator of whitened functional data and its plain and
// roughness-penalized eigenproblems.
//
// With whitened coefficients Ã over a basis with Gram G and penalty P, the
// penalized problem is
//
//     G^{1/2} Σ4 G^{1/2} b = κ (G + θP) b,
//     Σ4 = n⁻¹ G^{1/2} Ãᵀ D Ã G^{1/2},  D = diag(Ã G̃ Ãᵀ),
//
// with G̃ = (L⁻¹G)ᵀ(L⁻¹G) and G + θP = LLᵀ. It is reduced to the symmetric
// problem L⁻¹ G^{1/2} Σ4 G^{1/2} L⁻ᵀ v = κ v and b = L⁻ᵀ v. At θ = 0, G̃ = G.

#include <cmath>
#include <string>

#include "fkica/errors.hpp"
#include "fkica/funbasis.hpp"
#include "fkica/specmat.hpp"
#include "fkica/whitening.hpp"

namespace fkica {

/// Maximum Frobenius deviation of the whitened covariance from I accepted as
/// "whitened".
inline constexpr double kWhitenedTolerance = 1e-6;

struct KurtosisModel {
  double theta = 0.0;
  /// Lower Cholesky factor of G + θP.
  Matrix l;
  /// Eigenvalues, descending.
  Vector kappa;
  /// Orthonormal eigenvectors of the reduced problem (columns).
  Matrix v;
  /// Weight-function coefficients b_j = L⁻ᵀ v_j (columns).
  Matrix b;
  BasisPtr basis;

  int dimension() const { return static_cast<int>(kappa.size()); }
};

struct ICScores {
  /// n×q scores; column j belongs to weight function j.
  Matrix xi;
  /// κ_j - (q - 1), equal to 3 for Gaussian data.
  Vector normalized_kurtosis;
  /// Classical coefficient m4/m2² of each centered score column.
  Vector score_kurtosis;
};

/// m4/m2² of a centered sample; 0 for a constant sample.
inline double kurtosis_coefficient(const Vector& s) {
  if (s.size() == 0) return 0.0;
  const Vector c = s.array() - s.mean();
  const double m2 = c.squaredNorm() / static_cast<double>(c.size());
  if (!(m2 > 0.0)) return 0.0;
  const double m4 = c.array().pow(4).sum() / static_cast<double>(c.size());
  return m4 / (m2 * m2);
}

namespace detail {

inline Matrix kurtosis_matrix_impl(const Matrix& whitened, const Matrix& gram_sqrt,
                                   const Matrix& norm_metric) {
  const Eigen::Index n = whitened.rows();
  const Vector d = (whitened * norm_metric).cwiseProduct(whitened).rowwise().sum();
  const Matrix y = whitened * gram_sqrt;
  Matrix k = y.transpose() * d.asDiagonal() * y / static_cast<double>(n);
  return 0.5 * (k + k.transpose());
}

inline void require_whitened(const FDataSet& whitened, const Matrix& gram_sqrt) {
  const double dev = hs_distance_to_identity(whitened_covariance(whitened, gram_sqrt));
  if (dev > kWhitenedTolerance) {
    throw Error(ErrorKind::NotWhitened,
                "whitened covariance deviates from identity by " + std::to_string(dev), dev);
  }
}

}  // namespace detail

enum class WhitenedCheck { Strict, Skip };

/// n⁻¹ G^{1/2} Ãᵀ D Ã G^{1/2} with D_ii = ã_iᵀ G ã_i.
inline Matrix kurtosis_matrix(const FDataSet& whitened, WhitenedCheck check = WhitenedCheck::Strict) {
  const Matrix& g = whitened.basis->gram();
  const Matrix gs = sqrt_psd(g);
  if (check == WhitenedCheck::Strict) detail::require_whitened(whitened, gs);
  return detail::kurtosis_matrix_impl(whitened.coefficients, gs, g);
}

/// Unpenalized eigenproblem; B = G^{-1/2} U for the eigenvectors U of the
/// kurtosis matrix.
inline KurtosisModel solve_plain(const FDataSet& whitened,
                                 WhitenedCheck check = WhitenedCheck::Strict) {
  const Matrix& g = whitened.basis->gram();
  const EigenSystem ges = sym_eigen(g);
  const Matrix gs = spectral_apply(ges, [](double l) { return std::sqrt(l); });
  const Matrix gis = spectral_apply(ges, [](double l) { return 1.0 / std::sqrt(l); });
  if (check == WhitenedCheck::Strict) detail::require_whitened(whitened, gs);
  const Matrix k = detail::kurtosis_matrix_impl(whitened.coefficients, gs, g);
  const EigenSystem es = sym_eigen(k);
  KurtosisModel model;
  model.theta = 0.0;
  model.basis = whitened.basis;
  model.l = cholesky_lower(g);
  model.kappa = es.values;
  model.b = gis * es.vectors;
  model.v = model.l.transpose() * model.b;
  return model;
}

/// Penalized eigenproblem. θ = 0 takes the unpenalized path, so both agree
/// exactly.
inline KurtosisModel solve_penalized(const FDataSet& whitened, double theta,
                                     WhitenedCheck check = WhitenedCheck::Strict) {
  if (!(theta >= 0.0) || !std::isfinite(theta)) {
    throw Error(ErrorKind::InvalidConfig, "theta must be finite and non-negative", theta);
  }
  if (theta == 0.0) return solve_plain(whitened, check);
  const Matrix& g = whitened.basis->gram();
  const Matrix gs = sqrt_psd(g);
  if (check == WhitenedCheck::Strict) detail::require_whitened(whitened, gs);
  const Matrix g_theta = g + theta * whitened.basis->penalty();
  Matrix l;
  try {
    l = cholesky_lower(0.5 * (g_theta + g_theta.transpose()));
  } catch (const Error&) {
    throw Error(ErrorKind::PenaltyNotPD, "G + theta*P is not positive definite", theta);
  }
  const Matrix l_inv = lower_inverse(l);
  const Matrix li_g = l_inv * g;
  const Matrix g_tilde = li_g.transpose() * li_g;
  const Matrix sigma4 = detail::kurtosis_matrix_impl(whitened.coefficients, gs, g_tilde);
  const Matrix reduced = l_inv * gs * sigma4 * gs * l_inv.transpose();
  const EigenSystem es = sym_eigen(0.5 * (reduced + reduced.transpose()));
  KurtosisModel model;
  model.theta = theta;
  model.basis = whitened.basis;
  model.l = l;
  model.kappa = es.values;
  model.v = es.vectors;
  model.b = l_inv.transpose() * es.vectors;
  return model;
}

/// ξ = Ã G B together with the normalized and classical kurtosis per column.
/// With `standardize`, each score column is scaled to unit variance.
inline ICScores scores(const KurtosisModel& model, const FDataSet& whitened,
                       bool standardize = false) {
  require_same_basis(*model.basis, *whitened.basis);
  ICScores out;
  out.xi = whitened.coefficients * whitened.basis->gram() * model.b;
  const int q = model.dimension();
  out.normalized_kurtosis = model.kappa.array() - static_cast<double>(q - 1);
  out.score_kurtosis.resize(q);
  for (int j = 0; j < q; ++j) {
    const Vector col = out.xi.col(j);
    out.score_kurtosis(j) = kurtosis_coefficient(col);
    if (standardize) {
      const Vector c = col.array() - col.mean();
      const double sd = std::sqrt(c.squaredNorm() / static_cast<double>(c.size()));
      if (sd > 0.0) out.xi.col(j) /= sd;
    }
  }
  return out;
}

/// Coefficient matrices of the smoothing operators for G + θP: S² = (G+θP)⁻¹G
/// and its square root S (self-adjoint in the θ inner product).
struct SmoothingOperators {
  Matrix s2;
  Matrix s;
  Matrix s_inv;
};

inline SmoothingOperators smoothing_operators(const FunctionalBasis& basis, double theta) {
  const Matrix& g = basis.gram();
  const Matrix g_theta = g + theta * basis.penalty();
  const Matrix l = cholesky_lower(0.5 * (g_theta + g_theta.transpose()));
  const Matrix l_inv = lower_inverse(l);
  // In θ-orthonormal coordinates (f ↦ Lᵀf) S² acts as M = L⁻¹ G L⁻ᵀ.
  const Matrix m = l_inv * g * l_inv.transpose();
  const EigenSystem es = sym_eigen(0.5 * (m + m.transpose()));
  SmoothingOperators out;
  out.s2 = g_theta.llt().solve(g);
  out.s = l_inv.transpose() * spectral_apply(es, [](double x) { return std::sqrt(x); }) *
          l.transpose();
  out.s_inv = l_inv.transpose() *
              spectral_apply(es, [](double x) { return 1.0 / std::sqrt(x); }) * l.transpose();
  return out;
}

struct Eigenfunction {
  /// Coefficients of the weight function ψ_θ,j.
  Vector weight;
  /// Coefficients of S⁻¹ψ_θ,j, the eigenfunction of the half-smoothed problem.
  Vector representer;
};

/// Zero-based index j < q.
inline Eigenfunction eigenfunction(const KurtosisModel& model, int j) {
  if (j < 0 || j >= model.dimension()) {
    throw Error(ErrorKind::IndexOutOfRange, "eigenfunction index " + std::to_string(j));
  }
  Eigenfunction out;
  out.weight = model.b.col(j);
  if (model.theta == 0.0) {
    out.representer = out.weight;
    return out;
  }
  out.representer = smoothing_operators(*model.basis, model.theta).s_inv * out.weight;
  return out;
}

/// The three equivalent projections of whitened curves onto the weight
/// functions: ⟨X, ψ⟩, ⟨S²X, ψ⟩_θ and ⟨SX, S⁻¹ψ⟩, each n×q.
struct ProjectionForms {
  Matrix direct;
  Matrix smoothed_theta;
  Matrix half_smoothed;
};

inline ProjectionForms projection_forms(const KurtosisModel& model, const FDataSet& whitened) {
  require_same_basis(*model.basis, *whitened.basis);
  const FunctionalBasis& basis = *model.basis;
  const Matrix& g = basis.gram();
  const SmoothingOperators ops = smoothing_operators(basis, model.theta);
  const Matrix& a = whitened.coefficients;
  ProjectionForms out;
  out.direct = a * g * model.b;
  // ⟨f, h⟩_θ = (Lᵀf)ᵀ(Lᵀh), and Lᵀ S² f = L⁻¹ G f.
  const Matrix lt_s2a = model.l.triangularView<Eigen::Lower>().solve(g * a.transpose());
  out.smoothed_theta = lt_s2a.transpose() * (model.l.transpose() * model.b);
  out.half_smoothed = (a * ops.s.transpose()) * g * (ops.s_inv * model.b);
  return out;
}

}  // namespace fkica
