#pragma once

// Picard-type diagnostics: decay of principal-component projections against
// the covariance eigenvalues, truncation selection, RKHS partial sums and
// held-out whitening consistency.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "fkica/errors.hpp"
#include "fkica/funbasis.hpp"
#include "fkica/specmat.hpp"
#include "fkica/whitening.hpp"

namespace fkica {

inline constexpr double kDefaultPicardBand = 0.5;
inline constexpr int kDefaultPicardMargin = 2;

struct PicardReport {
  Eigen::Index n = 0;
  Vector eigenvalues;
  Vector mean_abs_scores;
  Vector mean_sq_scores;
  /// ρ_j = log(mean_i s_ij² / λ_j).
  Vector log_ratio;
  /// Σ_{j≤k} v_j²/λ_j for the class mean difference; empty without labels.
  Vector rkhs_partial;
  int selected_q = 0;
  int delta = kDefaultPicardMargin;
  bool no_stable_point = false;
};

namespace detail {

inline PicardReport picard_from(const EigenSystem& es, const Matrix& scores, Eigen::Index n) {
  PicardReport r;
  r.n = n;
  r.eigenvalues = es.values;
  const auto m = static_cast<double>(scores.rows());
  r.mean_abs_scores = scores.cwiseAbs().colwise().sum().transpose() / m;
  r.mean_sq_scores = scores.cwiseAbs2().colwise().sum().transpose() / m;
  r.log_ratio.resize(es.values.size());
  for (Eigen::Index j = 0; j < es.values.size(); ++j) {
    const double lam = std::max(es.values(j), std::numeric_limits<double>::min());
    const double s2 = std::max(r.mean_sq_scores(j), std::numeric_limits<double>::min());
    r.log_ratio(j) = std::log(s2 / lam);
  }
  return r;
}

inline Vector rkhs_partial_sums(const Vector& v, const Vector& lambda) {
  Vector out(v.size());
  double acc = 0.0;
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    if (lambda(j) > 0.0) acc += v(j) * v(j) / lambda(j);
    out(j) = acc;
  }
  return out;
}

}  // namespace detail

/// Partial sums Σ_{j≤k} v_j²/λ_j; terms with λ_j ≤ 0 are skipped.
inline Vector rkhs_partial_sums(const Vector& v, const Vector& lambda) {
  if (v.size() != lambda.size()) throw Error(ErrorKind::InvalidConfig, "length mismatch");
  return detail::rkhs_partial_sums(v, lambda);
}

/// In-sample report. The data are centered at their pooled mean; with labels
/// the partial RKHS sums of the class mean difference are included.
inline PicardReport picard_series(const FDataSet& data) {
  const Eigen::Index n = data.size();
  if (n < 3) throw Error(ErrorKind::InsufficientSamples, "Picard series needs n >= 3");
  const Matrix gs = sqrt_psd(data.basis->gram());
  const Vector mean = column_mean(data.coefficients);
  const EigenSystem es = sym_eigen(gram_metric_covariance(data.coefficients, gs, mean));
  const Matrix scores = (data.coefficients.rowwise() - mean.transpose()) * gs * es.vectors;
  PicardReport r = detail::picard_from(es, scores, n);
  if (data.labels) {
    const auto r0 = data.class_rows(0);
    const auto r1 = data.class_rows(1);
    if (!r0.empty() && !r1.empty()) {
      const Vector delta = column_mean(data.subset(r0).coefficients) -
                           column_mean(data.subset(r1).coefficients);
      r.rkhs_partial = detail::rkhs_partial_sums(es.vectors.transpose() * gs * delta, es.values);
    }
  }
  return r;
}

/// Eigenpairs from `train`, projections of `test` centered at the training mean.
inline PicardReport picard_series(const FDataSet& train, const FDataSet& test) {
  require_same_basis(*train.basis, *test.basis);
  if (train.size() < 3) throw Error(ErrorKind::InsufficientSamples, "Picard series needs n >= 3");
  if (test.size() < 1) throw Error(ErrorKind::InsufficientSamples, "empty evaluation set");
  const Matrix gs = sqrt_psd(train.basis->gram());
  const Vector mean = column_mean(train.coefficients);
  const EigenSystem es = sym_eigen(gram_metric_covariance(train.coefficients, gs, mean));
  const Matrix scores = (test.coefficients.rowwise() - mean.transpose()) * gs * es.vectors;
  return detail::picard_from(es, scores, train.size());
}

struct QSelection {
  int q = 2;
  bool no_stable_point = false;
};

/// Smallest q whose next δ log-ratios (components q+1..q+δ, 1-based) all lie
/// in |ρ| ≤ band, clamped to [2, n-1]. Without such q, n-1 is returned and
/// flagged.
inline QSelection select_q(const Vector& log_ratio, Eigen::Index n, int delta = kDefaultPicardMargin,
                           double band = kDefaultPicardBand) {
  if (delta < 0) throw Error(ErrorKind::InvalidConfig, "delta must be non-negative");
  const int len = static_cast<int>(log_ratio.size());
  const int hi = std::max<int>(2, static_cast<int>(n) - 1);
  auto clamp = [hi](int q) { return std::clamp(q, 2, hi); };
  for (int q = 1; q + delta <= len; ++q) {
    bool ok = true;
    for (int j = q + 1; j <= q + delta; ++j) {
      if (!(std::abs(log_ratio(j - 1)) <= band)) {
        ok = false;
        break;
      }
    }
    if (ok) return {clamp(q), false};
  }
  return {hi, true};
}

inline QSelection select_q(PicardReport& report, int delta = kDefaultPicardMargin,
                           double band = kDefaultPicardBand) {
  const QSelection s = select_q(report.log_ratio, report.n, delta, band);
  report.selected_q = s.q;
  report.delta = delta;
  report.no_stable_point = s.no_stable_point;
  return s;
}

/// Writes one row per component.
inline void write_picard_csv(const PicardReport& r, std::ostream& os) {
  os << "component,eigenvalue,mean_abs_score,mean_sq_score,log_ratio";
  const bool rk = r.rkhs_partial.size() == r.eigenvalues.size();
  if (rk) os << ",rkhs_partial";
  os << '\n';
  const auto old = os.precision(17);
  for (Eigen::Index j = 0; j < r.eigenvalues.size(); ++j) {
    os << j + 1 << ',' << r.eigenvalues(j) << ',' << r.mean_abs_scores(j) << ','
       << r.mean_sq_scores(j) << ',' << r.log_ratio(j);
    if (rk) os << ',' << r.rkhs_partial(j);
    os << '\n';
  }
  os.precision(old);
}

/// Clipped |κ - 3|/2: 0 for a Gaussian tail, approaching 1 at mutual singularity.
inline double singularity_distance(double normalized_kurtosis_last) {
  return std::min(std::abs(normalized_kurtosis_last - 3.0) / 2.0, 1.0 - 1e-12);
}

struct ConsistencyPoint {
  int q = 0;
  double train_deviation = 0.0;
  double heldout_deviation = 0.0;
};

/// For each q: fit a q-dimensional B-spline basis, whiten the even-indexed
/// curves and measure ‖Ĉ - I‖_F for the whitened training half and for the
/// odd-indexed half (covariance about its own mean).
inline std::vector<ConsistencyPoint> whitening_consistency_curve(
    std::span<const double> grid, const Matrix& samples, WhiteningMethod method,
    const std::vector<int>& q_range, int order = 4, int penalty_order = 2,
    double tol = kDefaultEigenTol) {
  if (grid.empty()) throw Error(ErrorKind::InvalidConfig, "empty grid");
  const Eigen::Index n = samples.rows();
  for (int q : q_range) {
    if (q >= n) throw Error(ErrorKind::InsufficientSamples, "q must be below n");
  }
  std::vector<Eigen::Index> even, odd;
  for (Eigen::Index i = 0; i < n; ++i) (i % 2 == 0 ? even : odd).push_back(i);
  const auto [lo, hi] = std::minmax_element(grid.begin(), grid.end());
  std::vector<ConsistencyPoint> out;
  for (int q : q_range) {
    auto basis = std::make_shared<const FunctionalBasis>(
        build_basis({*lo, *hi}, std::min(order, q), q, std::min(penalty_order, std::min(order, q) - 1)));
    const FDataSet all = fit_curves(basis, grid, samples);
    const FDataSet train = all.subset(even);
    const FDataSet test = all.subset(odd);
    const WhiteningModel wm = fit_whitening(train, method, tol);
    ConsistencyPoint p;
    p.q = q;
    const Matrix gs = wm.gram_sqrt;
    p.train_deviation = hs_distance_to_identity(whitened_covariance(apply_whitening(wm, train), gs));
    const FDataSet wt = apply_whitening(wm, test);
    const Vector m = column_mean(wt.coefficients);
    p.heldout_deviation = hs_distance_to_identity(gram_metric_covariance(wt.coefficients, gs, m));
    out.push_back(p);
  }
  return out;
}

}  // namespace fkica
