#pragma once

// B-spline bases on an interval, their Gram and roughness-penalty matrices,
// and least-squares representation of sampled curves.

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fkica/errors.hpp"
#include "fkica/specmat.hpp"

namespace fkica {

/// Gauss–Legendre nodes and weights on [-1, 1] (Golub–Welsch).
inline std::pair<Vector, Vector> gauss_legendre(int n) {
  Matrix jacobi = Matrix::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    jacobi(k, k - 1) = b;
    jacobi(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(jacobi);
  Vector nodes = solver.eigenvalues();
  Vector weights(n);
  for (int i = 0; i < n; ++i) {
    const double v0 = solver.eigenvectors()(0, i);
    weights(i) = 2.0 * v0 * v0;
  }
  return {nodes, weights};
}

/// A finite function system. Either a clamped B-spline basis, or a linear
/// recombination of one (`transform` maps coefficients of this system to
/// coefficients of the underlying splines, so φ̃ = transformᵀ φ).
class FunctionalBasis {
 public:
  double t_min() const { return t_min_; }
  double t_max() const { return t_max_; }
  int order() const { return order_; }
  int n_splines() const { return n_splines_; }
  int penalty_order() const { return penalty_order_; }
  const std::vector<double>& knots() const { return knots_; }
  bool has_transform() const { return transform_.size() > 0; }
  const Matrix& transform() const { return transform_; }

  int dimension() const {
    return has_transform() ? static_cast<int>(transform_.cols()) : n_splines_;
  }
  const Matrix& gram() const { return gram_; }
  const Matrix& penalty() const { return penalty_; }

  /// Values (deriv = 0) or derivatives of every basis function at x.
  Vector evaluate(double x, int deriv = 0) const {
    Vector raw = spline_values(x, deriv);
    return has_transform() ? Vector(transform_.transpose() * raw) : raw;
  }

  /// m×dimension matrix of basis evaluations at the grid points.
  Matrix design(std::span<const double> grid, int deriv = 0) const {
    Matrix out(static_cast<Eigen::Index>(grid.size()), dimension());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      out.row(static_cast<Eigen::Index>(i)) = evaluate(grid[i], deriv).transpose();
    }
    return out;
  }

  /// Exact equality of the function system (same knots, order, penalty and
  /// recombination).
  bool same_as(const FunctionalBasis& other) const {
    return t_min_ == other.t_min_ && t_max_ == other.t_max_ && order_ == other.order_ &&
           n_splines_ == other.n_splines_ && penalty_order_ == other.penalty_order_ &&
           knots_ == other.knots_ && transform_.rows() == other.transform_.rows() &&
           transform_.cols() == other.transform_.cols() && transform_ == other.transform_;
  }

  friend FunctionalBasis build_basis(std::pair<double, double>, int, int, int);
  friend FunctionalBasis recombine_basis(const FunctionalBasis&, const Matrix&);

 private:
  FunctionalBasis() = default;

  Vector spline_values(double x, int deriv) const {
    const double span_len = t_max_ - t_min_;
    if (x < t_min_ - 1e-12 * span_len || x > t_max_ + 1e-12 * span_len) {
      throw Error(ErrorKind::IndexOutOfRange,
                  "evaluation point " + std::to_string(x) + " outside the basis interval");
    }
    x = std::clamp(x, t_min_, t_max_);
    // Knot span s with knots[s] <= x < knots[s+1]; the right endpoint belongs
    // to the last non-degenerate span.
    const int n_knots = static_cast<int>(knots_.size());
    int s = order_ - 1;
    for (int i = order_ - 1; i < n_knots - order_; ++i) {
      if (knots_[i] <= x && x < knots_[i + 1]) {
        s = i;
        break;
      }
      if (knots_[i] < knots_[i + 1]) s = i;
    }
    return values_recursive(x, s, order_, deriv);
  }

  // Values of all order-k splines (n_knots - k of them) or their deriv-th
  // derivative, using the standard recurrences.
  Vector values_recursive(double x, int s, int k, int deriv) const {
    const int n_knots = static_cast<int>(knots_.size());
    const int count = n_knots - k;
    Vector out = Vector::Zero(count);
    if (deriv >= k) return out;
    if (deriv == 0) {
      Vector n1 = Vector::Zero(n_knots - 1);
      n1(s) = 1.0;
      Vector cur = n1;
      for (int kk = 2; kk <= k; ++kk) {
        Vector next = Vector::Zero(n_knots - kk);
        for (int i = 0; i < n_knots - kk; ++i) {
          double acc = 0.0;
          const double d1 = knots_[i + kk - 1] - knots_[i];
          const double d2 = knots_[i + kk] - knots_[i + 1];
          if (d1 > 0.0) acc += (x - knots_[i]) / d1 * cur(i);
          if (d2 > 0.0) acc += (knots_[i + kk] - x) / d2 * cur(i + 1);
          next(i) = acc;
        }
        cur = std::move(next);
      }
      return cur;
    }
    const Vector lower = values_recursive(x, s, k - 1, deriv - 1);
    for (int i = 0; i < count; ++i) {
      double acc = 0.0;
      const double d1 = knots_[i + k - 1] - knots_[i];
      const double d2 = knots_[i + k] - knots_[i + 1];
      if (d1 > 0.0) acc += lower(i) / d1;
      if (d2 > 0.0) acc -= lower(i + 1) / d2;
      out(i) = (k - 1) * acc;
    }
    return out;
  }

  void compute_matrices() {
    const int nodes = order_ + 1;
    const auto [gx, gw] = gauss_legendre(nodes);
    Matrix g = Matrix::Zero(n_splines_, n_splines_);
    Matrix p = Matrix::Zero(n_splines_, n_splines_);
    for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
      const double a = knots_[i];
      const double b = knots_[i + 1];
      if (!(b > a)) continue;
      const double half = 0.5 * (b - a);
      const double mid = 0.5 * (a + b);
      for (int k = 0; k < nodes; ++k) {
        const double x = mid + half * gx(k);
        const double w = half * gw(k);
        const Vector v = spline_values(x, 0);
        const Vector d = spline_values(x, penalty_order_);
        g.noalias() += w * v * v.transpose();
        p.noalias() += w * d * d.transpose();
      }
    }
    g = 0.5 * (g + g.transpose());
    p = 0.5 * (p + p.transpose());
    if (has_transform()) {
      gram_ = transform_.transpose() * g * transform_;
      penalty_ = transform_.transpose() * p * transform_;
      gram_ = 0.5 * (gram_ + gram_.transpose());
      penalty_ = 0.5 * (penalty_ + penalty_.transpose());
    } else {
      gram_ = std::move(g);
      penalty_ = std::move(p);
    }
  }

  double t_min_ = 0.0;
  double t_max_ = 1.0;
  int order_ = 4;
  int n_splines_ = 0;
  int penalty_order_ = 2;
  std::vector<double> knots_;
  Matrix transform_;
  Matrix gram_;
  Matrix penalty_;
};

/// Clamped B-spline basis with equispaced interior knots.
inline FunctionalBasis build_basis(std::pair<double, double> interval, int order, int n_basis,
                                   int penalty_order) {
  const auto [a, b] = interval;
  if (!(b > a) || !std::isfinite(a) || !std::isfinite(b)) {
    throw Error(ErrorKind::InvalidBasisSpec, "degenerate interval");
  }
  if (order < 1) throw Error(ErrorKind::InvalidBasisSpec, "order must be positive");
  if (n_basis < order) throw Error(ErrorKind::InvalidBasisSpec, "n_basis must be >= order");
  if (penalty_order < 0 || penalty_order >= order) {
    throw Error(ErrorKind::InvalidBasisSpec, "penalty order must satisfy 0 <= r < order");
  }
  FunctionalBasis fb;
  fb.t_min_ = a;
  fb.t_max_ = b;
  fb.order_ = order;
  fb.n_splines_ = n_basis;
  fb.penalty_order_ = penalty_order;
  const int interior = n_basis - order;
  fb.knots_.assign(order, a);
  for (int i = 1; i <= interior; ++i) {
    fb.knots_.push_back(a + (b - a) * static_cast<double>(i) / (interior + 1));
  }
  fb.knots_.insert(fb.knots_.end(), order, b);
  fb.compute_matrices();
  return fb;
}

/// Basis spanned by linear combinations of `parent`'s functions; column j of
/// `transform` holds the parent coefficients of the new j-th function.
inline FunctionalBasis recombine_basis(const FunctionalBasis& parent, const Matrix& transform) {
  if (transform.rows() != parent.dimension() || transform.cols() < 1) {
    throw Error(ErrorKind::InvalidBasisSpec, "transform rows must match the parent dimension");
  }
  FunctionalBasis fb = parent;
  fb.transform_ = parent.has_transform() ? Matrix(parent.transform_ * transform) : transform;
  fb.compute_matrices();
  return fb;
}

using BasisPtr = std::shared_ptr<const FunctionalBasis>;

enum class CenterMode { Pooled, PerGroup };

/// n curves as rows of coefficients over a shared basis.
struct FDataSet {
  BasisPtr basis;
  Matrix coefficients;
  std::optional<std::vector<int>> labels;
  /// Pooled mean that was subtracted, when centered.
  std::optional<Vector> center;
  /// Class means that were subtracted under per-group centering.
  std::optional<std::array<Vector, 2>> group_centers;

  Eigen::Index size() const { return coefficients.rows(); }
  int dimension() const { return static_cast<int>(coefficients.cols()); }
  bool has_labels() const { return labels.has_value(); }

  /// Rows whose label equals k.
  std::vector<Eigen::Index> class_rows(int k) const {
    std::vector<Eigen::Index> rows;
    if (!labels) return rows;
    for (std::size_t i = 0; i < labels->size(); ++i) {
      if ((*labels)[i] == k) rows.push_back(static_cast<Eigen::Index>(i));
    }
    return rows;
  }

  FDataSet subset(std::span<const Eigen::Index> rows) const {
    FDataSet out;
    out.basis = basis;
    out.coefficients.resize(static_cast<Eigen::Index>(rows.size()), coefficients.cols());
    std::vector<int> lab;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      out.coefficients.row(static_cast<Eigen::Index>(i)) = coefficients.row(rows[i]);
      if (labels) lab.push_back((*labels)[static_cast<std::size_t>(rows[i])]);
    }
    if (labels) out.labels = std::move(lab);
    out.center = center;
    out.group_centers = group_centers;
    return out;
  }
};

inline void require_same_basis(const FunctionalBasis& a, const FunctionalBasis& b) {
  if (&a != &b && !a.same_as(b)) {
    throw Error(ErrorKind::BasisMismatch, "datasets are expressed over different bases");
  }
}

inline void validate_labels(const std::vector<int>& labels, Eigen::Index n) {
  if (static_cast<Eigen::Index>(labels.size()) != n) {
    throw Error(ErrorKind::InvalidConfig, "label count does not match curve count");
  }
  for (int l : labels) {
    if (l != 0 && l != 1) throw Error(ErrorKind::InvalidConfig, "labels must be 0 or 1");
  }
}

/// Least-squares coefficients of each sampled curve (rows of `samples`).
inline FDataSet fit_curves(BasisPtr basis, std::span<const double> grid, const Matrix& samples,
                           std::optional<std::vector<int>> labels = std::nullopt) {
  const auto m = static_cast<Eigen::Index>(grid.size());
  if (samples.cols() != m) {
    throw Error(ErrorKind::RankDeficientDesign, "sample columns do not match grid length");
  }
  const int q = basis->dimension();
  if (m < q) throw Error(ErrorKind::RankDeficientDesign, "fewer grid points than basis functions");
  const Matrix phi = basis->design(grid);
  const Matrix normal = phi.transpose() * phi;
  const EigenSystem es = sym_eigen(normal);
  const double lmax = es.values(0);
  const double lmin = es.values(q - 1);
  if (!(lmax > 0.0) || lmin <= 1e-12 * lmax) {
    throw Error(ErrorKind::RankDeficientDesign, "basis design matrix is rank deficient", lmin);
  }
  // A = samples Φ (ΦᵀΦ)⁻¹, solved rather than inverted.
  Eigen::LLT<Matrix> llt(normal);
  const Matrix rhs = (samples * phi).transpose();
  FDataSet out;
  out.basis = std::move(basis);
  out.coefficients = llt.solve(rhs).transpose();
  if (labels) {
    validate_labels(*labels, samples.rows());
    out.labels = std::move(labels);
  }
  return out;
}

inline Vector column_mean(const Matrix& a) {
  if (a.rows() == 0) return Vector::Zero(a.cols());
  return a.colwise().mean().transpose();
}

inline FDataSet center(const FDataSet& data, CenterMode mode = CenterMode::Pooled) {
  FDataSet out = data;
  if (mode == CenterMode::Pooled) {
    const Vector mean = column_mean(data.coefficients);
    out.coefficients.rowwise() -= mean.transpose();
    out.center = data.center ? Vector(*data.center + mean) : mean;
    return out;
  }
  if (!data.labels) throw Error(ErrorKind::MissingLabels, "per-group centering needs labels");
  std::array<Vector, 2> means;
  for (int k = 0; k < 2; ++k) {
    const auto rows = data.class_rows(k);
    means[static_cast<std::size_t>(k)] = Vector::Zero(data.dimension());
    if (rows.empty()) continue;
    for (auto r : rows) means[static_cast<std::size_t>(k)] += data.coefficients.row(r).transpose();
    means[static_cast<std::size_t>(k)] /= static_cast<double>(rows.size());
    for (auto r : rows) out.coefficients.row(r) -= means[static_cast<std::size_t>(k)].transpose();
  }
  out.group_centers = means;
  return out;
}

/// Curve values at the grid points for every row of the dataset (n×m).
inline Matrix reconstruct(const FDataSet& data, std::span<const double> grid) {
  return data.coefficients * data.basis->design(grid).transpose();
}

}  // namespace fkica
