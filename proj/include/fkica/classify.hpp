#pragma once

// Centroid classification along one direction β: a curve x is scored by
// ξ = ⟨x - center, β⟩ and assigned to the class whose mean score is nearest.

#include <array>
#include <cmath>
#include <functional>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fkica/errors.hpp"
#include "fkica/funbasis.hpp"
#include "fkica/kurtica.hpp"
#include "fkica/specmat.hpp"
#include "fkica/whitening.hpp"

namespace fkica {

enum class Selector { PC1, PCm, ICq, SICq };

inline std::string_view to_string(Selector s) {
  switch (s) {
    case Selector::PC1: return "PC1";
    case Selector::PCm: return "PCm";
    case Selector::ICq: return "ICq";
    case Selector::SICq: return "SICq";
  }
  return "?";
}

inline Selector parse_selector(std::string_view s) {
  for (auto sel : {Selector::PC1, Selector::PCm, Selector::ICq, Selector::SICq}) {
    if (s == to_string(sel)) return sel;
  }
  if (s == "pc1") return Selector::PC1;
  if (s == "pcm") return Selector::PCm;
  if (s == "icq") return Selector::ICq;
  if (s == "sicq") return Selector::SICq;
  throw Error(ErrorKind::InvalidConfig, "unknown selector '" + std::string(s) + "'");
}

struct CentroidModel {
  Selector selector = Selector::ICq;
  WhiteningMethod method = WhiteningMethod::ZCA;
  double theta = 0.0;
  int q = 0;
  /// Group-wise reduction rank, 0 when not reduced.
  int reduce_p = 0;
  BasisPtr basis;
  /// Training pooled mean coefficients.
  Vector center;
  /// Direction in the coefficient space of `basis`.
  Vector beta;
  std::optional<std::array<double, 2>> class_means;
  /// Set by train() when both class means coincide; predictions are then class 0.
  bool degenerate = false;
  /// κ - (q-1) of the selected component (IC selectors) or NaN.
  double normalized_kurtosis = std::numeric_limits<double>::quiet_NaN();
  /// m4/m2² of the training scores along β.
  double score_kurtosis = std::numeric_limits<double>::quiet_NaN();
};

/// ξ_i = (a_i - center)ᵀ G β.
inline Vector project(const CentroidModel& model, const FDataSet& data) {
  require_same_basis(*model.basis, *data.basis);
  return (data.coefficients.rowwise() - model.center.transpose()) * model.basis->gram() *
         model.beta;
}

/// Chooses β from (uncentered) training coefficients. Class means are left
/// unset; see train().
inline CentroidModel select_direction(const FDataSet& data, Selector selector,
                                      WhiteningMethod method = WhiteningMethod::ZCA,
                                      double theta = 0.0, double tol = kDefaultEigenTol) {
  CentroidModel model;
  model.selector = selector;
  model.method = method;
  model.theta = selector == Selector::SICq ? theta : 0.0;
  model.q = data.dimension();
  model.basis = data.basis;
  model.center = column_mean(data.coefficients);
  const Matrix& g = data.basis->gram();
  const EigenSystem ges = sym_eigen(g);
  const Matrix gs = spectral_apply(ges, [](double l) { return std::sqrt(l); });
  const Matrix gis = spectral_apply(ges, [](double l) { return 1.0 / std::sqrt(l); });

  if (selector == Selector::PC1 || selector == Selector::PCm) {
    const Matrix c = gram_metric_covariance(data.coefficients, gs, model.center);
    const EigenSystem es = sym_eigen(c);
    const Matrix centered_b = (data.coefficients.rowwise() - model.center.transpose()) * gs;
    int pick = 0;
    if (selector == Selector::PCm) {
      double best = std::numeric_limits<double>::infinity();
      for (int j = 0; j < model.q; ++j) {
        if (!(es.values(j) > tol)) break;
        const double k = kurtosis_coefficient(centered_b * es.vectors.col(j));
        if (k < best) {
          best = k;
          pick = j;
        }
      }
    }
    model.beta = gis * es.vectors.col(pick);
    model.score_kurtosis = kurtosis_coefficient(centered_b * es.vectors.col(pick));
    return model;
  }

  const WhiteningModel wm = fit_whitening(data, method, tol);
  const FDataSet whitened = apply_whitening(wm, data);
  const KurtosisModel km = solve_penalized(whitened, model.theta);
  const int last = km.dimension() - 1;
  // Map the whitened-space weight function back so that
  // (a - center)ᵀ G β reproduces ãᵀ G b.
  model.beta = gis * wm.w.transpose() * gs * km.b.col(last);
  model.normalized_kurtosis = km.kappa(last) - static_cast<double>(km.dimension() - 1);
  model.score_kurtosis =
      kurtosis_coefficient(whitened.coefficients * whitened.basis->gram() * km.b.col(last));
  return model;
}

inline CentroidModel train(CentroidModel model, const FDataSet& data) {
  if (!data.labels) throw Error(ErrorKind::MissingLabels, "training needs labels");
  const Vector xi = project(model, data);
  std::array<double, 2> sums{0.0, 0.0};
  std::array<int, 2> counts{0, 0};
  for (Eigen::Index i = 0; i < xi.size(); ++i) {
    const int k = (*data.labels)[static_cast<std::size_t>(i)];
    sums[static_cast<std::size_t>(k)] += xi(i);
    ++counts[static_cast<std::size_t>(k)];
  }
  if (counts[0] == 0 || counts[1] == 0) {
    throw Error(ErrorKind::EmptyClass, "both classes need at least one training curve");
  }
  model.class_means = std::array<double, 2>{sums[0] / counts[0], sums[1] / counts[1]};
  model.degenerate = (*model.class_means)[0] == (*model.class_means)[1];
  return model;
}

struct Prediction {
  std::vector<int> labels;
  Vector scores;
};

/// Nearest class-mean score; ties go to class 0.
inline int assign_label(double xi, const std::array<double, 2>& means) {
  return std::abs(xi - means[1]) < std::abs(xi - means[0]) ? 1 : 0;
}

inline Prediction predict(const CentroidModel& model, const FDataSet& data) {
  if (!model.class_means) throw Error(ErrorKind::InvalidConfig, "model has not been trained");
  Prediction out;
  out.scores = project(model, data);
  out.labels.resize(static_cast<std::size_t>(out.scores.size()));
  for (Eigen::Index i = 0; i < out.scores.size(); ++i) {
    out.labels[static_cast<std::size_t>(i)] =
        model.degenerate ? 0 : assign_label(out.scores(i), *model.class_means);
  }
  return out;
}

/// Misclassification percentage.
inline double error_rate(const std::vector<int>& predicted, const std::vector<int>& truth) {
  if (predicted.size() != truth.size() || truth.empty()) {
    throw Error(ErrorKind::InvalidConfig, "prediction and truth sizes differ");
  }
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) wrong += predicted[i] != truth[i];
  return 100.0 * static_cast<double>(wrong) / static_cast<double>(truth.size());
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

/// Misclassification probability of the centroid rule along β for two
/// classes differing by μ_Δ with common covariance Γ (all in an orthonormal
/// coordinate system), assuming Gaussian projections:
/// π Φ(-|ν|/(2σ)) + (1-π) Φ(-|ν|/(2σ)), ν = ⟨μ_Δ, β⟩, σ² = ⟨β, Γβ⟩.
inline double theoretical_error(const Vector& beta, const Vector& mu_delta, const Matrix& gamma,
                                double pi = 0.5) {
  Eigen::LLT<Matrix> llt(gamma);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorKind::NonPDCovariance, "covariance is not positive definite");
  }
  const double var = beta.dot(gamma * beta);
  if (!(var > 0.0)) throw Error(ErrorKind::NonPDCovariance, "zero projected variance", var);
  const double nu = mu_delta.dot(beta);
  const double z = -std::abs(nu) / (2.0 * std::sqrt(var));
  return pi * normal_cdf(z) + (1.0 - pi) * normal_cdf(z);
}

// ---------------------------------------------------------------------------
// Group-wise FPCA reduction

/// Projects the centered curves of each class onto that class's p leading
/// principal functions and adds the class mean back. Row order and labels are
/// preserved.
inline FDataSet groupwise_fpca_reduce(const FDataSet& data, int p,
                                      double tol = kDefaultEigenTol) {
  if (!data.labels) throw Error(ErrorKind::MissingLabels, "group-wise reduction needs labels");
  const int q = data.dimension();
  if (p < 1 || p > q) throw Error(ErrorKind::RankTooHigh, "reduction rank must be in [1, q]");
  const Matrix& g = data.basis->gram();
  const EigenSystem ges = sym_eigen(g);
  const Matrix gs = spectral_apply(ges, [](double l) { return std::sqrt(l); });
  const Matrix gis = spectral_apply(ges, [](double l) { return 1.0 / std::sqrt(l); });
  FDataSet out = data;
  for (int k = 0; k < 2; ++k) {
    const auto rows = data.class_rows(k);
    if (rows.empty()) throw Error(ErrorKind::EmptyClass, "class without curves");
    const FDataSet part = data.subset(rows);
    const Vector mean = column_mean(part.coefficients);
    const Matrix c = gram_metric_covariance(part.coefficients, gs, mean);
    const EigenSystem es = sym_eigen(c);
    if (!(es.values(p - 1) > tol)) {
      throw Error(ErrorKind::RankTooHigh,
                  "class " + std::to_string(k) + " has fewer than p eigenvalues above tolerance",
                  es.values(p - 1));
    }
    const Matrix u = es.vectors.leftCols(p);
    const Matrix proj = gs * u * u.transpose() * gis;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Vector centered = part.coefficients.row(static_cast<Eigen::Index>(i)).transpose() - mean;
      out.coefficients.row(rows[i]) = (mean + proj.transpose() * centered).transpose();
    }
  }
  return out;
}

/// Data re-expressed on the leading pooled principal functions, which form
/// an orthonormal basis (Gram = I). The rank is the largest r <= r_max whose
/// covariance eigenvalues exceed tol and whose whitening is orthonormal to
/// 1e-8.
struct PrincipalCoordinates {
  FDataSet data;
  /// Input-basis coefficients of each principal function (columns).
  Matrix transform;
};

inline PrincipalCoordinates principal_coordinates(const FDataSet& data, int r_max,
                                                  double tol = kDefaultEigenTol) {
  const Matrix& g = data.basis->gram();
  const EigenSystem ges = sym_eigen(g);
  const Matrix gs = spectral_apply(ges, [](double l) { return std::sqrt(l); });
  const Matrix gis = spectral_apply(ges, [](double l) { return 1.0 / std::sqrt(l); });
  const Vector mean = column_mean(data.coefficients);
  const EigenSystem es = sym_eigen(gram_metric_covariance(data.coefficients, gs, mean));
  int r = 0;
  while (r < std::min<int>(r_max, data.dimension()) && es.values(r) > tol) ++r;
  r = std::min<int>(r, static_cast<int>(data.size()) - 1);
  for (; r >= 1; --r) {
    PrincipalCoordinates out;
    out.transform = gis * es.vectors.leftCols(r);
    out.data.basis = std::make_shared<const FunctionalBasis>(recombine_basis(*data.basis, out.transform));
    out.data.coefficients = data.coefficients * gs * es.vectors.leftCols(r);
    out.data.labels = data.labels;
    try {
      const WhiteningModel wm = fit_whitening(out.data, WhiteningMethod::ZCA, tol);
      const FDataSet w = apply_whitening(wm, out.data);
      if (hs_distance_to_identity(whitened_covariance(w)) <= 1e-8) return out;
    } catch (const Error&) {
    }
  }
  throw Error(ErrorKind::RankTooHigh, "no rank passes the whitening orthonormality check");
}

// ---------------------------------------------------------------------------
// Pipelines and cross-validation

struct PipelineConfig {
  Selector selector = Selector::ICq;
  WhiteningMethod method = WhiteningMethod::ZCA;
  double theta = 0.0;
  /// Group-wise reduction rank (0 = none).
  int reduce_p = 0;
  double tol = kDefaultEigenTol;
};

namespace detail {

// Direction + means on data already reduced group-wise: the classifier works
// in pooled principal coordinates and is mapped back to the input basis.
inline CentroidModel fit_on_reduced(const FDataSet& reduced, const PipelineConfig& cfg) {
  const PrincipalCoordinates pc = principal_coordinates(reduced, reduced.dimension(), cfg.tol);
  const CentroidModel inner =
      train(select_direction(pc.data, cfg.selector, cfg.method, cfg.theta, cfg.tol), pc.data);
  // With T the principal functions, TᵀGT = I, so the score
  // (c - c0)ᵀβ̃ of c = TᵀGa equals (a - T c0)ᵀ G (T β̃).
  CentroidModel out = inner;
  out.basis = reduced.basis;
  out.beta = pc.transform * inner.beta;
  out.center = pc.transform * inner.center;
  out.q = reduced.dimension();
  out.reduce_p = cfg.reduce_p;
  return out;
}

}  // namespace detail

/// Selects and trains a classifier. With reduce_p > 0 the training curves are
/// first reduced group-wise (using their labels).
inline CentroidModel fit_classifier(const FDataSet& data, const PipelineConfig& cfg) {
  if (cfg.reduce_p > 0) {
    return detail::fit_on_reduced(groupwise_fpca_reduce(data, cfg.reduce_p, cfg.tol), cfg);
  }
  return train(select_direction(data, cfg.selector, cfg.method, cfg.theta, cfg.tol), data);
}

/// Leave-one-out misclassification percentage. With reduce_p > 0 the
/// group-wise reduction is computed once on all labeled curves and each fold
/// classifies the held-out reduced curve.
inline double loo_error(const FDataSet& data, const PipelineConfig& cfg) {
  if (!data.labels) throw Error(ErrorKind::MissingLabels, "LOO needs labels");
  const FDataSet base = cfg.reduce_p > 0 ? groupwise_fpca_reduce(data, cfg.reduce_p, cfg.tol) : data;
  const Eigen::Index n = base.size();
  std::vector<Eigen::Index> rows;
  rows.reserve(static_cast<std::size_t>(n - 1));
  std::size_t wrong = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    rows.clear();
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j != i) rows.push_back(j);
    }
    const FDataSet fold = base.subset(rows);
    const Eigen::Index single[1] = {i};
    const FDataSet held = base.subset(single);
    const CentroidModel model =
        cfg.reduce_p > 0 ? detail::fit_on_reduced(fold, cfg)
                         : train(select_direction(fold, cfg.selector, cfg.method, cfg.theta, cfg.tol), fold);
    wrong += predict(model, held).labels[0] != (*data.labels)[static_cast<std::size_t>(i)];
  }
  return 100.0 * static_cast<double>(wrong) / static_cast<double>(n);
}

enum class CVCriterion { MinKurtosis, CVError };

struct CVCandidate {
  WhiteningMethod method = WhiteningMethod::ZCA;
  double theta = 0.0;
  int q = 0;
};

struct CVEntry {
  CVCandidate config;
  double score_kurtosis = std::numeric_limits<double>::quiet_NaN();
  double normalized_kurtosis = std::numeric_limits<double>::quiet_NaN();
  double loo_error = std::numeric_limits<double>::quiet_NaN();
  bool failed = false;
  std::string failure;
};

struct CVResult {
  CVCandidate best;
  std::vector<CVEntry> entries;
};

namespace detail {

inline int method_rank(WhiteningMethod m) {
  for (std::size_t i = 0; i < kAllWhiteningMethods.size(); ++i) {
    if (kAllWhiteningMethods[i] == m) return static_cast<int>(i);
  }
  return 99;
}

// Criterion values within 1e-9 (relative) are ties: smaller θ, then smaller q,
// then method order wins.
inline bool better(double va, const CVCandidate& a, double vb, const CVCandidate& b) {
  if (std::abs(va - vb) > 1e-9 * std::max(1.0, std::abs(vb))) return va < vb;
  if (a.theta != b.theta) return a.theta < b.theta;
  if (a.q != b.q) return a.q < b.q;
  return method_rank(a.method) < method_rank(b.method);
}

}  // namespace detail

/// Picks the configuration of the last (smoothed) IC. Under MinKurtosis the
/// criterion is the kurtosis coefficient m4/m2² of the training scores, which
/// is bounded below by 1, so the smallest value is the one closest to 1 from
/// above. Under CVError it is the leave-one-out error. Candidates whose fit
/// fails numerically are reported and skipped.
inline CVResult cross_validate(const std::function<FDataSet(int)>& data_for_q,
                               const std::vector<CVCandidate>& grid, CVCriterion criterion,
                               Selector selector = Selector::SICq, double tol = kDefaultEigenTol) {
  if (grid.empty()) throw Error(ErrorKind::InvalidConfig, "empty cross-validation grid");
  CVResult result;
  std::map<int, FDataSet> cache;
  std::optional<std::size_t> best;
  double best_value = 0.0;
  for (const CVCandidate& cand : grid) {
    CVEntry entry;
    entry.config = cand;
    try {
      auto it = cache.find(cand.q);
      if (it == cache.end()) it = cache.emplace(cand.q, data_for_q(cand.q)).first;
      const FDataSet& data = it->second;
      entry.config.q = data.dimension();
      const CentroidModel m = select_direction(data, selector, cand.method, cand.theta, tol);
      entry.score_kurtosis = m.score_kurtosis;
      entry.normalized_kurtosis = m.normalized_kurtosis;
      if (criterion == CVCriterion::CVError) {
        entry.loo_error = loo_error(data, PipelineConfig{selector, cand.method, cand.theta, 0, tol});
      }
    } catch (const Error& e) {
      entry.failed = true;
      entry.failure = e.what();
    }
    result.entries.push_back(entry);
    if (entry.failed) continue;
    const double value =
        criterion == CVCriterion::MinKurtosis ? entry.score_kurtosis : entry.loo_error;
    if (!best || detail::better(value, entry.config, best_value, result.entries[*best].config)) {
      best = result.entries.size() - 1;
      best_value = value;
    }
  }
  if (!best) {
    throw Error(ErrorKind::NearSingular,
                "every cross-validation candidate failed: " + result.entries.back().failure);
  }
  result.best = result.entries[*best].config;
  return result;
}

/// Cross-validation over a single dataset; candidate q values are ignored.
inline CVResult cross_validate(const FDataSet& data, std::vector<CVCandidate> grid,
                               CVCriterion criterion, Selector selector = Selector::SICq,
                               double tol = kDefaultEigenTol) {
  for (auto& c : grid) c.q = data.dimension();
  return cross_validate([&data](int) { return data; }, grid, criterion, selector, tol);
}

// ---------------------------------------------------------------------------
// Known-truth Fisher discriminant

/// Fisher direction for two classes with common covariance Σ sampled on a
/// grid: φ = Σ_{j≤q} λ_j⁻¹ v_j γ_j with v_j = γ_jᵀ(μ0 - μ1).
struct FisherOracle {
  Vector eigenvalues;
  Matrix eigenvectors;
  Vector v;
  Vector phi_grid;
  /// φ projected into the B-spline basis (least squares), when available.
  Vector phi_coefficients;
};

/// L²(G) cosine between two coefficient vectors.
inline double gram_cosine(const Vector& a, const Vector& b, const Matrix& g) {
  const double na = std::sqrt(a.dot(g * a));
  const double nb = std::sqrt(b.dot(g * b));
  if (!(na > 0.0) || !(nb > 0.0)) return 0.0;
  return a.dot(g * b) / (na * nb);
}

// ---------------------------------------------------------------------------
// Model serialization: "key = value" lines; vectors are whitespace separated
// and written with 17 significant digits so reloading is exact.

inline void save_model(const CentroidModel& model, std::ostream& os) {
  const FunctionalBasis& b = *model.basis;
  auto vec = [&os](const Vector& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? " " : "") << v(i);
    os << '\n';
  };
  os << std::setprecision(17);
  os << "format = fkica-centroid-1\n";
  os << "selector = " << to_string(model.selector) << '\n';
  os << "whitening = " << to_string(model.method) << '\n';
  os << "theta = " << model.theta << '\n';
  os << "q = " << model.q << '\n';
  os << "reduce_p = " << model.reduce_p << '\n';
  os << "interval = " << b.t_min() << ' ' << b.t_max() << '\n';
  os << "order = " << b.order() << '\n';
  os << "n_basis = " << b.n_splines() << '\n';
  os << "penalty_order = " << b.penalty_order() << '\n';
  os << "degenerate = " << (model.degenerate ? 1 : 0) << '\n';
  if (model.class_means) {
    os << "class_means = " << (*model.class_means)[0] << ' ' << (*model.class_means)[1] << '\n';
  }
  os << "center = ";
  vec(model.center);
  os << "beta = ";
  vec(model.beta);
  if (b.has_transform()) {
    const Matrix& t = b.transform();
    os << "transform = " << t.rows() << ' ' << t.cols();
    for (Eigen::Index i = 0; i < t.rows(); ++i) {
      for (Eigen::Index j = 0; j < t.cols(); ++j) os << ' ' << t(i, j);
    }
    os << '\n';
  }
}

inline CentroidModel load_model(std::istream& is) {
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::InvalidConfig, "bad model line: " + line);
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto z = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, z - a + 1);
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  auto need = [&kv](const std::string& k) -> const std::string& {
    auto it = kv.find(k);
    if (it == kv.end()) throw Error(ErrorKind::InvalidConfig, "model file lacks '" + k + "'");
    return it->second;
  };
  auto numbers = [](const std::string& s) {
    std::istringstream ss(s);
    std::vector<double> out;
    std::string tok;
    while (ss >> tok) out.push_back(std::stod(tok));
    return out;
  };
  auto to_vec = [](const std::vector<double>& v) {
    return Vector(Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size())));
  };
  if (need("format") != "fkica-centroid-1") {
    throw Error(ErrorKind::InvalidConfig, "unsupported model format");
  }
  const auto interval = numbers(need("interval"));
  if (interval.size() != 2) throw Error(ErrorKind::InvalidConfig, "bad interval");
  FunctionalBasis basis = build_basis({interval[0], interval[1]}, std::stoi(need("order")),
                                      std::stoi(need("n_basis")), std::stoi(need("penalty_order")));
  if (kv.count("transform")) {
    const auto t = numbers(kv["transform"]);
    if (t.size() < 2) throw Error(ErrorKind::InvalidConfig, "bad transform");
    const auto rows = static_cast<Eigen::Index>(t[0]);
    const auto cols = static_cast<Eigen::Index>(t[1]);
    if (static_cast<Eigen::Index>(t.size()) != 2 + rows * cols) {
      throw Error(ErrorKind::InvalidConfig, "transform size mismatch");
    }
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
      for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = t[static_cast<std::size_t>(2 + i * cols + j)];
    }
    basis = recombine_basis(basis, m);
  }
  CentroidModel model;
  model.basis = std::make_shared<const FunctionalBasis>(std::move(basis));
  model.selector = parse_selector(need("selector"));
  model.method = parse_whitening(need("whitening"));
  model.theta = std::stod(need("theta"));
  model.q = std::stoi(need("q"));
  model.reduce_p = std::stoi(need("reduce_p"));
  model.degenerate = need("degenerate") == "1";
  model.center = to_vec(numbers(need("center")));
  model.beta = to_vec(numbers(need("beta")));
  if (model.center.size() != model.basis->dimension() ||
      model.beta.size() != model.basis->dimension()) {
    throw Error(ErrorKind::InvalidConfig, "model vectors do not match the basis dimension");
  }
  if (kv.count("class_means")) {
    const auto m = numbers(kv["class_means"]);
    if (m.size() != 2) throw Error(ErrorKind::InvalidConfig, "bad class_means");
    model.class_means = std::array<double, 2>{m[0], m[1]};
  }
  return model;
}

}  // namespace fkica
