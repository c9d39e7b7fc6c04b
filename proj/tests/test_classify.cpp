#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "fkica/classify.hpp"
#include "fkica/simlab.hpp"
#include "test_util.hpp"

using namespace fkica;

namespace {

// Two unit-length piecewise-constant functions on [0, 2]: G = I.
BasisPtr identity_basis() {
  return std::make_shared<const FunctionalBasis>(build_basis({0.0, 2.0}, 1, 2, 0));
}

FDataSet toy(const std::vector<double>& x0, const std::vector<int>& labels) {
  FDataSet d;
  d.basis = identity_basis();
  d.coefficients = Matrix::Zero(static_cast<Eigen::Index>(x0.size()), 2);
  for (std::size_t i = 0; i < x0.size(); ++i) d.coefficients(static_cast<Eigen::Index>(i), 0) = x0[i];
  d.labels = labels;
  return d;
}

CentroidModel axis_model() {
  CentroidModel m;
  m.basis = identity_basis();
  m.center = Vector::Zero(2);
  m.beta = Vector::Unit(2, 0);
  m.q = 2;
  return m;
}

// Two separated groups in a q-dimensional basis.
FDataSet separated(std::mt19937_64& rng, int q, int n_k, double shift) {
  FDataSet d = fixtures::random_dataset(rng, q, 2 * n_k, false);
  std::vector<int> l;
  for (int i = 0; i < 2 * n_k; ++i) {
    l.push_back(i < n_k ? 0 : 1);
    if (i >= n_k) d.coefficients(i, 0) += shift;
  }
  d.labels = l;
  return d;
}

}  // namespace

TEST(Selector, Names) {
  for (auto s : {Selector::PC1, Selector::PCm, Selector::ICq, Selector::SICq}) {
    EXPECT_EQ(parse_selector(to_string(s)), s);
  }
  EXPECT_THROW(parse_selector("IC1"), Error);
}

TEST(Train, ClassMeanScores) {
  const CentroidModel m = train(axis_model(), toy({-1, -1, 1, 1}, {0, 0, 1, 1}));
  ASSERT_TRUE(m.class_means);
  EXPECT_NEAR((*m.class_means)[0], -1.0, 1e-14);
  EXPECT_NEAR((*m.class_means)[1], 1.0, 1e-14);
  EXPECT_FALSE(m.degenerate);
}

TEST(Train, EmptyClass) {
  try {
    train(axis_model(), toy({-1, 1}, {0, 0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptyClass);
  }
}

TEST(Predict, TieRules) {
  CentroidModel m = axis_model();
  const FDataSet probe = toy({-1, 3}, {0, 0});
  const Vector xi = project(m, probe);
  // ξ* equal to ξ̄0, then ξ* at the exact midpoint.
  m.class_means = std::array<double, 2>{xi(0), xi(1)};
  EXPECT_EQ(predict(m, probe).labels, (std::vector<int>{0, 1}));
  m.class_means = std::array<double, 2>{xi(0) - 1.0, xi(0) + 1.0};
  EXPECT_EQ(predict(m, probe.subset(std::vector<Eigen::Index>{0})).labels, (std::vector<int>{0}));
  EXPECT_EQ(assign_label(0.0, {-1.0, 1.0}), 0);
  EXPECT_EQ(assign_label(0.5, {-1.0, 1.0}), 1);
  EXPECT_EQ(assign_label(-1.0, {-1.0, -1.0}), 0);
}

TEST(Predict, DegenerateDefaultsToClassZero) {
  const CentroidModel m = train(axis_model(), toy({-1, 1, -1, 1}, {0, 0, 1, 1}));
  EXPECT_TRUE(m.degenerate);
  const Prediction p = predict(m, toy({-5, 0, 5}, {0, 0, 0}));
  EXPECT_EQ(p.labels, (std::vector<int>{0, 0, 0}));
}

TEST(Predict, UntrainedAndMismatch) {
  EXPECT_THROW(predict(axis_model(), toy({1}, {0})), Error);
  const CentroidModel m = train(axis_model(), toy({-1, 1}, {0, 1}));
  std::mt19937_64 rng(1);
  const FDataSet other = fixtures::random_dataset(rng, 3, 4);
  try {
    predict(m, other);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BasisMismatch);
  }
}

TEST(Predict, ScaleInvariance) {
  std::mt19937_64 rng(31);
  const FDataSet tr = separated(rng, 5, 40, 2.0);
  const FDataSet te = separated(rng, 5, 40, 2.0);
  for (auto s : {Selector::PC1, Selector::PCm, Selector::ICq, Selector::SICq}) {
    CentroidModel m = select_direction(tr, s, WhiteningMethod::ZCA, 1.0);
    CentroidModel scaled = m;
    scaled.beta *= 7.0;
    EXPECT_EQ(predict(train(m, tr), te).labels, predict(train(scaled, tr), te).labels);
    scaled.beta = -m.beta;
    EXPECT_EQ(predict(train(m, tr), te).labels, predict(train(scaled, tr), te).labels);
  }
}

TEST(Predict, LabelSwapMirrors) {
  std::mt19937_64 rng(32);
  FDataSet tr = separated(rng, 5, 30, 1.0);
  const FDataSet te = separated(rng, 5, 30, 1.0);
  FDataSet swapped = tr;
  for (auto& l : *swapped.labels) l = 1 - l;
  for (auto s : {Selector::PC1, Selector::ICq}) {
    const CentroidModel a = fit_classifier(tr, PipelineConfig{s});
    const CentroidModel b = fit_classifier(swapped, PipelineConfig{s});
    const Prediction pa = predict(a, te);
    const Prediction pb = predict(b, te);
    for (std::size_t i = 0; i < pa.labels.size(); ++i) EXPECT_EQ(pa.labels[i], 1 - pb.labels[i]);
  }
}

TEST(Predict, InvariantToDirectionsOrthogonalToDataSpan) {
  std::mt19937_64 rng(33);
  const int q = 6;
  FDataSet d = fixtures::random_dataset(rng, q, 40, true);
  // Rows confined to a 4-dimensional affine subspace.
  const Matrix span = fixtures::random_matrix(rng, 4, q);
  d.coefficients = fixtures::random_matrix(rng, 40, 4) * span;
  d.coefficients.rowwise() += fixtures::random_matrix(rng, 1, q).row(0);
  for (int i = 20; i < 40; ++i) d.coefficients.row(i) += 0.8 * span.row(0);
  const CentroidModel m = train(select_direction(d, Selector::PC1), d);
  // z ⟂ span in the Euclidean sense, so w = G⁻¹z is G-orthogonal to it.
  Eigen::FullPivLU<Matrix> lu(span);
  const Matrix kernel = lu.kernel();
  ASSERT_EQ(kernel.cols(), 2);
  CentroidModel shifted = m;
  shifted.beta += d.basis->gram().ldlt().solve(Vector(kernel.col(0) * 3.0 - kernel.col(1)));
  FDataSet probe = d;
  probe.coefficients = fixtures::random_matrix(rng, 25, 4) * span;
  probe.coefficients.rowwise() += column_mean(d.coefficients).transpose();
  const Prediction a = predict(m, probe);
  const Prediction b = predict(train(shifted, d), probe);
  EXPECT_EQ(a.labels, b.labels);
  EXPECT_LT((a.scores - b.scores).norm(), 1e-8 * std::max(1.0, a.scores.norm()));
}

TEST(SelectDirection, WhitenedAndOriginalScoresAgree) {
  std::mt19937_64 rng(34);
  for (int rep = 0; rep < 10; ++rep) {
    const FDataSet d = fixtures::random_dataset(rng, 3 + rep % 4, 60, true);
    for (auto method : kAllWhiteningMethods) {
      for (double theta : {0.0, 0.5, 100.0}) {
        const CentroidModel m =
            select_direction(d, theta == 0.0 ? Selector::ICq : Selector::SICq, method, theta);
        const WhiteningModel wm = fit_whitening(d, method);
        const FDataSet w = apply_whitening(wm, d);
        const ICScores s = scores(solve_penalized(w, theta), w);
        const Vector xi = project(m, d);
        EXPECT_LT((xi - s.xi.col(d.dimension() - 1)).cwiseAbs().maxCoeff(), 1e-8);
      }
    }
  }
}

TEST(SelectDirection, PC1AlignsWithTopEigenvector) {
  std::mt19937_64 rng(35);
  const int q = 6;
  const auto basis = fixtures::make_basis(q);
  const Matrix g = basis->gram();
  const Matrix gis = inv_sqrt(g);
  Vector lambda(q);
  lambda << 5, 2, 1, 0.5, 0.25, 0.1;
  const Matrix u = sym_eigen(fixtures::random_spd(rng, q)).vectors;
  const Matrix c_half = u * lambda.cwiseSqrt().asDiagonal() * u.transpose();
  FDataSet d;
  d.basis = basis;
  // Gram-metric covariance of these coefficients is U Λ Uᵀ.
  d.coefficients = fixtures::random_matrix(rng, 5000, q) * c_half * gis;
  const CentroidModel m = select_direction(d, Selector::PC1);
  const Vector truth = gis * u.col(0);
  EXPECT_GT(std::abs(gram_cosine(m.beta, truth, g)), 0.99);
}

TEST(SelectDirection, PCmHasMinimalScoreKurtosis) {
  std::mt19937_64 rng(36);
  const FDataSet d = separated(rng, 5, 50, 3.0);
  const CentroidModel m = select_direction(d, Selector::PCm);
  const Matrix gs = sqrt_psd(d.basis->gram());
  const Vector mean = column_mean(d.coefficients);
  const EigenSystem es = sym_eigen(gram_metric_covariance(d.coefficients, gs, mean));
  const Matrix b = (d.coefficients.rowwise() - mean.transpose()) * gs * es.vectors;
  double best = 1e300;
  for (int j = 0; j < 5; ++j) best = std::min(best, kurtosis_coefficient(b.col(j)));
  EXPECT_NEAR(m.score_kurtosis, best, 1e-12);
}

TEST(SelectDirection, ICqAlignsWithFisherDirection) {
  SimConfig cfg;
  cfg.n_k = 500;
  cfg.evaluation = Evaluation::Resubstitution;
  const SimLab lab(cfg);
  const FisherOracle o = lab.fisher_oracle();
  const SimReplication rep = lab.generate(0);
  const CentroidModel m = select_direction(rep.train, Selector::ICq);
  EXPECT_GT(std::abs(gram_cosine(m.beta, o.phi_coefficients, lab.basis()->gram())), 0.9);
}

TEST(TheoreticalError, Limits) {
  const Matrix gamma = Matrix::Identity(3, 3);
  EXPECT_NEAR(theoretical_error(Vector::Unit(3, 0), Vector::Unit(3, 1), gamma), 0.5, 1e-15);
  EXPECT_LT(theoretical_error(Vector::Unit(3, 0), 100.0 * Vector::Unit(3, 0), gamma), 1e-100);
  Vector d(3);
  d << 2, 0, 0;
  EXPECT_NEAR(theoretical_error(Vector::Unit(3, 0), d, gamma), normal_cdf(-1.0), 1e-15);
  Matrix bad = gamma;
  bad(2, 2) = -1.0;
  try {
    theoretical_error(Vector::Unit(3, 0), d, bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonPDCovariance);
  }
}

TEST(TheoreticalError, MatchesMonteCarloOnExampleOneTruth) {
  SimConfig cfg;
  const SimLab lab(cfg);
  const FisherOracle o = lab.fisher_oracle(5);
  const Vector& beta = o.phi_grid;
  const auto& mu = lab.means();
  // Grid coordinates are Euclidean; the kernel is PSD only up to rounding,
  // so the PD check is applied to Σ with its clamped spectrum floor.
  Matrix sigma = lab.covariance() + 1e-10 * Matrix::Identity(20, 20);
  const double theory = theoretical_error(beta, mu[0] - mu[1], sigma);
  std::mt19937_64 rng(37);
  std::vector<int> labels;
  const int per_class = 50000;
  const Matrix x = lab.draw(rng, per_class, labels);
  const std::array<double, 2> means{mu[0].dot(beta), mu[1].dot(beta)};
  int wrong = 0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    wrong += assign_label(x.row(i).dot(beta), means) != labels[static_cast<std::size_t>(i)];
  }
  const double n = 2.0 * per_class;
  const double emp = wrong / n;
  const double se = std::sqrt(theory * (1 - theory) / n);
  EXPECT_NEAR(emp, theory, 3 * se + 1e-12) << "theory " << theory << " empirical " << emp;
}

TEST(GroupwiseReduce, FullRankIsIdentity) {
  std::mt19937_64 rng(38);
  const FDataSet d = fixtures::random_dataset(rng, 5, 60, true);
  const FDataSet r = groupwise_fpca_reduce(d, 5);
  EXPECT_LT((r.coefficients - d.coefficients).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_EQ(*r.labels, *d.labels);
}

TEST(GroupwiseReduce, RankOneClassesReconstructExactly) {
  std::mt19937_64 rng(39);
  FDataSet d = fixtures::random_dataset(rng, 5, 40, true);
  for (int k = 0; k < 2; ++k) {
    const Vector mean = fixtures::random_matrix(rng, 5, 1);
    const Vector dir = fixtures::random_matrix(rng, 5, 1);
    for (auto r : d.class_rows(k)) d.coefficients.row(r) = (mean + fixtures::random_matrix(rng, 1, 1)(0) * dir).transpose();
  }
  const FDataSet r = groupwise_fpca_reduce(d, 1);
  EXPECT_LT((r.coefficients - d.coefficients).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_THROW(groupwise_fpca_reduce(d, 2), Error);
}

TEST(GroupwiseReduce, Errors) {
  std::mt19937_64 rng(40);
  FDataSet d = fixtures::random_dataset(rng, 5, 40, true);
  EXPECT_THROW(groupwise_fpca_reduce(d, 6), Error);
  EXPECT_THROW(groupwise_fpca_reduce(d, 0), Error);
  d.labels.reset();
  try {
    groupwise_fpca_reduce(d, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MissingLabels);
  }
}

TEST(PrincipalCoordinates, OrthonormalBasisAndProjection) {
  std::mt19937_64 rng(41);
  const FDataSet d = fixtures::random_dataset(rng, 6, 50, true);
  const PrincipalCoordinates pc = principal_coordinates(d, 6);
  EXPECT_EQ(pc.data.dimension(), 6);
  EXPECT_LT((pc.data.basis->gram() - Matrix::Identity(6, 6)).norm(), 1e-9);
  // Full rank: the expansion reproduces every curve.
  EXPECT_LT((pc.data.coefficients * pc.transform.transpose() - d.coefficients).norm(), 1e-8);
  const PrincipalCoordinates p3 = principal_coordinates(d, 3);
  EXPECT_EQ(p3.data.dimension(), 3);
}

TEST(Pipeline, ReducedModelPredictsInInputBasis) {
  std::mt19937_64 rng(42);
  const FDataSet d = separated(rng, 6, 40, 3.0);
  PipelineConfig pc;
  pc.reduce_p = 3;
  const CentroidModel m = fit_classifier(d, pc);
  EXPECT_TRUE(m.basis->same_as(*d.basis));
  EXPECT_EQ(m.reduce_p, 3);
  EXPECT_EQ(predict(m, d).labels.size(), 80u);
  const double loo = loo_error(d, pc);
  EXPECT_GE(loo, 0.0);
  EXPECT_LE(loo, 100.0);
}

TEST(Pipeline, PerfectlySeparatedToyHasZeroError) {
  std::mt19937_64 rng(43);
  const FDataSet d = separated(rng, 4, 30, 500.0);
  for (auto s : {Selector::PC1, Selector::ICq}) {
    const CentroidModel m = fit_classifier(d, PipelineConfig{s});
    EXPECT_EQ(error_rate(predict(m, d).labels, *d.labels), 0.0);
    EXPECT_EQ(loo_error(d, PipelineConfig{s}), 0.0);
  }
}

TEST(CrossValidate, SingletonGrid) {
  std::mt19937_64 rng(44);
  const FDataSet d = separated(rng, 5, 30, 1.0);
  const CVResult r = cross_validate(d, {{WhiteningMethod::ZCACor, 3.5, 0}}, CVCriterion::MinKurtosis);
  EXPECT_EQ(r.best.method, WhiteningMethod::ZCACor);
  EXPECT_EQ(r.best.theta, 3.5);
  EXPECT_EQ(r.best.q, 5);
  EXPECT_THROW(cross_validate(d, {}, CVCriterion::MinKurtosis), Error);
}

TEST(CrossValidate, ZeroLooErrorWins) {
  std::mt19937_64 rng(45);
  const FDataSet d = separated(rng, 4, 25, 500.0);
  const CVResult r = cross_validate(
      d, {{WhiteningMethod::ZCA, 1e6, 0}, {WhiteningMethod::Cholesky, 0.0, 0}}, CVCriterion::CVError);
  double best = 1e9;
  for (const auto& e : r.entries) best = std::min(best, e.loo_error);
  EXPECT_EQ(best, 0.0);
  for (const auto& e : r.entries) {
    if (e.config.method == r.best.method && e.config.theta == r.best.theta) {
      EXPECT_EQ(e.loo_error, 0.0);
    }
  }
}

TEST(CrossValidate, TiesFollowDeclaredOrder) {
  std::mt19937_64 rng(46);
  const FDataSet d = separated(rng, 5, 40, 1.0);
  // At θ = 0 every whitening gives the same kurtosis spectrum.
  std::vector<CVCandidate> grid;
  for (auto it = kAllWhiteningMethods.rbegin(); it != kAllWhiteningMethods.rend(); ++it) {
    grid.push_back({*it, 0.0, 0});
  }
  EXPECT_EQ(cross_validate(d, grid, CVCriterion::MinKurtosis).best.method, WhiteningMethod::PCA);
  EXPECT_EQ(cross_validate(d, grid, CVCriterion::CVError).best.method, WhiteningMethod::PCA);
}

TEST(CrossValidate, MinKurtosisPicksSmallestCoefficient) {
  std::mt19937_64 rng(47);
  const FDataSet d = separated(rng, 5, 40, 2.0);
  std::vector<CVCandidate> grid;
  for (double th : {0.0, 0.1, 10.0, 1000.0}) grid.push_back({WhiteningMethod::ZCA, th, 0});
  const CVResult r = cross_validate(d, grid, CVCriterion::MinKurtosis);
  double best = 1e300;
  for (const auto& e : r.entries) best = std::min(best, e.score_kurtosis);
  for (const auto& e : r.entries) {
    if (e.config.theta == r.best.theta) {
      EXPECT_NEAR(e.score_kurtosis, best, 1e-9 * best);
    }
  }
  for (const auto& e : r.entries) EXPECT_GE(e.score_kurtosis, 1.0);
}

TEST(CrossValidate, VaryingBasisDimension) {
  SimConfig cfg;
  const SimLab lab(cfg);
  const SimReplication rep = lab.generate(3);
  auto data_for_q = [&](int q) {
    return fit_curves(fixtures::make_basis(q, 4, 1.0, 20.0), lab.grid(), rep.train_samples, rep.train.labels);
  };
  std::vector<CVCandidate> grid;
  for (int q : {4, 5, 6}) grid.push_back({WhiteningMethod::ZCA, 0.0, q});
  const CVResult r = cross_validate(data_for_q, grid, CVCriterion::MinKurtosis, Selector::ICq);
  EXPECT_EQ(r.entries.size(), 3u);
  EXPECT_TRUE(r.best.q >= 4 && r.best.q <= 6);
}

TEST(Serialization, RoundTripIsBitIdentical) {
  std::mt19937_64 rng(48);
  const FDataSet d = separated(rng, 5, 30, 1.0);
  const FDataSet te = separated(rng, 5, 30, 1.0);
  for (auto s : {Selector::PC1, Selector::SICq}) {
    PipelineConfig pc;
    pc.selector = s;
    pc.method = WhiteningMethod::Cholesky;
    pc.theta = 0.3;
    const CentroidModel m = fit_classifier(d, pc);
    std::stringstream ss;
    save_model(m, ss);
    const CentroidModel back = load_model(ss);
    const Prediction a = predict(m, te);
    const Prediction b = predict(back, te);
    EXPECT_EQ(a.labels, b.labels);
    EXPECT_TRUE(a.scores == b.scores);
    EXPECT_EQ(back.selector, s);
    EXPECT_EQ(back.theta, m.theta);
  }
}

TEST(Serialization, RecombinedBasisRoundTrip) {
  std::mt19937_64 rng(49);
  const FDataSet d = separated(rng, 5, 30, 1.0);
  const PrincipalCoordinates pc = principal_coordinates(d, 4);
  const CentroidModel m = fit_classifier(pc.data, PipelineConfig{});
  std::stringstream ss;
  save_model(m, ss);
  const CentroidModel back = load_model(ss);
  EXPECT_TRUE(back.basis->same_as(*m.basis));
  EXPECT_TRUE(predict(m, pc.data).scores == predict(back, pc.data).scores);
}

TEST(Serialization, RejectsMalformed) {
  std::stringstream bad("format = fkica-centroid-1\nselector = ICq\n");
  EXPECT_THROW(load_model(bad), Error);
  std::stringstream junk("this is not a model\n");
  EXPECT_THROW(load_model(junk), Error);
}
