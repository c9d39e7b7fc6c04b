#pragma once

// Two-class functional simulations on a 20-point grid with squared-exponential
// covariance, and a seeded replication harness producing error tables.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fkica/classify.hpp"
#include "fkica/errors.hpp"
#include "fkica/funbasis.hpp"
#include "fkica/io.hpp"
#include "fkica/specmat.hpp"
#include "fkica/whitening.hpp"

namespace fkica {

enum class Scenario { Gaussian, ExpShifted };
enum class Evaluation { Holdout, Resubstitution };

inline std::string_view to_string(Scenario s) {
  return s == Scenario::Gaussian ? "gaussian" : "exp_shifted";
}
inline std::string_view to_string(Evaluation e) {
  return e == Evaluation::Holdout ? "holdout" : "resubstitution";
}

/// Kernel eigenvalues below this are treated as zero.
inline constexpr double kKernelEigenFloor = 1e-12;

struct SimConfig {
  int example = 1;
  Scenario scenario = Scenario::Gaussian;
  int n_k = 50;
  int grid_points = 20;
  double t_min = 1.0;
  double t_max = 20.0;
  double length_scale = 15.0;
  double sigma = 0.0;
  int replications = 200;
  std::uint64_t seed = 20240601;
  int q = 5;
  int order = 4;
  int penalty_order = 2;
  std::vector<double> theta_grid{0.0, 0.01, 0.1, 1.0, 10.0, 100.0};
  std::vector<WhiteningMethod> methods{kAllWhiteningMethods.begin(), kAllWhiteningMethods.end()};
  /// Test curves per class under holdout evaluation.
  int test_n = 500;
  /// Resubstitution scores the training curves themselves.
  Evaluation evaluation = Evaluation::Resubstitution;
  /// Multiplies the class mean difference about the midpoint mean.
  double mean_scale = 1.0;
  int threads = 1;
};

inline void validate(const SimConfig& c) {
  auto bad = [](const std::string& m) { throw Error(ErrorKind::InvalidConfig, m); };
  if (c.example < 1 || c.example > 3) bad("example must be 1, 2 or 3");
  if (c.n_k < 1) bad("n_k must be positive");
  if (c.grid_points < 2) bad("grid_points must be at least 2");
  if (!(c.t_max > c.t_min)) bad("t_max must exceed t_min");
  if (!(c.length_scale > 0.0)) bad("length_scale must be positive");
  if (!(c.sigma >= 0.0) || !std::isfinite(c.sigma)) bad("sigma must be non-negative");
  if (c.replications < 1) bad("replications must be positive");
  if (c.q < 1 || c.q > c.grid_points) bad("q must lie in [1, grid_points]");
  if (c.order < 1 || c.order > c.q) bad("order must lie in [1, q]");
  if (c.penalty_order < 0 || c.penalty_order >= c.order) bad("penalty_order must lie in [0, order)");
  if (c.theta_grid.empty()) bad("theta_grid must not be empty");
  for (double t : c.theta_grid) {
    if (!(t >= 0.0) || !std::isfinite(t)) bad("theta values must be non-negative");
  }
  if (c.methods.empty()) bad("methods must not be empty");
  if (c.test_n < 1) bad("test_n must be positive");
  if (!std::isfinite(c.mean_scale)) bad("mean_scale must be finite");
  if (c.threads < 0) bad("threads must be non-negative");
}

inline SimConfig sim_config_from(const std::map<std::string, std::string>& kv) {
  SimConfig c;
  auto as_int = [](const std::string& k, const std::string& v) {
    long long x = 0;
    if (!parse_int(v, x)) throw Error(ErrorKind::InvalidConfig, "'" + k + "' must be an integer");
    return x;
  };
  auto as_double = [](const std::string& k, const std::string& v) {
    double x = 0.0;
    if (!parse_double(v, x)) throw Error(ErrorKind::InvalidConfig, "'" + k + "' must be a number");
    return x;
  };
  auto list = [](const std::string& v) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : v + ",") {
      if (ch == ',' || ch == ' ' || ch == '\t') {
        if (!cur.empty()) out.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    return out;
  };
  for (const auto& [k, v] : kv) {
    if (k == "example") c.example = static_cast<int>(as_int(k, v));
    else if (k == "scenario") {
      if (v == "gaussian") c.scenario = Scenario::Gaussian;
      else if (v == "exp_shifted") c.scenario = Scenario::ExpShifted;
      else throw Error(ErrorKind::InvalidConfig, "scenario must be gaussian or exp_shifted");
    } else if (k == "n_k") c.n_k = static_cast<int>(as_int(k, v));
    else if (k == "grid_points") c.grid_points = static_cast<int>(as_int(k, v));
    else if (k == "t_min") c.t_min = as_double(k, v);
    else if (k == "t_max") c.t_max = as_double(k, v);
    else if (k == "length_scale") c.length_scale = as_double(k, v);
    else if (k == "sigma") c.sigma = as_double(k, v);
    else if (k == "replications") c.replications = static_cast<int>(as_int(k, v));
    else if (k == "seed") {
      long long s = as_int(k, v);
      if (s < 0) throw Error(ErrorKind::InvalidConfig, "seed must be non-negative");
      c.seed = static_cast<std::uint64_t>(s);
    } else if (k == "q") c.q = static_cast<int>(as_int(k, v));
    else if (k == "order") c.order = static_cast<int>(as_int(k, v));
    else if (k == "penalty_order") c.penalty_order = static_cast<int>(as_int(k, v));
    else if (k == "theta_grid") {
      c.theta_grid.clear();
      for (const auto& s : list(v)) c.theta_grid.push_back(as_double(k, s));
    } else if (k == "methods") {
      c.methods.clear();
      for (const auto& s : list(v)) c.methods.push_back(parse_whitening(s));
    } else if (k == "test_n") c.test_n = static_cast<int>(as_int(k, v));
    else if (k == "evaluation") {
      if (v == "holdout") c.evaluation = Evaluation::Holdout;
      else if (v == "resubstitution") c.evaluation = Evaluation::Resubstitution;
      else throw Error(ErrorKind::InvalidConfig, "evaluation must be holdout or resubstitution");
    } else if (k == "mean_scale") c.mean_scale = as_double(k, v);
    else if (k == "threads") c.threads = static_cast<int>(as_int(k, v));
    else throw Error(ErrorKind::InvalidConfig, "unknown config key '" + k + "'");
  }
  validate(c);
  return c;
}

inline SimConfig parse_sim_config(std::istream& is) { return sim_config_from(parse_key_values(is)); }

inline void write_sim_config(std::ostream& os, const SimConfig& c) {
  const auto old = os.precision(17);
  os << "example = " << c.example << '\n'
     << "scenario = " << to_string(c.scenario) << '\n'
     << "n_k = " << c.n_k << '\n'
     << "grid_points = " << c.grid_points << '\n'
     << "t_min = " << c.t_min << '\n'
     << "t_max = " << c.t_max << '\n'
     << "length_scale = " << c.length_scale << '\n'
     << "sigma = " << c.sigma << '\n'
     << "replications = " << c.replications << '\n'
     << "seed = " << c.seed << '\n'
     << "q = " << c.q << '\n'
     << "order = " << c.order << '\n'
     << "penalty_order = " << c.penalty_order << '\n'
     << "theta_grid =";
  for (double t : c.theta_grid) os << ' ' << t;
  os << "\nmethods =";
  for (auto m : c.methods) os << ' ' << to_string(m);
  os << "\ntest_n = " << c.test_n << '\n'
     << "evaluation = " << to_string(c.evaluation) << '\n'
     << "mean_scale = " << c.mean_scale << '\n'
     << "threads = " << c.threads << '\n';
  os.precision(old);
}

/// One splitmix64 step.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed of replication `index`, independent of scheduling.
inline std::uint64_t replication_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t s = master;
  const std::uint64_t a = splitmix64(s);
  std::uint64_t t = a ^ (index * 0xd1b54a32d192ed03ULL);
  return splitmix64(t);
}

inline Matrix squared_exp_covariance(const std::vector<double>& grid, double length_scale) {
  const auto m = static_cast<Eigen::Index>(grid.size());
  Matrix s(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      const double d = grid[static_cast<std::size_t>(i)] - grid[static_cast<std::size_t>(j)];
      s(i, j) = std::exp(-d * d / (2.0 * length_scale * length_scale));
    }
  }
  return s;
}

/// Class mean functions of the three examples, with period length T = t_max.
inline std::array<Vector, 2> class_means(const SimConfig& c, const std::vector<double>& grid) {
  const auto m = static_cast<Eigen::Index>(grid.size());
  std::array<Vector, 2> mu{Vector::Zero(m), Vector::Zero(m)};
  const double w = 3.0 * std::numbers::pi / c.t_max;
  for (Eigen::Index i = 0; i < m; ++i) {
    const double t = grid[static_cast<std::size_t>(i)];
    const double cs = std::cos(w * t);
    switch (c.example) {
      case 1: mu[0](i) = 0.0; mu[1](i) = 0.2 * cs; break;
      case 2: mu[0](i) = 0.3 * cs; mu[1](i) = 0.2 * cs; break;
      default: mu[0](i) = 0.2 * std::sin(w * t); mu[1](i) = 0.2 * cs; break;
    }
  }
  if (c.mean_scale != 1.0) {
    const Vector mid = 0.5 * (mu[0] + mu[1]);
    for (auto& v : mu) v = mid + c.mean_scale * (v - mid);
  }
  return mu;
}

/// φ = Σ_{j≤q} λ_j⁻¹ v_j γ_j with v_j = γ_jᵀ(μ0 - μ1); components with
/// λ_j ≤ floor are skipped.
inline FisherOracle fisher_direction(const Matrix& sigma, const Vector& mu0, const Vector& mu1, int q,
                                     double floor = kKernelEigenFloor) {
  FisherOracle o;
  const EigenSystem es = sym_eigen(sigma);
  o.eigenvalues = es.values;
  o.eigenvectors = es.vectors;
  o.v = es.vectors.transpose() * (mu0 - mu1);
  o.phi_grid = Vector::Zero(sigma.rows());
  for (int j = 0; j < std::min<int>(q, static_cast<int>(es.values.size())); ++j) {
    if (es.values(j) > floor) o.phi_grid += o.v(j) / es.values(j) * es.vectors.col(j);
  }
  return o;
}

struct SimReplication {
  FDataSet train;
  FDataSet test;
  Matrix train_samples;
  Matrix test_samples;
};

struct ErrorRow {
  Selector selector = Selector::PC1;
  std::optional<WhiteningMethod> method;
  std::string theta_policy;
  double sigma = 0.0;
  double mean = 0.0;
  double sd = 0.0;
  int count = 0;
  int failed = 0;
  /// Per-replication errors (NaN where the replication failed).
  std::vector<double> errors;
  std::vector<std::string> failures;
  /// θ chosen per replication (SICq rows).
  std::vector<double> thetas;
};

struct ErrorTable {
  int example = 1;
  Scenario scenario = Scenario::Gaussian;
  int n_k = 0;
  Evaluation evaluation = Evaluation::Resubstitution;
  std::vector<ErrorRow> rows;

  const ErrorRow& find(Selector s, std::optional<WhiteningMethod> m = std::nullopt,
                       std::optional<double> sigma = std::nullopt) const {
    for (const auto& r : rows) {
      if (r.selector == s && r.method == m && (!sigma || r.sigma == *sigma)) return r;
    }
    throw Error(ErrorKind::IndexOutOfRange, "no such row in error table");
  }
};

inline void write_error_table_csv(std::ostream& os, const ErrorTable& t) {
  os << "example,scenario,n_k,sigma,evaluation,selector,whitening,theta_policy,mean_error_pct,"
        "sd_error_pct,replications,failed\n";
  const auto old = os.precision(10);
  for (const auto& r : t.rows) {
    os << t.example << ',' << to_string(t.scenario) << ',' << t.n_k << ',' << r.sigma << ','
       << to_string(t.evaluation) << ',' << to_string(r.selector) << ','
       << (r.method ? std::string(to_string(*r.method)) : std::string("-")) << ',' << r.theta_policy
       << ',' << r.mean << ',' << r.sd << ',' << r.count << ',' << r.failed << '\n';
  }
  os.precision(old);
}

/// Generator and harness for one configuration. The kernel eigensystem and
/// the basis are computed once.
class SimLab {
 public:
  explicit SimLab(SimConfig config) : cfg_(std::move(config)) {
    validate(cfg_);
    for (int i = 0; i < cfg_.grid_points; ++i) {
      grid_.push_back(cfg_.t_min + (cfg_.t_max - cfg_.t_min) * i / (cfg_.grid_points - 1));
    }
    sigma_ = squared_exp_covariance(grid_, cfg_.length_scale);
    kernel_ = sym_eigen(sigma_);
    for (Eigen::Index j = 0; j < kernel_.values.size(); ++j) {
      if (kernel_.values(j) > kKernelEigenFloor) active_.push_back(j);
    }
    means_ = class_means(cfg_, grid_);
    try {
      basis_ = std::make_shared<const FunctionalBasis>(
          build_basis({cfg_.t_min, cfg_.t_max}, cfg_.order, cfg_.q, cfg_.penalty_order));
    } catch (const Error& e) {
      throw Error(ErrorKind::InvalidConfig, e.what());
    }
  }

  const SimConfig& config() const { return cfg_; }
  const std::vector<double>& grid() const { return grid_; }
  const Matrix& covariance() const { return sigma_; }
  const EigenSystem& kernel() const { return kernel_; }
  const std::array<Vector, 2>& means() const { return means_; }
  const BasisPtr& basis() const { return basis_; }

  /// Training curves (class 0 then class 1), then under holdout the test
  /// curves, all from one stream seeded by the replication index.
  SimReplication generate(int index) const {
    std::mt19937_64 rng(replication_seed(cfg_.seed, static_cast<std::uint64_t>(index)));
    SimReplication rep;
    std::vector<int> labels;
    rep.train_samples = draw(rng, cfg_.n_k, labels);
    rep.train = fit_curves(basis_, grid_, rep.train_samples, labels);
    if (cfg_.evaluation == Evaluation::Holdout) {
      std::vector<int> test_labels;
      rep.test_samples = draw(rng, cfg_.test_n, test_labels);
      rep.test = fit_curves(basis_, grid_, rep.test_samples, test_labels);
    } else {
      rep.test_samples = rep.train_samples;
      rep.test = rep.train;
    }
    return rep;
  }

  /// Curves drawn from the model with `per_class` curves per class.
  Matrix draw(std::mt19937_64& rng, int per_class, std::vector<int>& labels) const {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::exponential_distribution<double> expo(1.0);
    const auto m = static_cast<Eigen::Index>(grid_.size());
    Matrix x(2 * per_class, m);
    labels.assign(static_cast<std::size_t>(2 * per_class), 0);
    for (int k = 0; k < 2; ++k) {
      for (int i = 0; i < per_class; ++i) {
        const int row = k * per_class + i;
        labels[static_cast<std::size_t>(row)] = k;
        Vector curve = means_[static_cast<std::size_t>(k)];
        for (Eigen::Index j : active_) {
          const double z =
              cfg_.scenario == Scenario::Gaussian ? normal(rng) : expo(rng) - 1.0;
          curve += std::sqrt(kernel_.values(j)) * z * kernel_.vectors.col(j);
        }
        // Noise is always drawn so that σ only rescales it.
        for (Eigen::Index t = 0; t < m; ++t) curve(t) += cfg_.sigma * normal(rng);
        x.row(row) = curve.transpose();
      }
    }
    return x;
  }

  /// Row layout of run_table(): PC1, PCm, ICq per method, SICq per method.
  std::vector<ErrorRow> row_layout() const {
    std::vector<ErrorRow> rows;
    auto add = [&](Selector s, std::optional<WhiteningMethod> m, const char* policy) {
      ErrorRow r;
      r.selector = s;
      r.method = m;
      r.theta_policy = policy;
      r.sigma = cfg_.sigma;
      rows.push_back(std::move(r));
    };
    add(Selector::PC1, std::nullopt, "none");
    add(Selector::PCm, std::nullopt, "none");
    for (auto m : cfg_.methods) add(Selector::ICq, m, "0");
    for (auto m : cfg_.methods) add(Selector::SICq, m, "min_kurtosis");
    return rows;
  }

  struct ReplicationResult {
    std::vector<double> errors;
    std::vector<double> thetas;
    std::vector<std::string> failures;
  };

  ReplicationResult run_replication(int index) const {
    const auto layout = row_layout();
    ReplicationResult res;
    res.errors.assign(layout.size(), std::numeric_limits<double>::quiet_NaN());
    res.thetas.assign(layout.size(), std::numeric_limits<double>::quiet_NaN());
    res.failures.assign(layout.size(), std::string());
    SimReplication rep;
    try {
      rep = generate(index);
    } catch (const Error& e) {
      for (auto& f : res.failures) f = e.what();
      return res;
    }
    for (std::size_t r = 0; r < layout.size(); ++r) {
      const ErrorRow& row = layout[r];
      try {
        PipelineConfig pc;
        pc.selector = row.selector;
        pc.method = row.method.value_or(WhiteningMethod::ZCA);
        if (row.selector == Selector::SICq) {
          std::vector<CVCandidate> grid;
          for (double th : cfg_.theta_grid) grid.push_back({pc.method, th, cfg_.q});
          pc.theta = cross_validate(rep.train, grid, CVCriterion::MinKurtosis, Selector::SICq).best.theta;
          res.thetas[r] = pc.theta;
        }
        const CentroidModel model = fit_classifier(rep.train, pc);
        res.errors[r] = error_rate(predict(model, rep.test).labels, *rep.test.labels);
      } catch (const Error& e) {
        res.failures[r] = e.what();
      }
    }
    return res;
  }

  /// Mean and sample standard deviation per row over all replications.
  /// Failed replications are excluded from the statistics and counted.
  ErrorTable run_table() const {
    const int reps = cfg_.replications;
    std::vector<ReplicationResult> results(static_cast<std::size_t>(reps));
    std::atomic<int> next{0};
    auto worker = [&]() {
      for (int i = next++; i < reps; i = next++) results[static_cast<std::size_t>(i)] = run_replication(i);
    };
    int threads = cfg_.threads == 0 ? static_cast<int>(std::thread::hardware_concurrency()) : cfg_.threads;
    threads = std::clamp(threads, 1, reps);
    if (threads == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
    ErrorTable table;
    table.example = cfg_.example;
    table.scenario = cfg_.scenario;
    table.n_k = cfg_.n_k;
    table.evaluation = cfg_.evaluation;
    table.rows = row_layout();
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      ErrorRow& row = table.rows[r];
      double sum = 0.0;
      for (int i = 0; i < reps; ++i) {
        const auto& res = results[static_cast<std::size_t>(i)];
        row.errors.push_back(res.errors[r]);
        row.thetas.push_back(res.thetas[r]);
        if (std::isnan(res.errors[r])) {
          ++row.failed;
          row.failures.push_back("replication " + std::to_string(i) + ": " + res.failures[r]);
        } else {
          ++row.count;
          sum += res.errors[r];
        }
      }
      row.mean = row.count ? sum / row.count : std::numeric_limits<double>::quiet_NaN();
      double ss = 0.0;
      for (double e : row.errors) {
        if (!std::isnan(e)) ss += (e - row.mean) * (e - row.mean);
      }
      row.sd = row.count > 1 ? std::sqrt(ss / (row.count - 1)) : 0.0;
    }
    return table;
  }

  /// Fisher direction of the known truth, truncated at q (default: the
  /// configured basis dimension), with its least-squares basis coefficients.
  FisherOracle fisher_oracle(int q = 0) const {
    FisherOracle o = fisher_direction(sigma_, means_[0], means_[1], q > 0 ? q : cfg_.q);
    Matrix row = o.phi_grid.transpose();
    o.phi_coefficients = fit_curves(basis_, grid_, row).coefficients.row(0).transpose();
    return o;
  }

 private:
  SimConfig cfg_;
  std::vector<double> grid_;
  Matrix sigma_;
  EigenSystem kernel_;
  std::vector<Eigen::Index> active_;
  std::array<Vector, 2> means_;
  BasisPtr basis_;
};

/// Two-class corpus on [0, 1] with class-specific low-rank variation and
/// per-class white noise. Class 0 varies along sin(2πjt) with scale 2/j,
/// class 1 along cos(πjt) with scale 1/j (j = 1..rank); class 1 is shifted
/// by mean_shift·sin(πt).
struct SurrogateConfig {
  int grid_points = 40;
  int q = 11;
  int n_k = 40;
  int rank = 3;
  std::array<double, 2> noise{0.5, 1.0};
  double mean_shift = 0.5;
  Scenario scenario = Scenario::ExpShifted;
};

struct SurrogateSample {
  std::vector<double> grid;
  Matrix samples;
  FDataSet data;
};

inline SurrogateSample heterogeneous_surrogate(const SurrogateConfig& c, std::uint64_t seed) {
  if (c.grid_points < 2 || c.n_k < 1 || c.rank < 0 || c.q < 4 || c.noise[0] < 0.0 || c.noise[1] < 0.0) {
    throw Error(ErrorKind::InvalidConfig, "invalid surrogate configuration");
  }
  SurrogateSample out;
  for (int k = 0; k < c.grid_points; ++k) out.grid.push_back(k / static_cast<double>(c.grid_points - 1));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::exponential_distribution<double> expo(1.0);
  const double pi = std::numbers::pi;
  const auto m = static_cast<Eigen::Index>(c.grid_points);
  out.samples.resize(2 * c.n_k, m);
  std::vector<int> labels;
  Vector z(c.rank);
  for (int i = 0; i < 2 * c.n_k; ++i) {
    const int k = i < c.n_k ? 0 : 1;
    labels.push_back(k);
    for (int j = 0; j < c.rank; ++j) z(j) = c.scenario == Scenario::Gaussian ? normal(rng) : expo(rng) - 1.0;
    for (Eigen::Index t = 0; t < m; ++t) {
      const double s = out.grid[static_cast<std::size_t>(t)];
      double v = k == 1 ? c.mean_shift * std::sin(pi * s) : 0.0;
      for (int j = 0; j < c.rank; ++j) {
        v += k == 0 ? 2.0 / (j + 1) * z(j) * std::sin(2.0 * pi * (j + 1) * s)
                    : 1.0 / (j + 1) * z(j) * std::cos(pi * (j + 1) * s);
      }
      out.samples(i, t) = v + c.noise[static_cast<std::size_t>(k)] * normal(rng);
    }
  }
  auto basis = std::make_shared<const FunctionalBasis>(build_basis({0.0, 1.0}, 4, c.q, 2));
  out.data = fit_curves(basis, out.grid, out.samples, labels);
  return out;
}

inline ErrorTable run_table(const SimConfig& cfg) { return SimLab(cfg).run_table(); }

/// run_table with ZCA only, once per σ; rows carry their σ.
inline ErrorTable noise_sweep(SimConfig cfg, const std::vector<double>& sigmas) {
  if (sigmas.empty()) throw Error(ErrorKind::InvalidConfig, "empty sigma list");
  cfg.methods = {WhiteningMethod::ZCA};
  ErrorTable out;
  for (double s : sigmas) {
    if (!(s >= 0.0)) throw Error(ErrorKind::InvalidConfig, "sigma must be non-negative");
    cfg.sigma = s;
    ErrorTable t = run_table(cfg);
    out.example = t.example;
    out.scenario = t.scenario;
    out.n_k = t.n_k;
    out.evaluation = t.evaluation;
    for (auto& r : t.rows) out.rows.push_back(std::move(r));
  }
  return out;
}

}  // namespace fkica
