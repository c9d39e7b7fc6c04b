// fkica: command-line front end.
//
//   fkica simulate    --config FILE --out DIR
//   fkica noise-sweep --config FILE --sigmas 0,0.5,1 --out DIR
//   fkica fica        --curves FILE [--labels FILE] --out DIR [model flags]
//   fkica classify    --train FILE --train-labels FILE --test FILE --out DIR
//   fkica picard      --curves FILE [--labels FILE] --out DIR
//
// Exit codes: 0 ok, 2 configuration, 3 numerical, 4 data.

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "fkica/fkica.hpp"

namespace fs = std::filesystem;
using namespace fkica;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitData = 4;

struct Failure {
  int code;
  std::string message;
};

int exit_code(ErrorKind k, bool data_command) {
  switch (k) {
    case ErrorKind::InvalidConfig:
    case ErrorKind::InvalidBasisSpec:
      return kExitConfig;
    case ErrorKind::Io:
      return data_command ? kExitData : kExitConfig;
    case ErrorKind::NearSingular:
    case ErrorKind::NotPositiveDefinite:
    case ErrorKind::NotSymmetric:
    case ErrorKind::PenaltyNotPD:
    case ErrorKind::NotWhitened:
    case ErrorKind::NonPDCovariance:
      return data_command ? kExitData : kExitNumerical;
    default:
      return kExitData;
  }
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Output files are collected in memory and written only after every step
/// succeeded, so a failing run leaves no partial directory behind.
class OutputSet {
 public:
  std::ostringstream& file(const std::string& name) { return files_[name]; }

  void commit(const fs::path& dir, const std::string& manifest) {
    fs::create_directories(dir);
    for (auto& [name, content] : files_) write(dir / name, content.str());
    write(dir / "manifest.txt", manifest);
  }

 private:
  static void write(const fs::path& p, const std::string& s) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot write '" + p.string() + "'");
    out << s;
  }
  std::map<std::string, std::ostringstream> files_;
};

struct Manifest {
  std::string subcommand;
  std::string config;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> inputs;

  void add_input(const std::string& path) {
    inputs.emplace_back(path, hex64(fnv1a(read_file(path))));
  }

  std::string str() const {
    std::ostringstream os;
    os << "subcommand = " << subcommand << '\n'
       << "version = " << kVersion << '\n'
       << "seed = " << seed << '\n';
    for (const auto& [p, d] : inputs) os << "input = " << p << " fnv1a64:" << d << '\n';
    os << "timestamp = " << utc_timestamp() << '\n' << "[config]\n" << config;
    return os.str();
  }
};

std::optional<std::uint64_t> env_seed() {
  const char* s = std::getenv("FKICA_SEED");
  if (!s || !*s) return std::nullopt;
  long long v = 0;
  if (!parse_int(s, v) || v < 0) throw Error(ErrorKind::InvalidConfig, "FKICA_SEED must be a non-negative integer");
  return static_cast<std::uint64_t>(v);
}

SimConfig load_sim_config(const std::string& path, int threads) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidConfig, "cannot open config '" + path + "'");
  SimConfig cfg = parse_sim_config(in);
  if (auto s = env_seed()) cfg.seed = *s;
  if (threads >= 0) cfg.threads = threads;
  validate(cfg);
  return cfg;
}

void report_failures(const ErrorTable& t) {
  for (const auto& r : t.rows) {
    for (const auto& f : r.failures) {
      std::cerr << "warning: " << to_string(r.selector) << '/'
                << (r.method ? std::string(to_string(*r.method)) : std::string("-")) << " sigma=" << r.sigma
                << ' ' << f << '\n';
    }
    if (r.count == 0) {
      throw Error(ErrorKind::NearSingular, std::string("every replication failed for ") +
                                               std::string(to_string(r.selector)));
    }
  }
}

// Model flags shared by fica and classify.
struct ModelFlags {
  int q = 5;
  int order = 4;
  int penalty_order = 2;
  double theta = 0.0;
  std::string whitening = "zca";
  std::string selector = "ICq";
  int reduce_p = 0;
  double tol = kDefaultEigenTol;

  void attach(CLI::App* app) {
    app->add_option("--q", q, "Basis dimension")->capture_default_str();
    app->add_option("--order", order, "B-spline order")->capture_default_str();
    app->add_option("--penalty-order", penalty_order, "Derivative order of the roughness penalty")
        ->capture_default_str();
    app->add_option("--theta", theta, "Roughness penalty weight")->capture_default_str();
    app->add_option("--whitening", whitening, "pca, pca-cor, zca, zca-cor or cholesky")
        ->capture_default_str();
    app->add_option("--selector", selector, "PC1, PCm, ICq or SICq")->capture_default_str();
    app->add_option("--reduce-p", reduce_p, "Group-wise FPCA rank (0 = off)")->capture_default_str();
    app->add_option("--tol", tol, "Covariance eigenvalue floor")->capture_default_str();
  }

  PipelineConfig pipeline() const {
    PipelineConfig pc;
    pc.selector = parse_selector(selector);
    pc.method = parse_whitening(whitening);
    pc.theta = theta;
    pc.reduce_p = reduce_p;
    pc.tol = tol;
    if (!(theta >= 0.0)) throw Error(ErrorKind::InvalidConfig, "--theta must be non-negative");
    if (reduce_p < 0) throw Error(ErrorKind::InvalidConfig, "--reduce-p must be non-negative");
    if (pc.selector == Selector::ICq && theta != 0.0) pc.selector = Selector::SICq;
    return pc;
  }

  std::string describe() const {
    std::ostringstream os;
    os.precision(17);
    os << "q = " << q << "\norder = " << order << "\npenalty_order = " << penalty_order
       << "\ntheta = " << theta << "\nwhitening = " << whitening << "\nselector = " << selector
       << "\nreduce_p = " << reduce_p << "\ntol = " << tol << '\n';
    return os.str();
  }
};

BasisPtr basis_for(const std::vector<double>& grid, const ModelFlags& f) {
  const auto [lo, hi] = std::minmax_element(grid.begin(), grid.end());
  return std::make_shared<const FunctionalBasis>(build_basis({*lo, *hi}, f.order, f.q, f.penalty_order));
}

FDataSet load_dataset(const std::string& curves, const std::string& labels, const ModelFlags& f,
                      Manifest& man, BasisPtr basis = nullptr) {
  const CurveTable t = read_curves_csv(curves);
  man.add_input(curves);
  std::optional<std::vector<int>> lab;
  if (!labels.empty()) {
    lab = read_labels_csv(labels);
    man.add_input(labels);
    if (static_cast<Eigen::Index>(lab->size()) != t.values.rows()) {
      throw Error(ErrorKind::InvalidConfig, "label count does not match curve count");
    }
  }
  if (!basis) basis = basis_for(t.grid, f);
  return fit_curves(basis, t.grid, t.values, lab);
}

void write_scores(std::ostream& os, const Matrix& xi, const std::string& prefix) {
  os << "curve_id";
  for (Eigen::Index j = 0; j < xi.cols(); ++j) os << ',' << prefix << j + 1;
  os << '\n';
  os.precision(17);
  for (Eigen::Index i = 0; i < xi.rows(); ++i) {
    os << i;
    for (Eigen::Index j = 0; j < xi.cols(); ++j) os << ',' << xi(i, j);
    os << '\n';
  }
}

int run_simulate(const std::string& config, const std::string& out, int threads) {
  const SimConfig cfg = load_sim_config(config, threads);
  Manifest man;
  man.subcommand = "simulate";
  man.seed = cfg.seed;
  man.add_input(config);
  std::ostringstream c;
  write_sim_config(c, cfg);
  man.config = c.str();
  const ErrorTable t = run_table(cfg);
  report_failures(t);
  OutputSet files;
  write_error_table_csv(files.file("table.csv"), t);
  files.commit(out, man.str());
  write_error_table_csv(std::cout, t);
  return 0;
}

int run_noise_sweep(const std::string& config, const std::string& sigmas, const std::string& out,
                    int threads) {
  SimConfig cfg = load_sim_config(config, threads);
  std::vector<double> sig;
  for (const auto& s : split(sigmas, ',')) {
    double v = 0.0;
    if (!parse_double(s, v) || v < 0.0) throw Error(ErrorKind::InvalidConfig, "bad sigma '" + s + "'");
    sig.push_back(v);
  }
  Manifest man;
  man.subcommand = "noise-sweep";
  man.seed = cfg.seed;
  man.add_input(config);
  std::ostringstream c;
  write_sim_config(c, cfg);
  c << "sigmas = " << sigmas << '\n';
  man.config = c.str();
  const ErrorTable t = noise_sweep(cfg, sig);
  report_failures(t);
  OutputSet files;
  write_error_table_csv(files.file("noise_sweep.csv"), t);
  files.commit(out, man.str());
  write_error_table_csv(std::cout, t);
  return 0;
}

int run_fica(const std::string& curves, const std::string& labels, const std::string& out,
             const ModelFlags& flags) {
  const PipelineConfig pc = flags.pipeline();
  Manifest man;
  man.subcommand = "fica";
  man.config = flags.describe();
  FDataSet data = load_dataset(curves, labels, flags, man);
  if (pc.reduce_p > 0 && !data.labels) {
    throw Error(ErrorKind::MissingLabels, "--reduce-p needs --labels");
  }
  // Kurtosis decomposition on the (optionally reduced) curves.
  FDataSet work = data;
  if (pc.reduce_p > 0) {
    work = principal_coordinates(groupwise_fpca_reduce(data, pc.reduce_p, pc.tol), data.dimension(), pc.tol).data;
  }
  const WhiteningModel wm = fit_whitening(work, pc.method, pc.tol);
  const FDataSet white = apply_whitening(wm, work);
  const double dev = hs_distance_to_identity(whitened_covariance(white, wm.gram_sqrt));
  const KurtosisModel km = solve_penalized(white, pc.theta);
  const ICScores sc = scores(km, white);

  OutputSet files;
  write_scores(files.file("scores.csv"), sc.xi, "ic");
  {
    auto& d = files.file("diagnostics.csv");
    d.precision(17);
    d << "component,kappa,normalized_kurtosis,score_kurtosis\n";
    for (int j = 0; j < km.dimension(); ++j) {
      d << j + 1 << ',' << km.kappa(j) << ',' << sc.normalized_kurtosis(j) << ',' << sc.score_kurtosis(j)
        << '\n';
    }
  }
  PicardReport pr = picard_series(data);
  select_q(pr);
  write_picard_csv(pr, files.file("picard.csv"));

  std::cout.precision(6);
  std::cout << "whitened covariance hs_distance = " << std::scientific << dev << std::defaultfloat << '\n';
  std::cout << "last normalized kurtosis = " << sc.normalized_kurtosis(km.dimension() - 1) << '\n';
  std::cout << "singularity distance = " << singularity_distance(sc.normalized_kurtosis(km.dimension() - 1))
            << '\n';
  std::cout << "picard selected q = " << pr.selected_q << (pr.no_stable_point ? " (no stable point)" : "")
            << '\n';
  if (data.labels) {
    const CentroidModel model = fit_classifier(data, pc);
    save_model(model, files.file("model.txt"));
    auto& dir = files.file("direction.csv");
    dir.precision(17);
    dir << "coefficient,beta\n";
    for (Eigen::Index i = 0; i < model.beta.size(); ++i) dir << i << ',' << model.beta(i) << '\n';
    const double loo = loo_error(data, pc);
    std::cout << "training error % = "
              << error_rate(predict(model, data).labels, *data.labels) << '\n'
              << "loo error % = " << loo << '\n';
    files.file("summary.txt") << "loo_error_pct = " << loo << '\n';
  }
  files.commit(out, man.str());
  return 0;
}

int run_classify(const std::string& train, const std::string& train_labels, const std::string& test,
                 const std::string& test_labels, const std::string& model_in, const std::string& out,
                 const ModelFlags& flags) {
  Manifest man;
  man.subcommand = "classify";
  man.config = flags.describe();
  CentroidModel model;
  if (!model_in.empty()) {
    std::ifstream in(model_in);
    if (!in) throw Error(ErrorKind::Io, "cannot open model '" + model_in + "'");
    model = load_model(in);
    man.add_input(model_in);
    man.config += "model = " + model_in + '\n';
  } else {
    if (train.empty() || train_labels.empty()) {
      throw Error(ErrorKind::InvalidConfig, "--train and --train-labels are required without --model");
    }
    const PipelineConfig pc = flags.pipeline();
    const FDataSet tr = load_dataset(train, train_labels, flags, man);
    model = fit_classifier(tr, pc);
  }
  const FDataSet te = load_dataset(test, test_labels, flags, man, model.basis);
  const Prediction pred = predict(model, te);
  OutputSet files;
  {
    auto& p = files.file("predictions.csv");
    p.precision(17);
    p << "curve_id,label,score\n";
    for (std::size_t i = 0; i < pred.labels.size(); ++i) {
      p << i << ',' << pred.labels[i] << ',' << pred.scores(static_cast<Eigen::Index>(i)) << '\n';
    }
  }
  save_model(model, files.file("model.txt"));
  if (model.degenerate) std::cerr << "warning: DegenerateDirection, class means coincide\n";
  if (te.labels) {
    const double err = error_rate(pred.labels, *te.labels);
    std::cout << "misclassification % = " << err << '\n';
    files.file("summary.txt") << "misclassification_pct = " << err << '\n';
  }
  files.commit(out, man.str());
  return 0;
}

int run_picard(const std::string& curves, const std::string& labels, const std::string& out,
               const ModelFlags& flags, int delta, double band, const std::vector<int>& consistency_q) {
  Manifest man;
  man.subcommand = "picard";
  std::ostringstream c;
  c << flags.describe() << "delta = " << delta << "\nband = " << band << '\n';
  man.config = c.str();
  const FDataSet data = load_dataset(curves, labels, flags, man);
  PicardReport pr = picard_series(data);
  const QSelection s = select_q(pr, delta, band);
  OutputSet files;
  write_picard_csv(pr, files.file("picard.csv"));
  if (!consistency_q.empty()) {
    const CurveTable t = read_curves_csv(curves);
    const auto pts = whitening_consistency_curve(t.grid, t.values, parse_whitening(flags.whitening),
                                                 consistency_q, flags.order, flags.penalty_order, flags.tol);
    auto& f = files.file("consistency.csv");
    f.precision(17);
    f << "q,train_deviation,heldout_deviation\n";
    for (const auto& p : pts) f << p.q << ',' << p.train_deviation << ',' << p.heldout_deviation << '\n';
  }
  std::cout << "selected q = " << s.q << '\n';
  if (s.no_stable_point) std::cerr << "warning: NoStablePoint, no zero band found\n";
  files.commit(out, man.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Functional kurtosis ICA and centroid classification"};
  app.require_subcommand(1);

  std::string config, out, sigmas = "0,0.5,1", curves, labels, train, train_labels, test, test_labels,
                                   model_in;
  int threads = -1, delta = kDefaultPicardMargin;
  double band = kDefaultPicardBand;
  std::vector<int> consistency_q;
  ModelFlags flags;

  auto* sim = app.add_subcommand("simulate", "Regenerate an error table from a config file");
  sim->add_option("--config", config)->required();
  sim->add_option("--out", out)->required();
  sim->add_option("--threads", threads, "Worker threads (0 = all cores)");

  auto* sweep = app.add_subcommand("noise-sweep", "Error table over noise levels, ZCA only");
  sweep->add_option("--config", config)->required();
  sweep->add_option("--sigmas", sigmas, "Comma separated noise levels")->capture_default_str();
  sweep->add_option("--out", out)->required();
  sweep->add_option("--threads", threads, "Worker threads (0 = all cores)");

  auto* fica = app.add_subcommand("fica", "Kurtosis ICA of sampled curves");
  fica->add_option("--curves", curves)->required();
  fica->add_option("--labels", labels);
  fica->add_option("--out", out)->required();
  flags.attach(fica);

  auto* cls = app.add_subcommand("classify", "Train a centroid classifier and predict");
  cls->add_option("--train", train);
  cls->add_option("--train-labels", train_labels);
  cls->add_option("--test", test)->required();
  cls->add_option("--test-labels", test_labels);
  cls->add_option("--model", model_in, "Load a saved model instead of training");
  cls->add_option("--out", out)->required();
  flags.attach(cls);

  auto* pic = app.add_subcommand("picard", "Picard diagnostics and truncation selection");
  pic->add_option("--curves", curves)->required();
  pic->add_option("--labels", labels);
  pic->add_option("--out", out)->required();
  pic->add_option("--delta", delta)->capture_default_str();
  pic->add_option("--band", band)->capture_default_str();
  pic->add_option("--consistency-q", consistency_q, "Basis dimensions for the whitening consistency curve");
  flags.attach(pic);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  const bool data_command = !sim->parsed() && !sweep->parsed();
  try {
    if (sim->parsed()) return run_simulate(config, out, threads);
    if (sweep->parsed()) return run_noise_sweep(config, sigmas, out, threads);
    if (fica->parsed()) return run_fica(curves, labels, out, flags);
    if (cls->parsed()) return run_classify(train, train_labels, test, test_labels, model_in, out, flags);
    if (pic->parsed()) return run_picard(curves, labels, out, flags, delta, band, consistency_q);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what();
    if (e.kind() == ErrorKind::NearSingular) std::cerr << " (eigenvalue " << e.value() << ')';
    std::cerr << '\n';
    return exit_code(e.kind(), data_command);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return data_command ? kExitData : kExitNumerical;
  }
  return 0;
}
