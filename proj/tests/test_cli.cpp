#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "fkica/fkica.hpp"

namespace fs = std::filesystem;
using namespace fkica;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() /
           ("fkica_cli_" + std::to_string(::getpid()) + "_" + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path path(const std::string& name) const { return dir_ / name; }

  /// Runs the CLI with `args`; stdout goes to out_, stderr to err_.
  int run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " \"" FKICA_CLI_PATH "\" " + args + " > \"" + path("stdout.txt").string() +
                            "\" 2> \"" + path("stderr.txt").string() + "\"";
    const int status = std::system(cmd.c_str());
    out_ = read(path("stdout.txt"));
    err_ = read(path("stderr.txt"));
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  static std::string read(const fs::path& p) { return fs::exists(p) ? read_file(p.string()) : std::string(); }

  void write(const std::string& name, const std::string& content) const {
    std::ofstream(path(name)) << content;
  }

  void write_curves(const std::string& name, const std::vector<double>& grid, const Matrix& values) const {
    std::ofstream os(path(name));
    write_curves_csv(os, grid, values);
  }

  void write_labels(const std::string& name, const std::vector<int>& labels) const {
    std::ofstream os(path(name));
    write_labels_csv(os, labels);
  }

  /// Example-1 training (and optional holdout) files from replication `index`.
  void example_files(int index, int n_k, int test_n = 0) {
    SimConfig c;
    c.n_k = n_k;
    c.evaluation = test_n > 0 ? Evaluation::Holdout : Evaluation::Resubstitution;
    c.test_n = std::max(1, test_n);
    const SimLab lab(c);
    const SimReplication r = lab.generate(index);
    write_curves("train.csv", lab.grid(), r.train_samples);
    write_labels("train_labels.csv", *r.train.labels);
    if (test_n > 0) {
      write_curves("test.csv", lab.grid(), r.test_samples);
      write_labels("test_labels.csv", *r.test.labels);
    }
  }

  static double value_after(const std::string& text, const std::string& key) {
    const auto pos = text.find(key);
    if (pos == std::string::npos) return std::numeric_limits<double>::quiet_NaN();
    std::istringstream is(text.substr(pos + key.size()));
    double v = 0.0;
    is >> v;
    return v;
  }

  fs::path dir_;
  std::string out_, err_;
};

const char* kSmallConfig =
    "example = 1\nn_k = 10\nreplications = 3\nq = 5\ntheta_grid = 0 1\nmethods = zca cholesky\n"
    "seed = 11\n";

}  // namespace

TEST_F(CliTest, SimulateIsReproducible) {
  write("small.cfg", kSmallConfig);
  const std::string cfg = path("small.cfg").string();
  ASSERT_EQ(run("simulate --config " + cfg + " --out " + path("a").string()), 0) << err_;
  ASSERT_EQ(run("simulate --config " + cfg + " --out " + path("b").string() + " --threads 2"), 0) << err_;
  const std::string a = read(path("a") / "table.csv");
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, read(path("b") / "table.csv"));
  EXPECT_NE(a.find("SICq,zca,min_kurtosis"), std::string::npos);
  const std::string man = read(path("a") / "manifest.txt");
  EXPECT_NE(man.find("subcommand = simulate"), std::string::npos);
  EXPECT_NE(man.find("seed = 11"), std::string::npos);
  EXPECT_NE(man.find("fnv1a64:" + hex64(fnv1a(kSmallConfig))), std::string::npos);
}

TEST_F(CliTest, SeedEnvironmentOverride) {
  write("small.cfg", kSmallConfig);
  const std::string cfg = path("small.cfg").string();
  ASSERT_EQ(run("simulate --config " + cfg + " --out " + path("a").string()), 0) << err_;
  ASSERT_EQ(run("simulate --config " + cfg + " --out " + path("b").string(), "FKICA_SEED=12"), 0) << err_;
  EXPECT_NE(read(path("b") / "manifest.txt").find("seed = 12"), std::string::npos);
  EXPECT_NE(read(path("a") / "table.csv"), read(path("b") / "table.csv"));
  EXPECT_EQ(run("simulate --config " + cfg + " --out " + path("c").string(), "FKICA_SEED=minus"), 2);
}

TEST_F(CliTest, MalformedConfigExitsTwoWithoutOutput) {
  write("bad.cfg", "example = 1\nn_k = lots\n");
  EXPECT_EQ(run("simulate --config " + path("bad.cfg").string() + " --out " + path("out").string()), 2);
  EXPECT_FALSE(fs::exists(path("out")));
  EXPECT_NE(err_.find("n_k"), std::string::npos);
  write("unknown.cfg", "flavour = 1\n");
  EXPECT_EQ(run("simulate --config " + path("unknown.cfg").string() + " --out " + path("out").string()), 2);
  EXPECT_EQ(run("simulate --config " + path("missing.cfg").string() + " --out " + path("out").string()), 2);
  EXPECT_FALSE(fs::exists(path("out")));
}

TEST_F(CliTest, BadFlagsExitTwo) {
  EXPECT_EQ(run("fica --out " + path("o").string()), 2);
  EXPECT_EQ(run("nonsense"), 2);
  example_files(0, 20);
  EXPECT_EQ(run("fica --curves " + path("train.csv").string() + " --whitening sideways --out " +
                path("o").string()),
            2);
  EXPECT_FALSE(fs::exists(path("o")));
}

TEST_F(CliTest, NoiseSweepWritesOneBlockPerSigma) {
  write("small.cfg", kSmallConfig);
  ASSERT_EQ(run("noise-sweep --config " + path("small.cfg").string() + " --sigmas 0,0.5 --out " +
                path("s").string()),
            0)
      << err_;
  const std::string t = read(path("s") / "noise_sweep.csv");
  EXPECT_NE(t.find(",0,resubstitution,PC1"), std::string::npos);
  EXPECT_NE(t.find(",0.5,resubstitution,PC1"), std::string::npos);
  EXPECT_EQ(t.find("cholesky"), std::string::npos);
}

TEST_F(CliTest, FicaWhitensAndThetaZeroMatchesDefault) {
  example_files(1, 50);
  const std::string in = "--curves " + path("train.csv").string() + " --labels " + path("train_labels.csv").string();
  ASSERT_EQ(run("fica " + in + " --out " + path("a").string()), 0) << err_;
  const double hs = value_after(out_, "hs_distance =");
  EXPECT_LE(hs, 1e-8);
  EXPECT_GE(value_after(out_, "loo error % ="), 0.0);
  ASSERT_EQ(run("fica " + in + " --theta 0 --out " + path("b").string()), 0) << err_;
  const std::string sa = read(path("a") / "scores.csv");
  EXPECT_FALSE(sa.empty());
  EXPECT_EQ(sa, read(path("b") / "scores.csv"));
  EXPECT_EQ(read(path("a") / "model.txt"), read(path("b") / "model.txt"));
  for (const char* f : {"diagnostics.csv", "picard.csv", "direction.csv", "summary.txt", "manifest.txt"}) {
    EXPECT_TRUE(fs::exists(path("a") / f)) << f;
  }
}

TEST_F(CliTest, FicaWithoutLabelsSkipsClassifier) {
  example_files(2, 30);
  ASSERT_EQ(run("fica --curves " + path("train.csv").string() + " --whitening cholesky --out " +
                path("a").string()),
            0)
      << err_;
  EXPECT_TRUE(fs::exists(path("a") / "scores.csv"));
  EXPECT_FALSE(fs::exists(path("a") / "model.txt"));
  EXPECT_EQ(run("fica --curves " + path("train.csv").string() + " --reduce-p 2 --out " + path("b").string()),
            4);
}

TEST_F(CliTest, NearSingularInputExitsFour) {
  // Every curve lies in a two-dimensional span, so a 5-dimensional fit is singular.
  const std::vector<double> grid{0.0, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0};
  Matrix v(12, 9);
  for (int i = 0; i < 12; ++i)
    for (int k = 0; k < 9; ++k) v(i, k) = (i % 5) * grid[static_cast<std::size_t>(k)] + (i % 3);
  write_curves("flat.csv", grid, v);
  EXPECT_EQ(run("fica --curves " + path("flat.csv").string() + " --out " + path("o").string()), 4);
  EXPECT_NE(err_.find("eigenvalue"), std::string::npos);
  EXPECT_FALSE(fs::exists(path("o")));
}

TEST_F(CliTest, MissingDataFileExitsFour) {
  EXPECT_EQ(run("picard --curves " + path("absent.csv").string() + " --out " + path("o").string()), 4);
}

TEST_F(CliTest, SeparatedToyHasZeroTrainingError) {
  std::vector<double> grid;
  for (int k = 0; k < 15; ++k) grid.push_back(k / 14.0);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd(0.0, 0.1);
  constexpr int kN = 200;
  Matrix v(kN, 15);
  std::vector<int> labels;
  for (int i = 0; i < kN; ++i) {
    const int y = i < kN / 2 ? 0 : 1;
    labels.push_back(y);
    const double a = nd(rng), b = nd(rng), c = nd(rng);
    for (int k = 0; k < 15; ++k) {
      const double t = grid[static_cast<std::size_t>(k)];
      v(i, k) = (y ? 3.0 : -3.0) + a + b * t + c * t * t + 0.01 * nd(rng);
    }
  }
  write_curves("toy.csv", grid, v);
  write_labels("toy_labels.csv", labels);
  const std::string t = path("toy.csv").string(), l = path("toy_labels.csv").string();
  ASSERT_EQ(run("classify --train " + t + " --train-labels " + l + " --test " + t + " --test-labels " + l +
                " --q 5 --out " + path("o").string()),
            0)
      << err_;
  EXPECT_EQ(value_after(out_, "misclassification % ="), 0.0);
  EXPECT_NE(read(path("o") / "summary.txt").find("misclassification_pct = 0"), std::string::npos);
}

TEST_F(CliTest, ModelRoundTripGivesIdenticalPredictions) {
  example_files(4, 50, 100);
  const std::string common = " --test " + path("test.csv").string() + " --test-labels " +
                             path("test_labels.csv").string();
  ASSERT_EQ(run("classify --train " + path("train.csv").string() + " --train-labels " +
                path("train_labels.csv").string() + common + " --selector SICq --theta 1 --out " +
                path("a").string()),
            0)
      << err_;
  ASSERT_EQ(run("classify --model " + (path("a") / "model.txt").string() + common + " --out " +
                path("b").string()),
            0)
      << err_;
  EXPECT_FALSE(read(path("a") / "predictions.csv").empty());
  EXPECT_EQ(read(path("a") / "predictions.csv"), read(path("b") / "predictions.csv"));
  EXPECT_EQ(read(path("a") / "model.txt"), read(path("b") / "model.txt"));
}

TEST_F(CliTest, ExampleOneHoldoutErrorIsSmall) {
  example_files(5, 50, 500);
  ASSERT_EQ(run("classify --train " + path("train.csv").string() + " --train-labels " +
                path("train_labels.csv").string() + " --test " + path("test.csv").string() +
                " --test-labels " + path("test_labels.csv").string() + " --selector ICq --whitening zca --out " +
                path("o").string()),
            0)
      << err_;
  const double err = value_after(out_, "misclassification % =");
  EXPECT_LE(err, 0.97 + 1.5);
}

TEST_F(CliTest, PicardWritesSeriesAndConsistency) {
  example_files(6, 50);
  ASSERT_EQ(run("picard --curves " + path("train.csv").string() + " --labels " +
                path("train_labels.csv").string() + " --q 8 --consistency-q 4 5 6 --out " +
                path("p").string()),
            0)
      << err_;
  const std::string p = read(path("p") / "picard.csv");
  EXPECT_NE(p.find("log_ratio,rkhs_partial"), std::string::npos);
  EXPECT_EQ(std::count(p.begin(), p.end(), '\n'), 9);
  const std::string c = read(path("p") / "consistency.csv");
  EXPECT_EQ(std::count(c.begin(), c.end(), '\n'), 4);
  EXPECT_GE(value_after(out_, "selected q ="), 2.0);
}

TEST_F(CliTest, GroupwiseReductionLowersLooError) {
  SurrogateConfig c;
  c.rank = 8;
  c.n_k = 60;
  c.noise = {0.3, 0.6};
  const SurrogateSample s = heterogeneous_surrogate(c, replication_seed(13, 0));
  write_curves("het.csv", s.grid, s.samples);
  write_labels("het_labels.csv", *s.data.labels);
  const std::string in = "fica --curves " + path("het.csv").string() + " --labels " +
                         path("het_labels.csv").string() + " --q 11";
  ASSERT_EQ(run(in + " --out " + path("a").string()), 0) << err_;
  const double plain = value_after(out_, "loo error % =");
  ASSERT_EQ(run(in + " --reduce-p 8 --out " + path("b").string()), 0) << err_;
  const double reduced = value_after(out_, "loo error % =");
  EXPECT_LT(reduced, plain);
  EXPECT_NE(read(path("b") / "model.txt").find("reduce_p = 8"), std::string::npos);
}
