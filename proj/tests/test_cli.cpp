#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "app.hpp"
#include "neurochaos/dataio.hpp"

namespace fs = std::filesystem;
using neurochaos::cli::run;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) out[e.path().filename().string()] = slurp(e.path());
  return out;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    root = fs::temp_directory_path() /
           ("neurochaos-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(root);
    fs::create_directories(root);
    gaussian = root / "gauss.csv";
    std::ofstream f(gaussian);
    neurochaos::write_csv(f, neurochaos::make_gaussian_classes({2, 40, 3, 2.0}, 1));
  }
  void TearDown() override { fs::remove_all(root); }

  int cli(std::vector<std::string> args) {
    out.str("");
    err.str("");
    args.push_back("--data-dir");
    args.push_back(NEUROCHAOS_TEST_DATA_DIR "/uci");
    return run(args, out, err);
  }

  fs::path root, gaussian;
  std::ostringstream out, err;
};

}  // namespace

TEST_F(CliTest, HelpAndUsageErrors) {
  EXPECT_EQ(run({"--help"}, out, err), 0);
  EXPECT_EQ(run({}, out, err), 2);
  EXPECT_EQ(run({"frobnicate"}, out, err), 2);
  EXPECT_EQ(cli({"eval", "--dataset", "iris", "--arch", "RHxyz", "--out", (root / "o").string()}), 2);
  EXPECT_EQ(cli({"eval", "--dataset", "iris", "--classifier", "svm", "--out", (root / "o").string()}), 2);
  EXPECT_EQ(cli({"eval", "--dataset", "iris", "--q", "0.1", "--out", (root / "o").string()}), 2);
  EXPECT_FALSE(fs::exists(root / "o"));
}

TEST_F(CliTest, MissingDatasetWritesNothing) {
  const auto dir = root / "missing";
  EXPECT_EQ(cli({"eval", "--dataset", (root / "nope.csv").string(), "--q", "0.1", "--b", "0.2", "--epsilon", "0.1",
                 "--out", dir.string()}),
            2);
  EXPECT_NE(err.str().find("not found"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir));
  // bundled reference set that is not shipped
  EXPECT_EQ(cli({"eval", "--dataset", "banknote", "--arch", "RH25L75G", "--out", dir.string()}), 2);
  EXPECT_FALSE(fs::exists(dir));
}

TEST_F(CliTest, MalformedCsvIsRuntimeFailure) {
  const auto bad = root / "bad.csv";
  std::ofstream(bad) << "a,b,class\n1,2,x\n3,oops,y\n";
  EXPECT_EQ(cli({"eval", "--dataset", bad.string(), "--q", "0.1", "--b", "0.2", "--epsilon", "0.1", "--out",
                 (root / "o").string()}),
            1);
  EXPECT_NE(err.str().find("row 3"), std::string::npos);
}

TEST_F(CliTest, MissingHyperparametersIsUsageError) {
  EXPECT_EQ(cli({"eval", "--dataset", gaussian.string(), "--out", (root / "o").string()}), 2);
}

TEST_F(CliTest, EmptyArchitectureListIsUsageError) {
  const auto cfg = root / "cfg.json";
  std::ofstream(cfg) << R"({"dataset": {"fixture": "iris"}, "architectures": []})";
  EXPECT_EQ(cli({"sweep", "--config", cfg.string(), "--out", (root / "o").string()}), 2);
}

TEST_F(CliTest, EmptyTestSetRejectedByEvalButExportable) {
  const auto dir = root / "all";
  EXPECT_EQ(cli({"eval", "--dataset", gaussian.string(), "--train-counts", "40,40", "--q", "0.1", "--b", "0.45",
                 "--epsilon", "0.05", "--out", dir.string()}),
            2);
  ASSERT_EQ(cli({"export-features", "--dataset", gaussian.string(), "--train-counts", "40,40", "--q", "0.1", "--b",
                 "0.45", "--epsilon", "0.05", "--out", dir.string()}),
            0)
      << err.str();
  EXPECT_TRUE(fs::exists(dir / "train_features.csv"));
  EXPECT_FALSE(fs::exists(dir / "test_features.csv"));
  EXPECT_TRUE(fs::exists(dir / "provenance.json"));
}

TEST_F(CliTest, InfeasibleTrainCounts) {
  EXPECT_EQ(cli({"eval", "--dataset", gaussian.string(), "--train-counts", "41,10", "--q", "0.1", "--b", "0.45",
                 "--epsilon", "0.05", "--out", (root / "o").string()}),
            2);
  EXPECT_EQ(cli({"eval", "--dataset", gaussian.string(), "--train-counts", "10", "--q", "0.1", "--b", "0.45",
                 "--epsilon", "0.05", "--out", (root / "o").string()}),
            2);
}

TEST_F(CliTest, SelfTestWithOneNeighbourIsPerfect) {
  const auto dir = root / "self";
  ASSERT_EQ(cli({"eval", "--dataset", gaussian.string(), "--self-test", "--classifier", "knn:1", "--q", "0.1", "--b",
                 "0.45", "--epsilon", "0.001", "--out", dir.string()}),
            0)
      << err.str();
  const auto j = nlohmann::json::parse(slurp(dir / "metrics.json"));
  EXPECT_DOUBLE_EQ(j.at("median_macro_f1").get<double>(), 1.0);
}

TEST_F(CliTest, EvalReportContents) {
  const auto dir = root / "eval";
  ASSERT_EQ(cli({"eval", "--dataset", "iris", "--arch", "RH25L75G", "--seeds", "3", "--out", dir.string()}), 0)
      << err.str();
  const auto j = nlohmann::json::parse(slurp(dir / "metrics.json"));
  ASSERT_EQ(j.at("runs").size(), 3u);
  const auto& run0 = j.at("runs")[0];
  EXPECT_EQ(run0.at("split").at("test").size(), 30u);
  EXPECT_EQ(run0.at("split").at("digest").get<std::string>().size(), 16u);
  EXPECT_EQ(run0.at("layout").at("kinds").size(), 4u);
  EXPECT_EQ(run0.at("metrics").at("confusion_matrix").size(), 3u);
  EXPECT_TRUE(run0.contains("non_detections"));
  EXPECT_EQ(j.at("hyperparams").at("q").get<double>(), 0.062);
  EXPECT_EQ(j.at("config").at("seed").get<std::uint64_t>(), 42u);
  EXPECT_EQ(j.at("per_seed_macro_f1").size(), 3u);
}

TEST_F(CliTest, ConfigFileWithFlagOverride) {
  const auto cfg = root / "cfg.json";
  std::ofstream(cfg) << R"({"dataset": {"fixture": "iris"}, "architecture": "RH50L50G", "seed": 3, "seeds": 2,
                            "classifier": "gnb", "cap": 5000})";
  const auto dir = root / "cfg";
  ASSERT_EQ(cli({"eval", "--config", cfg.string(), "--seed", "9", "--out", dir.string()}), 0) << err.str();
  const auto j = nlohmann::json::parse(slurp(dir / "metrics.json"));
  EXPECT_EQ(j.at("config").at("seed"), 9);
  EXPECT_EQ(j.at("config").at("cap"), 5000);
  EXPECT_EQ(j.at("classifier"), "gnb");
  EXPECT_EQ(j.at("architecture"), "RH50L50G");
  EXPECT_EQ(j.at("runs").size(), 2u);
}

TEST_F(CliTest, EveryCommandIsByteIdenticalOnRerun) {
  const std::string g = gaussian.string();
  const std::vector<std::pair<std::string, std::vector<std::string>>> commands{
      {"tune",
       {"tune", "--dataset", "iris", "--arch", "RH25L75G", "--grid-q", "0.062,0.2", "--grid-b", "0.185,0.4",
        "--grid-epsilon", "0.05,0.298"}},
      {"eval", {"eval", "--dataset", "iris", "--arch", "RH25L75G", "--seeds", "2", "--threads", "2"}},
      {"sweep",
       {"sweep", "--dataset", "iris", "--arch", "GLS,random:0,HNL", "--classifier", "cosine,knn:3,gnb", "--q",
        "0.062", "--b", "0.185", "--epsilon", "0.298", "--seeds", "2"}},
      {"lowsample",
       {"lowsample", "--dataset", g, "--max-per-class", "4", "--trials", "3", "--q", "0.1", "--b", "0.45",
        "--epsilon", "0.05"}},
      {"lyapunov", {"lyapunov", "--map", "logistic", "--from", "3.6", "--to", "4", "--steps", "5", "--iterations",
                    "20000"}},
      {"export-features",
       {"export-features", "--dataset", "iris", "--arch", "RH25L75G", "--normalization", "train"}},
  };
  const std::map<std::string, std::vector<std::string>> expected_files{
      {"tune", {"grid.csv", "tuned.json"}},
      {"eval", {"metrics.json"}},
      {"sweep", {"sweep.csv", "sweep.json"}},
      {"lowsample", {"lowsample.csv", "lowsample.json"}},
      {"lyapunov", {"lyapunov.csv", "lyapunov.json"}},
      {"export-features", {"provenance.json", "test_features.csv", "train_features.csv"}},
  };
  for (const auto& [name, base] : commands) {
    auto args = base;
    args.push_back("--out");
    args.push_back((root / name).string());
    ASSERT_EQ(cli(args), 0) << name << ": " << err.str();
    const auto first = snapshot(root / name);
    std::vector<std::string> names;
    for (const auto& [file, _] : first) names.push_back(file);
    EXPECT_EQ(names, expected_files.at(name)) << name;
    ASSERT_EQ(cli(args), 0) << name;
    EXPECT_EQ(snapshot(root / name), first) << name;
  }
}

TEST_F(CliTest, SweepHomogeneousLimitsMatch) {
  const auto dir = root / "sweep";
  ASSERT_EQ(cli({"sweep", "--dataset", "wine", "--arch", "GLS,random:0,Logistic,random:1", "--q", "0.1", "--b", "0.3",
                 "--epsilon", "0.05", "--seeds", "2", "--out", dir.string()}),
            0)
      << err.str();
  std::istringstream csv(slurp(dir / "sweep.csv"));
  std::string header, gls, r0, logi, r1;
  std::getline(csv, header);
  std::getline(csv, gls);
  std::getline(csv, r0);
  std::getline(csv, logi);
  std::getline(csv, r1);
  auto tail = [](const std::string& line) { return line.substr(line.find(',')); };
  EXPECT_EQ(tail(gls), tail(r0));
  EXPECT_EQ(tail(logi), tail(r1));
}

TEST_F(CliTest, LowsampleRejectsInfeasibleSize) {
  EXPECT_EQ(cli({"lowsample", "--dataset", gaussian.string(), "--max-per-class", "40", "--q", "0.1", "--b", "0.45",
                 "--epsilon", "0.05", "--out", (root / "o").string()}),
            2);
}

TEST_F(CliTest, LyapunovCsvRows) {
  const auto dir = root / "ly";
  ASSERT_EQ(cli({"lyapunov", "--map", "skew-tent", "--from", "0.5", "--to", "0.5", "--steps", "1", "--out",
                 dir.string()}),
            0)
      << err.str();
  std::istringstream csv(slurp(dir / "lyapunov.csv"));
  std::string header, row;
  std::getline(csv, header);
  std::getline(csv, row);
  EXPECT_EQ(header, "parameter,lambda");
  EXPECT_NEAR(std::stod(row.substr(row.find(',') + 1)), std::log(2.0), 0.01);
  EXPECT_EQ(cli({"lyapunov", "--map", "logistic", "--from", "3", "--to", "4.5", "--steps", "3", "--out",
                 dir.string()}),
            2);
}
