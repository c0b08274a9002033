// Copyright 2026 The stabscope Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "json.hpp"
#include "stabscope/cnn/checkpoint.hpp"
#include "stabscope/commands.hpp"
#include "stabscope/csv.hpp"
#include "stabscope/dataset.hpp"
#include "stabscope/errors.hpp"
#include "stabscope/witness.hpp"

namespace stabscope {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("stabscope_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int run(const std::vector<std::string>& args) {
    out_.str("");
    err_.str("");
    return run_cli(args, out_, err_);
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

TEST_F(CliTest, GenDataDefaultsAndSizeFormula) {
  ASSERT_EQ(run({"gen-data", "--out", path("d.bin")}), 0) << err_.str();
  const auto c = read_container(path("d.bin"));
  EXPECT_EQ(c.entries.size(), 100u * 500 * 8);
  EXPECT_TRUE(fs::exists(path("d.bin.run.json")));

  ASSERT_EQ(run({"gen-data", "--basis", "pauli", "--n", "3", "--states", "10", "--snapshots", "5", "--layers", "2",
                 "--out", path("p.bin")}),
            0);
  const std::string bytes = read_file(path("p.bin"));
  EXPECT_EQ(bytes.size(), bytes.find('\n') + 1 + 8 + 10 * 5 * 2 * 3);
}

TEST_F(CliTest, GenDataIsReproducible) {
  const std::vector<std::string> base{"gen-data", "--basis", "z", "--n", "4", "--states", "6", "--snapshots",
                                      "30",       "--depth", "2", "--seed", "9"};
  auto a = base, b = base;
  a.insert(a.end(), {"--out", path("a.bin")});
  b.insert(b.end(), {"--out", path("b.bin"), "--threads", "2"});
  ASSERT_EQ(run(a), 0);
  ASSERT_EQ(run(b), 0);
  EXPECT_EQ(read_file(path("a.bin")), read_file(path("b.bin")));
}

TEST_F(CliTest, RunManifestRecordsCommand) {
  ASSERT_EQ(run({"gen-data", "--n", "2", "--states", "4", "--snapshots", "3", "--seed", "5", "--out", path("m.bin")}),
            0);
  const auto m = nlohmann::json::parse(read_file(path("m.bin.run.json")));
  EXPECT_EQ(m.at("command"), "gen-data");
  EXPECT_EQ(m.at("seed"), 5);
  EXPECT_EQ(m.at("config").at("n_qubits"), 2);
  EXPECT_TRUE(m.contains("started_at"));
  EXPECT_TRUE(m.contains("code_version"));
  EXPECT_EQ(m.at("argv").size(), 11u);
}

TEST_F(CliTest, TinyTrainWritesCheckpointAndMetricsDeterministically) {
  ASSERT_EQ(run({"gen-data", "--n", "4", "--states", "200", "--snapshots", "50", "--seed", "1", "--out",
                 path("t.bin")}),
            0);
  for (const char* name : {"m1.ckpt", "m2.ckpt"}) {
    ASSERT_EQ(run({"train", "--data", path("t.bin"), "--epochs", "2", "--seed", "3", "--out-model", path(name)}), 0)
        << err_.str();
  }
  EXPECT_EQ(read_file(path("m1.ckpt")), read_file(path("m2.ckpt")));
  EXPECT_EQ(read_file(path("m1.ckpt.metrics.csv")), read_file(path("m2.ckpt.metrics.csv")));
  const CsvTable t = read_csv(path("m1.ckpt.metrics.csv"));
  EXPECT_EQ(t.header, (std::vector<std::string>{"epoch", "train_loss", "train_acc", "val_loss", "val_acc"}));
  EXPECT_EQ(t.rows.size(), 2u);
  EXPECT_NO_THROW(cnn::load_checkpoint(path("m1.ckpt")));
}

TEST_F(CliTest, SweepDepthRowsAndVariantMismatch) {
  ASSERT_EQ(run({"gen-data", "--n", "3", "--states", "20", "--snapshots", "10", "--out", path("z.bin")}), 0);
  ASSERT_EQ(run({"train", "--data", path("z.bin"), "--epochs", "1", "--out-model", path("z.ckpt")}), 0);
  ASSERT_EQ(run({"sweep-depth", "--model", path("z.ckpt"), "--states", "8", "--depths", "0..2", "--out",
                 path("s.csv")}),
            0)
      << err_.str();
  const CsvTable s = read_csv(path("s.csv"));
  EXPECT_EQ(s.header, (std::vector<std::string>{"depth", "label", "mean_prediction", "std_of_prediction"}));
  EXPECT_EQ(s.rows.size(), 3u * 2);
  const CsvTable inset = read_csv(path("s.csv.inset.csv"));
  std::size_t total = 0;
  for (const auto& r : inset.rows) {
    if (r[0] == "0") total += std::stoul(r[5]);
  }
  EXPECT_EQ(total, 8u);

  ASSERT_EQ(run({"sweep-depth", "--model", path("z.ckpt"), "--states", "8", "--depths", "0", "--out",
                 path("s0.csv")}),
            0);
  EXPECT_EQ(read_csv(path("s0.csv")).rows.size(), 2u);

  ASSERT_EQ(run({"gen-data", "--basis", "pauli", "--n", "3", "--states", "6", "--snapshots", "4", "--out",
                 path("p.bin")}),
            0);
  EXPECT_EQ(run({"train", "--data", path("p.bin"), "--variant", "method1", "--out-model", path("bad.ckpt")}), 2);
  EXPECT_EQ(run({"sweep-depth", "--model", path("z.ckpt"), "--n", "5", "--out", path("bad.csv")}), 2);
}

TEST_F(CliTest, VerifyEq2ReportsAnalyticAndExactRows) {
  ASSERT_EQ(run({"verify-eq2", "--n", "2", "--states", "3", "--cliffords", "200", "--seed", "4", "--out",
                 path("e.csv")}),
            0);
  const CsvTable t = read_csv(path("e.csv"));
  EXPECT_EQ(t.header,
            (std::vector<std::string>{"state_id", "m_lin", "mc_mean", "mc_se", "analytic_rhs", "n_cliffords"}));
  ASSERT_EQ(t.rows.size(), 6u);
  for (const auto& r : t.rows) {
    const bool exact = r[0].rfind("exact1q:", 0) == 0;
    const double d = exact ? 2.0 : 4.0;
    EXPECT_EQ(std::stod(r[4]), eq2_rhs(std::stod(r[1]), d));
    if (exact) {
      EXPECT_EQ(r[3], "0");
      EXPECT_NEAR(std::stod(r[2]), std::stod(r[4]), 1e-12);
    }
  }
  const auto pj = nlohmann::json::parse(read_file(path("e.csv.projector.json")));
  EXPECT_NEAR(pj.at("trace_symm").get<double>(), 5.0, 1e-10);
  EXPECT_NEAR(pj.at("trace_sigma_q_symm").at("Z").get<double>(), 2.0, 1e-10);
}

TEST_F(CliTest, SreOnStateSpecs) {
  ASSERT_EQ(run({"sre", "--state", "T"}), 0);
  auto r = nlohmann::json::parse(out_.str());
  EXPECT_NEAR(r.at("m2").get<double>(), std::log(4.0 / 3.0), 1e-12);
  ASSERT_EQ(run({"sre", "--state", "0,+,-i"}), 0);
  r = nlohmann::json::parse(out_.str());
  EXPECT_NEAR(r.at("m2").get<double>(), 0.0, 1e-12);
  write_file(path("state.txt"), "T,T\n");
  ASSERT_EQ(run({"sre", "--state-file", path("state.txt")}), 0);
  r = nlohmann::json::parse(out_.str());
  EXPECT_NEAR(r.at("m2_density").get<double>(), std::log(4.0 / 3.0), 1e-12);
  EXPECT_EQ(run({"sre", "--random-product", "3", "--seed", "2"}), 0);
}

TEST_F(CliTest, NaiveClassifyPhaseStateExample) {
  const std::string spec = "T,T,T,T";
  ASSERT_EQ(run({"naive-classify", "--state", spec, "--rounds", "1", "--seed", "1"}), 0);
  EXPECT_EQ(nlohmann::json::parse(out_.str()).at("verdict"), "stabilizer");
  ASSERT_EQ(run({"naive-classify", "--state", spec, "--rounds", "5", "--seed", "1"}), 0);
  EXPECT_EQ(nlohmann::json::parse(out_.str()).at("verdict"), "magic");

  ASSERT_EQ(run({"gen-data", "--n", "3", "--states", "6", "--snapshots", "200", "--out", path("w.bin")}), 0);
  ASSERT_EQ(run({"naive-classify", "--data", path("w.bin")}), 0);
  EXPECT_EQ(nlohmann::json::parse(out_.str()).at("verdicts").size(), 6u);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(run({}), 2);
  EXPECT_EQ(run({"gen-data"}), 2);                                   // missing --out
  EXPECT_EQ(run({"gen-data", "--basis", "x", "--out", path("x")}), 2);  // invalid choice
  EXPECT_EQ(run({"sre", "--state", "Q"}), 2);
  EXPECT_EQ(run({"train", "--data", path("missing.bin"), "--out-model", path("m")}), 3);
  write_file(path("junk.bin"), "not a container");
  EXPECT_EQ(run({"naive-classify", "--data", path("junk.bin")}), 3);
  EXPECT_EQ(run({"--help"}), 0);
  EXPECT_NE(out_.str().find("gen-data"), std::string::npos);
}

TEST(StateSpec, Tokens) {
  const ProductState s = parse_state_spec("0,1,+,-,+i,-i,T,haar:7");
  ASSERT_EQ(s.num_qubits(), 8u);
  EXPECT_NEAR(s.qubit(1).expect_z(), -1.0, 1e-15);
  EXPECT_NEAR(s.qubit(3).expect_x(), -1.0, 1e-15);
  EXPECT_NEAR(s.qubit(4).expect_y(), 1.0, 1e-15);
  EXPECT_NEAR(s.qubit(6).expect_x(), std::sqrt(0.5), 1e-15);
  EXPECT_EQ(parse_state_spec("haar:7").qubit(0).a, s.qubit(7).a);
  EXPECT_THROW(parse_state_spec(""), DimensionError);
  EXPECT_THROW(parse_state_spec("0,,1"), DimensionError);
  EXPECT_THROW(parse_state_spec("haar:x"), DimensionError);
}

TEST(IndexList, RangesAndLists) {
  EXPECT_EQ(parse_index_list("0..3"), (std::vector<std::size_t>{0, 1, 2, 3}));
  EXPECT_EQ(parse_index_list("0..1,8"), (std::vector<std::size_t>{0, 1, 8}));
  EXPECT_EQ(parse_index_list("5"), (std::vector<std::size_t>{5}));
  EXPECT_THROW(parse_index_list("3..1"), DimensionError);
  EXPECT_THROW(parse_index_list("-1"), DimensionError);
}

}  // namespace
}  // namespace stabscope
