// Copyright 2026 The swipt-capacity Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "swipt/cli.hpp"
#include "swipt/io.hpp"
#include "swipt/verify.hpp"

namespace {

using namespace swipt;
namespace fs = std::filesystem;
using json = nlohmann::json;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    root = fs::temp_directory_path() / (std::string("swipt_cli_") + info->name());
    fs::remove_all(root);
    fs::create_directories(root);
    unsetenv("SWIPT_OUTPUT_DIR");
  }
  void TearDown() override {
    unsetenv("SWIPT_OUTPUT_DIR");
    fs::remove_all(root);
  }

  fs::path write_config(const std::string& name, const std::string& text) {
    const auto p = root / name;
    std::ofstream(p) << text;
    return p;
  }

  int run(std::vector<std::string> args) {
    std::vector<const char*> argv{"swipt"};
    for (const auto& a : args) argv.push_back(a.c_str());
    out.str("");
    err.str("");
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  }

  json result(const fs::path& dir, const std::string& name = "run") {
    return json::parse(read_text(dir / (name + ".result.json")));
  }

  fs::path root;
  std::ostringstream out, err;
};

TEST_F(Cli, SolveLowPeakBinary) {
  const auto cfg = write_config("c.json", R"({"mode": "solve", "constraints": {"peak": 2, "avg_power": 1},
                                             "solve": {"dx": 0.02}})");
  const auto dir = root / "out";
  ASSERT_EQ(run({"-c", cfg.string(), "--out", dir.string()}), kExitOk) << err.str();
  const auto doc = result(dir);
  EXPECT_EQ(doc["status"], "ok");
  EXPECT_EQ(doc["schema_version"], kSchemaVersion);
  const auto& pts = doc["result"]["distribution"]["points"];
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_NEAR(pts[0][0].get<double>(), 0.0, 1e-12);
  EXPECT_NEAR(pts[0][1].get<double>(), 0.75, 1e-3);
  EXPECT_NEAR(pts[1][0].get<double>(), 2.0, 1e-12);
  EXPECT_NEAR(pts[1][1].get<double>(), 0.25, 1e-3);
  EXPECT_TRUE(doc["result"]["kkt"]["verdict"].get<bool>());
}

TEST_F(Cli, VerifyUniformIsUncertified) {
  const auto cfg = write_config("c.json", R"({"mode": "verify", "constraints": {"peak": 2, "avg_power": 10},
      "distribution": {"peak": 2, "points": [[0, 0.2], [0.5, 0.2], [1, 0.2], [1.5, 0.2], [2, 0.2]]}})");
  const auto dir = root / "out";
  EXPECT_EQ(run({"-c", cfg.string(), "--out", dir.string()}), kExitUncertified);
  EXPECT_EQ(result(dir)["status"], "uncertified");
}

TEST_F(Cli, MalformedConfigWritesNothing) {
  const auto dir = root / "out";
  const auto bad_key = write_config("a.json", R"({"mode": "solve", "constraints": {"peek": 2}})");
  EXPECT_EQ(run({"-c", bad_key.string(), "--out", dir.string()}), kExitConfig);
  EXPECT_NE(err.str().find("peek"), std::string::npos);
  const auto bad_json = write_config("b.json", "{\"mode\": ");
  EXPECT_EQ(run({"-c", bad_json.string(), "--out", dir.string()}), kExitConfig);
  EXPECT_EQ(run({"-c", (root / "missing.json").string(), "--out", dir.string()}), kExitConfig);
  const auto ok = write_config("c.json", R"({"mode": "solve"})");
  EXPECT_EQ(run({"-c", ok.string(), "--out", dir.string(), "--set", "solve.dx=fast"}), kExitConfig);
  EXPECT_EQ(run({"--out", dir.string()}), kExitConfig);
  EXPECT_FALSE(fs::exists(dir));
}

TEST_F(Cli, HelpExitsCleanly) {
  EXPECT_EQ(run({"--help"}), kExitOk);
  EXPECT_NE(out.str().find("--config"), std::string::npos);
}

TEST_F(Cli, InfeasibleEnergy) {
  const auto cfg = write_config("c.json", R"({"mode": "solve", "constraints": {"e_req": 5}})");
  const auto dir = root / "out";
  EXPECT_EQ(run({"-c", cfg.string(), "--out", dir.string()}), kExitInfeasible);
  const auto doc = result(dir);
  EXPECT_EQ(doc["status"], "infeasible");
  EXPECT_EQ(doc["result"]["constraint"], "energy");
}

TEST_F(Cli, OutputDirectoryPrecedence) {
  const auto cfg = write_config("c.json", R"({"mode": "solve", "output": {"dir": ")" + (root / "cfg").string() + R"("}})");
  setenv("SWIPT_OUTPUT_DIR", (root / "env").string().c_str(), 1);
  ASSERT_EQ(run({"-c", cfg.string()}), kExitOk) << err.str();
  EXPECT_TRUE(fs::exists(root / "env" / "run.result.json"));
  EXPECT_FALSE(fs::exists(root / "cfg"));
  ASSERT_EQ(run({"-c", cfg.string(), "--out", (root / "flag").string()}), kExitOk);
  EXPECT_TRUE(fs::exists(root / "flag" / "run.result.json"));
}

TEST_F(Cli, RegionFilesAreReproducibleAndCertified) {
  const auto cfg = write_config("c.json", R"({"mode": "region", "constraints": {"peak": 3, "avg_power": 1},
      "hpa": {"bypass": false, "a_s": 2, "beta": 1}, "solve": {"dx": 0.1}, "sweep": {"n_points": 5},
      "output": {"name": "curve"}})");
  const auto a = root / "a", b = root / "b";
  ASSERT_EQ(run({"-c", cfg.string(), "--out", a.string()}), kExitOk) << err.str();
  ASSERT_EQ(run({"-c", cfg.string(), "--out", b.string()}), kExitOk);
  const auto csv = read_text(a / "curve.csv");
  EXPECT_EQ(csv, read_text(b / "curve.csv"));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 6);

  const RegionCurve curve = load_curve(a / "curve.curve.json");
  ASSERT_EQ(curve.points.size(), 5u);
  KktOptions k;
  k.check_step = 0.01;
  for (const auto& p : curve.points) {
    SolveResult r = as_result(p.distribution, curve.config.hpa, curve.config.eh);
    r.lambda1 = p.lambda1;
    r.lambda2 = p.lambda2;
    ConstraintSet c = curve.config.constraints;
    c.e_req = p.e_req;
    EXPECT_EQ(kkt_check(r, c, curve.config.hpa, curve.config.eh, k).verdict, p.kkt_ok) << p.e_req;
  }
}

TEST_F(Cli, SweepModesWriteOneFilePerCurve) {
  const auto onoff = write_config("o.json", R"({"mode": "onoff", "constraints": {"peak": 3},
      "solve": {"dx": 0.1}, "sweep": {"n_points": 3, "p2": [0.5, 1]}, "output": {"structured": false}})");
  ASSERT_EQ(run({"-c", onoff.string(), "--out", (root / "o").string()}), kExitOk) << err.str();
  EXPECT_TRUE(fs::exists(root / "o" / "run_p2_0.5.csv"));
  EXPECT_TRUE(fs::exists(root / "o" / "run_p2_1.csv"));
  EXPECT_FALSE(fs::exists(root / "o" / "run_p2_1.curve.json"));

  const auto ask = write_config("a.json", R"({"mode": "ask", "constraints": {"peak": 3},
      "solve": {"dx": 0.1}, "sweep": {"n_points": 3, "sizes": [2, 4]}, "output": {"tabular": false}})");
  ASSERT_EQ(run({"-c", ask.string(), "--out", (root / "a").string()}), kExitOk) << err.str();
  for (const char* f : {"run_unconstrained.curve.json", "run_n2.curve.json", "run_n4.curve.json"}) {
    EXPECT_TRUE(fs::exists(root / "a" / f)) << f;
  }
}

TEST_F(Cli, ExtendedAndMonteCarloModes) {
  const auto ext = write_config("e.json", R"({"mode": "extended", "solve": {"dx": 0.1},
      "constraints": {"states": [{"amplitude": 1, "prob": 0.5}, {"amplitude": 2, "prob": 0.5}]}})");
  ASSERT_EQ(run({"-c", ext.string(), "--out", (root / "e").string()}), kExitOk) << err.str();
  EXPECT_TRUE(result(root / "e")["result"]["kkt"]["verdict"].get<bool>());

  const auto mc = write_config("m.json", R"({"mode": "mc", "mc": {"n": 100000, "seed": 4},
      "distribution": {"peak": 2, "points": [[0, 0.75], [2, 0.25]]}})");
  ASSERT_EQ(run({"-c", mc.string(), "--out", (root / "m").string(), "--threads", "2"}), kExitOk) << err.str();
  const auto doc = result(root / "m");
  EXPECT_TRUE(doc["result"]["consistent"].get<bool>());
  EXPECT_EQ(doc["config"]["threads"], 2);
}

}  // namespace
