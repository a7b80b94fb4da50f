// End-to-end checks of the covert-relay-lab binary: exit codes, output
// determinism across worker counts, and the analytic-vs-simulated columns
// of the emitted CSV files.

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;

const char* kCli = CRL_CLI_PATH;

struct RunResult {
  int exit_code;
  std::string out;
  std::string err;
};

RunResult run(const std::string& args, const fs::path& dir) {
  const fs::path out_file = dir / "stdout.txt";
  const fs::path err_file = dir / "stderr.txt";
  const std::string cmd = std::string(kCli) + " " + args + " > " + out_file.string() +
                          " 2> " + err_file.string();
  const int rc = std::system(cmd.c_str());
  auto slurp = [](const fs::path& p) {
    std::ifstream f(p);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
  };
  return {WEXITSTATUS(rc), slurp(out_file), slurp(err_file)};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("crl_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write_config(const std::string& name, int n, long long trials,
                        const std::string& extra_sim = "") {
    const fs::path p = dir_ / name;
    std::ofstream f(p);
    f << R"({"params": {"n": )" << n
      << R"(, "p_t_w": 5.0, "p_j_w": 1.0, "p_max_w": 10.0, "alpha": 0.3,
            "theta": 1.0, "epsilon_c": 0.65,
            "sigma_w2_db": -5.0, "sigma_c2_db": -5.0, "sigma_b2_db": -5.0},
           "sim": {"trials": )"
      << trials << R"(, "seed": 11)" << extra_sim << "}}";
    return p;
  }

  fs::path dir_;
};

TEST_F(CliTest, MetricsReportsSingleRelayOutage) {
  const auto cfg = write_config("c.json", 1, 1000);
  const auto r = run("metrics --config " + cfg.string(), dir_);
  ASSERT_EQ(r.exit_code, 0) << r.err;
  // outage_rrs at n=1, -5 dB noise, P_T = 5.
  std::istringstream in(r.out);
  std::string line;
  double value = -1.0;
  while (std::getline(in, line)) {
    if (line.rfind("outage_rrs ", 0) == 0 || line.rfind("outage_rrs\t", 0) == 0 ||
        line.rfind("outage_rrs", 0) == 0) {
      std::istringstream ls(line);
      std::string key;
      ls >> key >> value;
      if (key == "outage_rrs") break;
      value = -1.0;
    }
  }
  ASSERT_GE(value, 0.0) << r.out;
  EXPECT_NEAR(value, 0.11877, 1e-4);
}

TEST_F(CliTest, ZeroTrialsFailsValidationNamingField) {
  const auto cfg = write_config("bad.json", 5, 0);
  const auto r = run("simulate --config " + cfg.string(), dir_);
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.err.find("sim.trials"), std::string::npos) << r.err;
}

TEST_F(CliTest, MissingConfigFails) {
  const auto r = run("simulate --config /no/such/file.json", dir_);
  EXPECT_EQ(r.exit_code, 1);
}

TEST_F(CliTest, UnknownFigureFails) {
  const auto cfg = write_config("c.json", 5, 100);
  const auto r = run("reproduce fig9 --config " + cfg.string(), dir_);
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.err.find("fig9"), std::string::npos);
}

TEST_F(CliTest, SimulateByteIdenticalAcrossWorkers) {
  const auto cfg = write_config("c.json", 8, 20000);
  const fs::path o1 = dir_ / "w1.csv";
  const fs::path o3 = dir_ / "w3.csv";
  ASSERT_EQ(run("simulate --config " + cfg.string() + " --no-timestamp --workers 1 --out " +
                    o1.string(),
                dir_)
                .exit_code,
            0);
  ASSERT_EQ(run("simulate --config " + cfg.string() + " --no-timestamp --workers 3 --out " +
                    o3.string(),
                dir_)
                .exit_code,
            0);
  std::ifstream f1(o1, std::ios::binary), f3(o3, std::ios::binary);
  std::ostringstream s1, s3;
  s1 << f1.rdbuf();
  s3 << f3.rdbuf();
  ASSERT_FALSE(s1.str().empty());
  EXPECT_EQ(s1.str(), s3.str());
}

TEST_F(CliTest, OptimizeEmitsTraceAndSummary) {
  const auto cfg = write_config("c.json", 5, 10000);
  const fs::path trace = dir_ / "trace.csv";
  const auto r =
      run("optimize --config " + cfg.string() + " --no-timestamp --out " + trace.string(), dir_);
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_NE(r.out.find("binding_constraint"), std::string::npos);
  std::ifstream f(trace);
  std::string header;
  std::getline(f, header);
  EXPECT_EQ(header, "phase,p_t,zeta_star,covert_rate,feasible");
  int rows = 0;
  std::string line;
  while (std::getline(f, line)) ++rows;
  EXPECT_GE(rows, 8);
}

TEST_F(CliTest, ReproduceFig2ColumnsAgree) {
  const auto cfg = write_config("c.json", 5, 20000);
  const fs::path outdir = dir_ / "repro";
  const auto r = run("reproduce fig2 --config " + cfg.string() + " --no-timestamp --out " +
                         outdir.string() + " --trials 20000",
                     dir_);
  ASSERT_EQ(r.exit_code, 0) << r.err;
  std::ifstream f(outdir / "fig2_rrs.csv");
  ASSERT_TRUE(f.good());
  std::string line;
  int checked = 0;
  while (std::getline(f, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("n,", 0) == 0) continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    ASSERT_GE(cells.size(), 6u);
    const double analytic = std::stod(cells[3]);
    const double mc = std::stod(cells[4]);
    const double hw = std::stod(cells[5]);
    // 3 standard errors = 3/1.96 half-widths.
    EXPECT_NEAR(analytic, mc, 3.0 * hw / 1.96 + 1e-9) << line;
    ++checked;
  }
  EXPECT_GE(checked, 30);
}

TEST_F(CliTest, ReproduceFig2DeterministicAcrossWorkers) {
  const auto cfg = write_config("c.json", 5, 5000);
  const fs::path d1 = dir_ / "r1";
  const fs::path d3 = dir_ / "r3";
  ASSERT_EQ(run("reproduce fig2 --config " + cfg.string() + " --no-timestamp --workers 1 --out " +
                    d1.string(),
                dir_)
                .exit_code,
            0);
  ASSERT_EQ(run("reproduce fig2 --config " + cfg.string() + " --no-timestamp --workers 4 --out " +
                    d3.string(),
                dir_)
                .exit_code,
            0);
  for (const char* name : {"fig2_rrs.csv", "fig2_mmrs.csv"}) {
    std::ifstream f1(d1 / name, std::ios::binary), f3(d3 / name, std::ios::binary);
    std::ostringstream s1, s3;
    s1 << f1.rdbuf();
    s3 << f3.rdbuf();
    ASSERT_FALSE(s1.str().empty());
    EXPECT_EQ(s1.str(), s3.str()) << name;
  }
}

}  // namespace
