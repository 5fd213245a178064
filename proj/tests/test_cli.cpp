#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "chendelta/report_io.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = CHENDELTA_CLI;
const std::string kData = CHENDELTA_DATA_DIR;

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "chendelta_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

// Runs the CLI with stdout sent to `out` and stderr to `out`.err.
int run(const std::string& args, const fs::path& out) {
  const std::string cmd =
      kCli + " " + args + " > " + out.string() + " 2> " + out.string() + ".err";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

chendelta::ojson json_of(const fs::path& p) { return chendelta::ojson::parse(slurp(p)); }

}  // namespace

TEST(Cli, VerifyExotic) {
  const fs::path out = scratch("exotic.json");
  ASSERT_EQ(run("verify exotic-s3 --samples 100", out), 0) << slurp(out.string() + ".err");
  const auto j = json_of(out);
  EXPECT_TRUE(j["passed"].get<bool>());
  for (const auto& c : j["claims"])
    if (c["claim"] == "tau = 1/3 (intrinsic)") EXPECT_LE(c["worst"].get<double>(), 1e-8);
}

TEST(Cli, VerifyGraph) {
  const fs::path out = scratch("graph.json");
  ASSERT_EQ(run("verify graph-8.2 --samples 1", out), 0) << slurp(out.string() + ".err");
  EXPECT_TRUE(json_of(out)["passed"].get<bool>());
}

TEST(Cli, VerifyCsvExport) {
  const fs::path out = scratch("graph.csv");
  ASSERT_EQ(run("verify graph-8.2 --samples 2 --format csv", out), 0);
  const std::string text = slurp(out);
  EXPECT_EQ(text.rfind("example,sample,chart_point,ambient_point,tau,h2,slack\n", 0), 0u) << text;
}

TEST(Cli, VerifyUnknownExample) {
  EXPECT_EQ(run("verify no-such-example", scratch("unknown.json")), 2);
}

TEST(Cli, DeltaConstantCurvature) {
  const fs::path out = scratch("zero.json");
  ASSERT_EQ(run("delta --input " + kData + "/zero_n4_c1.json --tuple 2,2", out), 0)
      << slurp(out.string() + ".err");
  EXPECT_NEAR(json_of(out)["delta"].get<double>(), 4.0, 1e-10);
}

TEST(Cli, DeltaExotic) {
  const fs::path out = scratch("exotic_delta.json");
  ASSERT_EQ(run("delta --input " + kData + "/exotic_s3.json --tuple 2 --variant first", out), 0);
  const auto j = json_of(out);
  EXPECT_NEAR(j["delta"].get<double>(), 2.0, 1e-8);
  ASSERT_EQ(j["reports"].size(), 1u);
  EXPECT_TRUE(j["reports"][0]["equality"].get<bool>());
}

TEST(Cli, DeltaCsv) {
  const fs::path out = scratch("exotic_delta.csv");
  ASSERT_EQ(run("delta --input " + kData + "/exotic_s3.json --tuple 2 --format csv", out), 0);
  EXPECT_EQ(slurp(out).rfind(chendelta::csv_header() + "\n", 0), 0u);
}

TEST(Cli, DeltaInputErrors) {
  EXPECT_EQ(run("delta --input " + kData + "/zero_n4_c1.json --tuple 5", scratch("bad1")), 2);
  const fs::path bad = scratch("malformed.json");
  std::ofstream(bad) << "{\n  \"n\": 3,\n  \"c\": \n}\n";
  const fs::path out = scratch("bad2");
  EXPECT_EQ(run("delta --input " + bad.string() + " --tuple 2", out), 2);
  EXPECT_NE(slurp(out.string() + ".err").find("line 4"), std::string::npos);
  EXPECT_EQ(run("delta --input /nonexistent.json --tuple 2", scratch("bad3")), 2);
  EXPECT_EQ(run("delta --tuple 2", scratch("bad4")), 2);
}

TEST(Cli, AuditErrors) {
  EXPECT_EQ(run("audit --count 0", scratch("a1")), 2);
  EXPECT_EQ(run("audit --n 2..4 --count 1", scratch("a2")), 2);
  EXPECT_EQ(run("audit --n x --count 1", scratch("a3")), 2);
}

TEST(Cli, AuditDeterministicOutput) {
  const fs::path a = scratch("audit_a.json"), b = scratch("audit_b.json");
  ASSERT_EQ(run("audit --n 3..4 --count 5 --seed 9", a), 0);
  ASSERT_EQ(run("audit --n 3..4 --count 5 --seed 9", b), 0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_TRUE(json_of(a)["sound"].get<bool>());
}

TEST(Cli, OutFileOption) {
  const fs::path file = scratch("outfile.json");
  fs::remove(file);
  ASSERT_EQ(run("verify exotic-s3 --samples 2 --out " + file.string(), scratch("stdout")), 0);
  EXPECT_TRUE(json_of(file)["passed"].get<bool>());
}
