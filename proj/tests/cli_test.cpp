#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

#include "smg/io.hpp"

namespace smg {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " SMGADGET_BINARY " " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("smg_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

TEST_F(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("report fsym9").code, 2);
  EXPECT_EQ(run("dictator-sim fsym4 --trials 0 --seed 1").code, 2);
  EXPECT_EQ(run("verify f4 --file " + path("missing.json")).code, 2);
}

TEST_F(Cli, ReportJson) {
  const CliRun r = run("report fsym3 --format json");
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j.at("lp").at("objective").at("exact"), "5/8");
  EXPECT_EQ(j.at("ratio_upper").at("exact"), "5/6");
  EXPECT_TRUE(j.at("passed").get<bool>());
}

TEST_F(Cli, FixtureVerifyPasses) {
  for (const char* id : {"fsym4", "fsym5", "f3", "f4"}) EXPECT_EQ(run(std::string("verify ") + id).code, 0) << id;
}

TEST_F(Cli, CorruptedFileFails) {
  SetFunction f = expand_fixture("f4");
  f.set(0b111, f(0b111) + Rational(1, 448));
  save_set_function(path("bad.json"), f);
  const CliRun r = run("verify f4 --file " + path("bad.json"));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("FAIL"), std::string::npos);
  save_set_function(path("good.csv"), expand_fixture("f4"));
  EXPECT_EQ(run("verify f4 --file " + path("good.csv")).code, 0);
}

TEST_F(Cli, EmptyConfigChangesNothing) {
  std::ofstream(path("empty.toml")).close();
  const CliRun plain = run("report fsym4");
  const CliRun with_config = run("--config " + path("empty.toml") + " report fsym4");
  ASSERT_EQ(plain.code, 0);
  EXPECT_EQ(plain.out, with_config.out);
}

TEST_F(Cli, SeedReproducesSimulation) {
  const std::string args = "dictator-sim f3 -n 5 --trials 500 --seed 11 --format json";
  const CliRun a = run(args);
  const CliRun b = run(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const Json j = Json::parse(a.out);
  EXPECT_EQ(j.at("seed"), 11);
  EXPECT_NE(run("dictator-sim f3 -n 5 --trials 500 --seed 12 --format json").out, a.out);
}

TEST_F(Cli, OutputDirectoryFromEnvironment) {
  const CliRun r = run("export function fsym4 -o fsym4_copy.json", "SMGADGET_OUTPUT_DIR=" + dir_.string());
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(load_set_function(path("fsym4_copy.json")), expand_fixture("fsym4"));
}

TEST_F(Cli, TablesListEveryGadget) {
  const CliRun r = run("tables");
  ASSERT_EQ(r.code, 0);
  for (const char* id : {"fsym3", "fsym4", "fsym5", "f3", "f4"}) EXPECT_NE(r.out.find(id), std::string::npos) << id;
}

}  // namespace
}  // namespace smg
