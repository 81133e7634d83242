#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code;
  std::string out;
};

CliResult run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + GEOPROG_CLI_PATH + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed");
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("geoprog_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST_F(Cli, Spectrum) {
  ASSERT_EQ(run("spectrum --max-trace 100 --out " + path("s.csv")).code, 0);
  EXPECT_EQ(count_lines(slurp(path("s.csv"))), 99u);  // header + 98 rows
  EXPECT_EQ(run("spectrum --max-trace 2").code, 2);
  const CliResult one = run("spectrum --max-trace 3");
  EXPECT_EQ(one.code, 0);
  EXPECT_EQ(one.out, "trace,length\n3,1.924847300238413789991036\n");
}

TEST_F(Cli, Order) {
  const CliResult a = run("order --gamma 2,1,1,1 --modulus 6");
  EXPECT_EQ(a.code, 0);
  EXPECT_NE(a.out.find('6'), std::string::npos);
  const CliResult t = run("order --gamma 2,1,1,1 --prime 2 --depth 5");
  EXPECT_EQ(t.code, 0);
  EXPECT_NE(t.out.find("3,3,3,6,12"), std::string::npos) << t.out;
  EXPECT_EQ(run("order --gamma 1,1,0,1 --modulus 5").code, 3);
  EXPECT_EQ(run("order --gamma 1,2,3,4 --modulus 5").code, 3);
  EXPECT_EQ(run("order --modulus 5").code, 2);
}

TEST_F(Cli, WitnessAndCheck) {
  ASSERT_EQ(run("ap --trace 3 --k 3 --out " + path("w.json")).code, 0);
  const CliResult ok = run("check " + path("w.json"));
  EXPECT_EQ(ok.code, 0);
  EXPECT_NE(ok.out.find("verified"), std::string::npos);

  auto doc = nlohmann::json::parse(slurp(path("w.json")));
  EXPECT_EQ(doc["v"], 1);
  EXPECT_EQ(doc["items"].size(), 3u);
  doc["items"][1]["trace"] = "123";
  std::ofstream(path("bad.json")) << doc.dump();
  const CliResult bad = run("check " + path("bad.json"));
  EXPECT_EQ(bad.code, 4);
  EXPECT_NE(bad.out.find("trace mismatch"), std::string::npos) << bad.out;
}

TEST_F(Cli, TraceSevenMultipliers) {
  const CliResult r = run("ap --trace 7 --k 3");
  ASSERT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  for (const auto& it : doc["items"]) {
    const long j = std::stol(it["exponent"].is_string() ? it["exponent"].get<std::string>()
                                                         : std::to_string(it["exponent"].get<long>()));
    EXPECT_EQ(j % 2, 0);
  }
}

TEST_F(Cli, StarvedBudgetExitsFive) {
  EXPECT_EQ(run("--budget 1 ap --gamma 2,1,1,1 --k 3").code, 5);
}

TEST_F(Cli, AlmostApOnModularLengths) {
  const CliResult r = run("almost-ap --source modular --max-trace 100000 --eps 0.1 --k 6");
  ASSERT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_TRUE(doc["found"].get<bool>());
  EXPECT_LT(std::stod(doc["deviation"].get<std::string>()), 0.1);
}

TEST_F(Cli, VdwAndSl3) {
  const CliResult v = run("vdw --colors 2 --k 3 --witness-out " + path("c.json"));
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find('9'), std::string::npos);
  const auto col = nlohmann::json::parse(slurp(path("c.json")));
  EXPECT_EQ(col["colors"].size(), 8u);

  const CliResult s = run("sl3 order --poly 1,-1,-2,1 --parabolic 1 --prime 2");
  EXPECT_EQ(s.code, 0);
  EXPECT_GT(std::stol(s.out), 0);
}

TEST_F(Cli, PrecisionEnvironment) {
  EXPECT_EQ(run("spectrum --max-trace 3", "GEOPROG_PRECISION=40").code, 2);
  const CliResult r = run("spectrum --max-trace 3", "GEOPROG_PRECISION=30");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("1.9248473002384137899910356537"), std::string::npos) << r.out;
}
