#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "json.hpp"

#include "perron/cli.hpp"

using namespace perron;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "perron");
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) {
  return std::string(PERRON_FIXTURE_DIR) + "/" + name + ".json";
}

std::filesystem::path scratch(const std::string& name, const std::string& content) {
  const auto dir = std::filesystem::temp_directory_path() / "perron_cli_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path) << content;
  return path;
}

std::string printed_lambda(const std::string& text) {
  std::smatch m;
  EXPECT_TRUE(std::regex_search(text, m, std::regex("dominant eigenvalue: (\\S+)")));
  return m.size() > 1 ? m[1].str() : "";
}

// Clears the eps override for the duration of a test.
class CliTest : public ::testing::Test {
 protected:
  void SetUp() override { unsetenv(kEpsEnvVar); }
  void TearDown() override { unsetenv(kEpsEnvVar); }
};

}  // namespace

TEST_F(CliTest, EigFirstFixture) {
  const auto r = run({"eig", fixture("example1")});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(printed_lambda(r.out).substr(0, 7), "36.2757");
  EXPECT_NE(r.out.find("iterations: 8"), std::string::npos);
  EXPECT_NE(r.out.find("No.Iter"), std::string::npos);
}

TEST_F(CliTest, EigTraceHasOneRowPerIteration) {
  const auto r = run({"eig", fixture("example1"), "--trace"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("residual"), std::string::npos);
  EXPECT_NE(r.out.find("0.5666"), std::string::npos);
}

TEST_F(CliTest, JsonAndTextAgreeOnLambda) {
  for (const char* name : {"example1", "example2", "example3"}) {
    const auto text = run({"eig", fixture(name)});
    const auto json = run({"eig", fixture(name), "--json"});
    ASSERT_EQ(json.code, kExitOk);
    const auto doc = nlohmann::json::parse(json.out);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10f", doc["lambda"].get<double>());
    EXPECT_EQ(printed_lambda(text.out), buf) << name;
    for (const char* key : {"eigenvector", "iterations", "converged", "trace"}) {
      EXPECT_TRUE(doc.contains(key)) << key;
    }
  }
}

TEST_F(CliTest, CheckReportsReducibleWitness) {
  const auto r = run({"check", fixture("example3")});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("irreducible: no"), std::string::npos);
  EXPECT_NE(r.out.find("reducible, witness I = {"), std::string::npos) << r.out;
  const auto r2 = run({"check", fixture("example2")});
  EXPECT_NE(r2.out.find("irreducible: yes"), std::string::npos);
  EXPECT_NE(r2.out.find("essentially nonnegative: yes"), std::string::npos);
}

TEST_F(CliTest, PropsAllPass) {
  const auto r = run({"props", "all", "--seed", "7", "--samples", "25"});
  EXPECT_EQ(r.code, kExitOk) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
  const auto j = run({"props", "minimax", "--samples", "3", "--json"});
  EXPECT_EQ(j.code, kExitOk);
  const auto doc = nlohmann::json::parse(j.out);
  ASSERT_TRUE(doc.is_array());
  EXPECT_EQ(doc[0]["name"], "minimax");
  EXPECT_EQ(doc[0]["pass"], true);
}

TEST_F(CliTest, PropsFixedShape) {
  const auto r = run({"props", "monotone", "--samples", "4", "--order", "2", "--dim", "5"});
  EXPECT_EQ(r.code, kExitOk) << r.out << r.err;
}

TEST_F(CliTest, FailingPropertyExitsOne) {
  PropertyReport bad;
  bad.name = "minimax";
  bad.samples = 1;
  bad.max_violation = 1.0;
  bad.tolerance = 1e-8;
  bad.pass = false;
  bad.witnesses.push_back("{}");
  std::ostringstream out;
  EXPECT_EQ(report_suite({bad}, false, out), kExitFailure);
  EXPECT_NE(out.str().find("FAIL"), std::string::npos);
  EXPECT_NE(out.str().find("witness"), std::string::npos);
  PropertyReport good = bad;
  good.pass = true;
  std::ostringstream out2;
  EXPECT_EQ(report_suite({good}, true, out2), kExitOk);
}

TEST_F(CliTest, MalformedFileExitsTwo) {
  const auto path = scratch("bad.json", "{\"order\": 3,");
  const auto r = run({"eig", path.string()});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("line"), std::string::npos);
  EXPECT_EQ(run({"eig", "/nonexistent/file.json"}).code, kExitUsage);
}

TEST_F(CliTest, UsageErrorsExitTwo) {
  const auto unknown = run({"eig", fixture("example1"), "--bogus"});
  EXPECT_EQ(unknown.code, kExitUsage);
  EXPECT_NE(unknown.err.find("Usage"), std::string::npos);
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"props", "nonsense"}).code, kExitUsage);
  EXPECT_EQ(run({"eig", fixture("example1"), "--eps", "-1"}).code, kExitUsage);
  EXPECT_EQ(run({"eig", fixture("example1"), "--max-iter", "abc"}).code, kExitUsage);
}

TEST_F(CliTest, NonConvergenceExitsOne) {
  const auto r = run({"eig", fixture("example1"), "--max-iter", "1"});
  EXPECT_EQ(r.code, kExitFailure);
  EXPECT_NE(r.out.find("converged: no"), std::string::npos);
  EXPECT_NE(r.err.find("no convergence"), std::string::npos);
}

TEST_F(CliTest, SignViolationExitsTwo) {
  const auto path = scratch(
      "neg.json", R"({"order":3,"dim":2,"layout":"coo","entries":[[[1,2,1],-0.5]]})");
  const auto r = run({"eig", path.string()});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("(1,2,1)"), std::string::npos) << r.err;
}

TEST_F(CliTest, StartingVector) {
  const auto x0 = scratch("x0.json", "[0.2, 1.0, 3.0]");
  const auto r = run({"eig", fixture("example1"), "--x0", x0.string()});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(printed_lambda(r.out).substr(0, 7), "36.2757");
  const auto wrong = scratch("x0bad.json", "[1.0, 1.0]");
  EXPECT_EQ(run({"eig", fixture("example1"), "--x0", wrong.string()}).code, kExitUsage);
}

TEST_F(CliTest, EpsEnvironmentHasLowestPrecedence) {
  // A loose eps from the environment stops the iteration early.
  setenv(kEpsEnvVar, "1e-2", 1);
  const auto loose = run({"eig", fixture("example1")});
  EXPECT_EQ(loose.code, kExitOk);
  EXPECT_NE(loose.out.find("iterations: 3"), std::string::npos) << loose.out;
  // --eps overrides it.
  const auto strict = run({"eig", fixture("example1"), "--eps", "1e-9"});
  EXPECT_NE(strict.out.find("iterations: 8"), std::string::npos) << strict.out;
  setenv(kEpsEnvVar, "garbage", 1);
  EXPECT_EQ(run({"eig", fixture("example1")}).code, kExitUsage);
}

TEST_F(CliTest, ExamplesWritesFixtures) {
  const auto dir = std::filesystem::temp_directory_path() / "perron_cli_examples";
  std::filesystem::remove_all(dir);
  const auto r = run({"examples", "--dir", dir.string(), "--layout", "dense"});
  EXPECT_EQ(r.code, kExitOk);
  for (const char* name : {"example1", "example2", "example3"}) {
    const auto path = dir / (std::string(name) + ".json");
    ASSERT_TRUE(std::filesystem::exists(path));
    const auto again = run({"eig", path.string()});
    const auto shipped = run({"eig", fixture(name)});
    EXPECT_EQ(printed_lambda(again.out), printed_lambda(shipped.out));
  }
}
