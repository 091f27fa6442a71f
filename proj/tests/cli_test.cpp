#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "commands.hpp"
#include "support/fixtures.hpp"
#include "xnr/model_io.hpp"
#include "xnr/testgen.hpp"

namespace xnr {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = std::filesystem::temp_directory_path() / "xnr_cli_test";
    std::filesystem::create_directories(dir_);
    save_model(fixtures::and_perceptron(), dir_ / "p.json");
    save_model(fixtures::diff_perceptron(), dir_ / "diff.json");
    save_model(fixtures::constant_bdd(2, ClassLabel::Zero), dir_ / "zero.json");
    std::ofstream(dir_ / "bad.json") << R"({"type":"perceptron","n":2})";
    std::ofstream(dir_ / "unsat.cnf") << "p cnf 1 2\n1 0\n-1 0\n";
  }
  static void TearDownTestSuite() { std::filesystem::remove_all(dir_); }

  static std::string path(const char* name) { return (dir_ / name).string(); }

  static inline std::filesystem::path dir_;
};

TEST_F(Cli, CheckNecessary) {
  auto r = run({"check-necessary", "--model", path("p.json"), "--class", "1", "--condition", "v1=1"});
  EXPECT_EQ(r.code, cli::kYes);
  EXPECT_EQ(r.out, "yes\n");
  r = run({"check-necessary", "--model", path("p.json"), "--class", "1", "--condition", "v1=0"});
  EXPECT_EQ(r.code, cli::kNo);
  EXPECT_EQ(r.out, "no\n");
  r = run({"check-necessary", "--model", path("p.json"), "--class", "1", "--condition", "v0=1"});
  EXPECT_EQ(r.code, cli::kUsage);
  EXPECT_NE(r.err.find("position"), std::string::npos);
}

TEST_F(Cli, CheckMinimalEitherPreorder) {
  for (const char* order : {"card", "subset"}) {
    EXPECT_EQ(run({"check-minimal", "-m", path("p.json"), "-c", "1", "--condition", "v1=1 & v2=1", "--preorder",
                   order}).code,
              cli::kYes);
    EXPECT_EQ(run({"check-minimal", "-m", path("p.json"), "-c", "1", "--condition", "v1=1", "--preorder", order})
                  .code,
              cli::kNo);
  }
  EXPECT_EQ(run({"check-minimal", "-m", path("p.json"), "-c", "1", "--condition", "v1=1", "--preorder", "lex"}).code,
            cli::kUsage);
}

TEST_F(Cli, FindMinimal) {
  auto r = run({"find-minimal", "-m", path("p.json"), "-c", "1", "--verify"});
  EXPECT_EQ(r.code, cli::kYes);
  // Canonical scan order reaches v1=v2 before v1=1; same models as v1=1 & v2=1.
  EXPECT_EQ(r.out, "v1=v2 & v1!=0\noracle: agrees\n");
  EXPECT_EQ(run({"find-minimal", "-m", path("diff.json"), "-c", "1"}).out, "true\n");
  EXPECT_EQ(run({"find-minimal", "-m", path("zero.json"), "-c", "1"}).out, "v1!=v1\n");
  r = run({"find-minimal", "-m", path("p.json"), "-c", "1", "--trace"});
  EXPECT_NE(r.out.find("added v1=v2\nadded v1!=0\n"), std::string::npos);
}

TEST_F(Cli, JsonReportIsDeterministic) {
  const std::vector<std::string> args{"find-minimal", "-m", path("p.json"), "-c", "1", "--json", "--verify"};
  auto a = nlohmann::json::parse(run(args).out);
  auto b = nlohmann::json::parse(run(args).out);
  EXPECT_EQ(a["condition"], "v1=v2 & v1!=0");
  EXPECT_EQ(a["engine"], "perceptron");
  EXPECT_EQ(a["oracle_agrees"], true);
  a.erase("elapsed_ms");
  b.erase("elapsed_ms");
  EXPECT_EQ(a.dump(), b.dump());

  auto c = nlohmann::json::parse(
      run({"check-necessary", "-m", path("p.json"), "-c", "1", "--condition", "v1=0", "--json"}).out);
  EXPECT_EQ(c["verdict"], "no");
}

TEST_F(Cli, Verify) {
  auto r = run({"verify", "--generate", "perceptron", "8", "60", "42"});
  EXPECT_EQ(r.code, cli::kYes);
  EXPECT_EQ(r.out, "60/60 agree\n");
  r = run({"verify", "--generate", "bdd", "8", "60", "42"});
  EXPECT_EQ(r.out, "60/60 agree\n");
  EXPECT_EQ(run({"verify", "--model", path("p.json"), "--count", "20"}).out, "20/20 agree\n");
  EXPECT_EQ(run({"verify", "--generate", "mlp", "30", "1", "1"}).code, cli::kBoundExceeded);
  EXPECT_EQ(run({"verify", "--generate", "dt", "17", "1", "1"}).code, cli::kBoundExceeded);
  EXPECT_EQ(run({"verify", "--generate", "svm", "5", "1", "1"}).code, cli::kUsage);
  EXPECT_EQ(run({"verify"}).code, cli::kUsage);
}

TEST_F(Cli, BoundPrecedence) {
  EXPECT_EQ(run({"verify", "--generate", "mlp", "12", "1", "1", "--mlp-bound", "10"}).code, cli::kBoundExceeded);
  ::setenv("XNR_MLP_BOUND", "10", 1);
  EXPECT_EQ(run({"verify", "--generate", "mlp", "12", "1", "1"}).code, cli::kBoundExceeded);
  EXPECT_EQ(run({"verify", "--generate", "mlp", "12", "1", "1", "--mlp-bound", "12"}).code, cli::kYes);
  ::unsetenv("XNR_MLP_BOUND");
  ::setenv("XNR_ORACLE_BOUND", "6", 1);
  EXPECT_EQ(run({"verify", "--generate", "perceptron", "7", "1", "1"}).code, cli::kBoundExceeded);
  ::unsetenv("XNR_ORACLE_BOUND");
  EXPECT_EQ(run({"verify", "--generate", "perceptron", "7", "1", "1"}).code, cli::kYes);
}

TEST_F(Cli, GenAndErrors) {
  const std::string out = path("gen.json");
  EXPECT_EQ(run({"gen", "bdd", "--n", "6", "--seed", "3", "-o", out}).code, cli::kYes);
  EXPECT_EQ(load_model(out).family(), Family::Bdd);
  const auto a = run({"gen", "mlp", "--n", "4", "--hidden", "3,2", "--seed", "9"});
  const auto b = run({"gen", "mlp", "--n", "4", "--hidden", "3,2", "--seed", "9"});
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(model_from_json(a.out), Model(random_mlp(4, {3, 2}, 4, 9)));

  const std::string cnf = path("cnf.json");
  EXPECT_EQ(run({"gen", "cnf-mlp", "--dimacs", path("unsat.cnf"), "-o", cnf}).code, cli::kYes);
  EXPECT_EQ(run({"check-necessary", "-m", cnf, "-c", "1", "--condition", "1=0"}).code, cli::kYes);

  EXPECT_EQ(run({"check-necessary", "-m", path("bad.json"), "-c", "1", "--condition", "true"}).code, cli::kUsage);
  EXPECT_EQ(run({"check-necessary", "-m", path("missing.json"), "-c", "1", "--condition", "true"}).code,
            cli::kUsage);
  EXPECT_EQ(run({"check-necessary", "-m", path("p.json"), "-c", "2", "--condition", "true"}).code, cli::kUsage);
  EXPECT_EQ(run({"check-necessary", "-m", path("p.json"), "-c", "1", "--condition", "v3=1"}).code, cli::kUsage);
  EXPECT_EQ(run({}).code, cli::kUsage);
  EXPECT_EQ(run({"--help"}).code, cli::kYes);
}

}  // namespace
}  // namespace xnr
