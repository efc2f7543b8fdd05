#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "minkctl/app.hpp"
#include "support.hpp"

namespace {

namespace fs = std::filesystem;
using mink::Matrix;
using mink::testing::fixture;

std::string fixture_path(const std::string& name) {
  return std::string(MINK_FIXTURE_DIR) + "/" + name + ".json";
}

struct Result {
  int code;
  std::string out;
  std::string err;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("minkctl_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string tmp(const std::string& name) const { return (dir_ / name).string(); }

  static Result run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = minkctl::run(args, out, err);
    return {code, out.str(), err.str()};
  }

  fs::path dir_;
};

TEST_F(Cli, AdjointSwapMatrix) {
  const Result r = run({"adjoint", fixture_path("swap_2"), tmp("s.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const Matrix s = mink::read_matrix_file(tmp("s.json"));
  EXPECT_EQ(s, mink::testing::real_matrix(2, 2, {0, -1, -1, 0}));
}

TEST_F(Cli, AdjointRegressionFixture) {
  ASSERT_EQ(run({"adjoint", fixture_path("rank3_5x5"), tmp("as.json")}).code, 0);
  EXPECT_EQ(mink::read_matrix_file(tmp("as.json")), fixture("rank3_5x5_adjoint"));
}

TEST_F(Cli, MalformedJsonIsParseError) {
  std::ofstream(tmp("bad.json")) << "{\"rows\": 2, \"cols\": ";
  const Result r = run({"adjoint", tmp("bad.json"), tmp("o.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(r.err.empty());
  EXPECT_EQ(r.err.find('\n'), r.err.size() - 1);
}

TEST_F(Cli, MissingFileIsIoError) {
  EXPECT_EQ(run({"exists", tmp("missing.json")}).code, 3);
}

TEST_F(Cli, ExistsExamples) {
  const Result r52 = run({"exists", "--json", fixture_path("nonexistent_5x4")});
  EXPECT_EQ(r52.code, 1);
  const auto j = nlohmann::json::parse(r52.out);
  EXPECT_FALSE(j["verdict"].get<bool>());
  EXPECT_EQ(j["ranks"]["rank_A"], 2);
  EXPECT_EQ(j["ranks"]["rank_AsA"], 1);
  EXPECT_TRUE(j.contains("residuals"));

  const Result r55 = run({"exists", "--json", fixture_path("rank3_5x5")});
  EXPECT_EQ(r55.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r55.out)["ranks"]["rank_A"], 3);

  EXPECT_EQ(run({"exists", fixture_path("identity_3")}).code, 0);
}

TEST_F(Cli, InverseFrfAndZlobecAgree) {
  const Result frf = run({"inverse", "--algo", "frf", fixture_path("rank3_5x5"), tmp("f.json")});
  ASSERT_EQ(frf.code, 0) << frf.err;
  const Result zl = run({"inverse", "--algo", "zlobec", "--k", "1", "--l", "2", "--seed", "9",
                         fixture_path("rank3_5x5"), tmp("z.json")});
  ASSERT_EQ(zl.code, 0) << zl.err;
  const Matrix am = fixture("rank3_5x5_inverse");
  const Matrix f = mink::read_matrix_file(tmp("f.json"));
  const Matrix z = mink::read_matrix_file(tmp("z.json"));
  EXPECT_LT((f - am).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LT((z - f).cwiseAbs().maxCoeff(), 1e-8);
  const mink::Residuals res = mink::defining_residuals(fixture("rank3_5x5"), f);
  EXPECT_LT(res.max(), 1e-10);
}

TEST_F(Cli, InverseRefusesAndForces) {
  EXPECT_EQ(run({"inverse", fixture_path("nonexistent_5x4"), tmp("x.json")}).code, 1);
  EXPECT_FALSE(fs::exists(tmp("x.json")));
  const Result forced = run({"inverse", "--force", fixture_path("nonexistent_5x4"), tmp("x.json")});
  EXPECT_EQ(forced.code, 0);
  EXPECT_NE(forced.out.find("verdict false"), std::string::npos);
}

TEST_F(Cli, InversePreconditionFailures) {
  ASSERT_EQ(run({"gen", "--rows", "5", "--cols", "4", "--rank", "2", "--seed", "1", tmp("a.json")}).code, 0);
  EXPECT_EQ(run({"inverse", "--algo", "hs", tmp("a.json"), tmp("x.json")}).code, 4);
  EXPECT_EQ(run({"inverse", "--algo", "block", "--r", "1", tmp("a.json"), tmp("x.json")}).code, 4);
  EXPECT_EQ(run({"inverse", "--algo", "nope", tmp("a.json"), tmp("x.json")}).code, 2);
}

TEST_F(Cli, CheckExamples) {
  EXPECT_EQ(run({"check", fixture_path("rank3_5x5"), fixture_path("rank3_5x5_inverse")}).code, 0);
  const Result bad = run({"check", "--json", fixture_path("rank3_5x5"), fixture_path("rank3_5x5_decoy")});
  EXPECT_EQ(bad.code, 1);
  const auto j = nlohmann::json::parse(bad.out);
  EXPECT_FALSE(j["range_ok"].get<bool>());
  EXPECT_LT(j["residuals"]["eq1"].get<double>(), 1e-12);
  EXPECT_LT(j["residuals"]["eq2"].get<double>(), 1e-12);
  EXPECT_EQ(run({"check", fixture_path("identity_3"), fixture_path("identity_3")}).code, 0);
  EXPECT_EQ(run({"check", fixture_path("identity_3"), fixture_path("swap_2")}).code, 2);
}

TEST_F(Cli, GenExamples) {
  ASSERT_EQ(run({"gen", "--kind", "existent", "--rows", "5", "--cols", "4", "--rank", "2",
                 "--seed", "1", tmp("e.json")}).code, 0);
  EXPECT_EQ(run({"exists", tmp("e.json")}).code, 0);
  ASSERT_EQ(run({"gen", "--kind", "isotropic", "--rows", "4", "--cols", "3", "--seed", "2",
                 tmp("i.json")}).code, 0);
  EXPECT_EQ(run({"exists", tmp("i.json")}).code, 1);
  EXPECT_EQ(run({"gen", "--kind", "existent", "--rows", "3", "--cols", "3", "--rank", "0",
                 tmp("z.json")}).code, 2);
}

TEST_F(Cli, GenIsDeterministic) {
  for (const char* name : {"a.json", "b.json"}) {
    ASSERT_EQ(run({"gen", "--kind", "block", "--rows", "6", "--cols", "5", "--rank", "3",
                   "--seed", "3", tmp(name)}).code, 0);
  }
  std::ifstream a(tmp("a.json"));
  std::ifstream b(tmp("b.json"));
  std::stringstream sa;
  std::stringstream sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  EXPECT_EQ(sa.str(), sb.str());
}

TEST_F(Cli, CrossCheckExamples) {
  const Result good = run({"crosscheck", "--json", fixture_path("rank3_5x5")});
  EXPECT_EQ(good.code, 0) << good.out;
  const auto j = nlohmann::json::parse(good.out);
  EXPECT_TRUE(j["verdict"].get<bool>());
  EXPECT_LT(j["max_pairwise_gap"].get<double>(), 1e-8);
  EXPECT_EQ(run({"crosscheck", "--force", fixture_path("nonexistent_5x4")}).code, 0);
  std::ofstream(tmp("bad.json")) << R"({"rows":2,"cols":2,"data":[[1,0],[2,0]]})";
  EXPECT_EQ(run({"crosscheck", tmp("bad.json")}).code, 2);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"--rank-rtol", "-1", "exists", fixture_path("identity_3")}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(Cli, GlobalToleranceFlags) {
  // A loose rank cutoff hides the small singular direction.
  Matrix a = mink::identity(3);
  a(2, 2) = 1e-6;
  mink::write_matrix_file(tmp("a.json"), a);
  EXPECT_EQ(run({"--rank-rtol", "1e-3", "--json", "exists", tmp("a.json")}).code, 2);
  const Result r = run({"--rank-rtol", "1e-3", "exists", "--json", tmp("a.json")});
  EXPECT_EQ(nlohmann::json::parse(r.out)["ranks"]["rank_A"], 2);
}

TEST_F(Cli, BinaryExitCodes) {
  const std::string exe = MINKCTL_PATH;
  auto status = [&](const std::string& args) {
    const int s = std::system((exe + " " + args + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(s);
  };
  EXPECT_EQ(status("exists " + fixture_path("rank3_5x5")), 0);
  EXPECT_EQ(status("exists " + fixture_path("nonexistent_5x4")), 1);
  EXPECT_EQ(status("exists " + tmp("missing.json")), 3);
  EXPECT_EQ(status("gen --rows 2 --cols 2 --rank 0 " + tmp("g.json")), 2);
}

}  // namespace
