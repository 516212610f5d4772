#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "patrol/cli.hpp"
#include "patrol/hitting.hpp"
#include "patrol/io.hpp"
#include "test_support.hpp"

namespace patrol {
namespace {

using nlohmann::json;
using testing::fixture;

struct Result {
  int code;
  std::string out;
  std::string err;

  json doc() const { return json::parse(out); }
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("patrol_cli_test_" + name);
}

TEST(Cli, BuildStar) {
  const Result r = run({"build", "--topology", "star", "--n", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = r.doc();
  EXPECT_EQ(doc["n"], 4);
  EXPECT_EQ(doc["rows"][0], json::array({0.0, 1.0 / 3, 1.0 / 3, 1.0 / 3}));
  for (int i = 1; i < 4; ++i) EXPECT_EQ(doc["rows"][i], json::array({1.0, 0.0, 0.0, 0.0}));
}

TEST(Cli, BestResponseOnStarFixture) {
  const Result r = run({"best-response", "--graph", fixture("star3.json"), "--chain",
                        fixture("star3_opt.json"), "--tau", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = r.doc();
  EXPECT_EQ(doc["pair"], json::array({2, 2}));
  EXPECT_EQ(doc["value"], 0.5);
  EXPECT_EQ(doc["bound"], 1.0);
  EXPECT_EQ(doc["gap"], 0.5);
  EXPECT_EQ(r.out.rfind("{\"pair\"", 0), 0u);
}

TEST(Cli, BoundByNodeCount) {
  const Result r = run({"bound", "--n", "4", "--tau", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "{\"bound\":0.5}\n");
  EXPECT_TRUE(r.err.empty());
}

TEST(Cli, BoundWarnsOnTrivialDuration) {
  const Result r = run({"bound", "--graph", fixture("line5.json"), "--tau", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("TrivialZero"), std::string::npos);
  EXPECT_EQ(r.doc()["bound"], 0.4);
}

TEST(Cli, Classify) {
  const json doc = run({"classify", "--graph", fixture("star4.json"), "--tau", "3"}).doc();
  EXPECT_EQ(doc["class"], "Nontrivial");
  EXPECT_EQ(doc["diameter"], 2);
  EXPECT_EQ(doc["closed_walk_bound"], 6);
  EXPECT_EQ(doc["walk"].size(), 6u);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"bound", "--n", "4"}).code, 2);
  EXPECT_EQ(run({"bound", "--n", "4", "--tau", "2", "--bogus"}).code, 2);
  EXPECT_EQ(run({"build", "--topology", "hexagon", "--n", "4"}).code, 2);
  EXPECT_EQ(run({"eval", "--chain", "x", "--tau", "2", "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"evidence"}).code, 2);
  const Result help = run({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("best-response"), std::string::npos);
}

TEST(Cli, DomainErrorsExitOne) {
  const Result missing = run({"eval", "--chain", "/no/such/chain.json", "--tau", "2"});
  EXPECT_EQ(missing.code, 1);
  EXPECT_NE(missing.err.find("/no/such/chain.json"), std::string::npos);

  const Result conform = run({"eval", "--graph", fixture("line3.json"), "--chain",
                              fixture("complete3_walk.json"), "--tau", "2"});
  EXPECT_EQ(conform.code, 1);
  EXPECT_NE(conform.err.find("conformance"), std::string::npos);

  EXPECT_EQ(run({"build", "--topology", "complete-kron", "--n", "6", "--tau", "4"}).code, 1);
  EXPECT_EQ(run({"build", "--topology", "complete-kron", "--n", "6"}).code, 1);
  EXPECT_EQ(run({"bound", "--n", "4", "--tau", "0"}).code, 1);
  EXPECT_EQ(run({"bound", "--tau", "2"}).code, 1);
  EXPECT_EQ(run({"solve", "--tau", "2"}).code, 1);
}

TEST(Cli, EmittedChainsRoundTrip) {
  for (const char* topology : {"star", "line", "random-walk"}) {
    const auto chain_path = temp(std::string(topology) + "_chain.json");
    const auto graph_path = temp(std::string(topology) + "_graph.json");
    ASSERT_EQ(run({"build", "--topology", topology, "--n", "5", "--out", chain_path.string(),
                   "--graph-out", graph_path.string()})
                  .code,
              0);
    const Result eval = run({"eval", "--chain", chain_path.string(), "--graph",
                             graph_path.string(), "--tau", "6"});
    ASSERT_EQ(eval.code, 0) << eval.err;
    const Matrix p = io::parse_matrix(io::read_file(chain_path));
    const Matrix direct = capture_matrix(p, 6);
    const json doc = eval.doc();
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j < 5; ++j) {
        EXPECT_NEAR(doc["capture"][i][j].get<double>(), direct(i, j), 1e-15);
      }
    }
    std::filesystem::remove(chain_path);
    std::filesystem::remove(graph_path);
  }
}

TEST(Cli, EvalCsvAndPerStep) {
  const Result csv = run({"eval", "--chain", fixture("star3_opt.json"), "--tau", "3",
                          "--format", "csv"});
  EXPECT_EQ(csv.out, "1,0.75,0.75\n1,0.5,0.5\n1,0.5,0.5\n");
  const Result steps = run({"eval", "--chain", fixture("star3_opt.json"), "--tau", "2",
                            "--format", "csv", "--per-step"});
  EXPECT_EQ(steps.out.substr(0, steps.out.find('\n')), "step,from,to,first_hit,capture");
  EXPECT_NE(steps.out.find("2,1,1,1,1\n"), std::string::npos);
  const json doc = run({"eval", "--chain", fixture("star3_opt.json"), "--tau", "2",
                        "--per-step"}).doc();
  EXPECT_EQ(doc["first_hit"].size(), 2u);
}

TEST(Cli, SolveEchoesSeedAndIsDeterministic) {
  const auto trace = temp("trace.csv");
  const std::vector<std::string> base{"solve", "--graph", fixture("line5.json"), "--tau", "6",
                                      "--restarts", "3", "--seed", "77"};
  auto one = base;
  one.insert(one.end(), {"--threads", "1", "--trace", trace.string()});
  auto many = base;
  many.insert(many.end(), {"--threads", "3"});
  const Result a = run(one);
  const Result b = run(many);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.doc()["seed"], 77);
  EXPECT_NEAR(a.doc()["value"].get<double>(), 0.25, 1e-3);
  const std::string rows = io::read_file(trace);
  EXPECT_EQ(rows.rfind("iteration,value\n0,", 0), 0u);
  std::filesystem::remove(trace);
}

TEST(Cli, SolveLineMethod) {
  const Result r = run({"solve", "--method", "line", "--n", "4", "--tau", "5", "--restarts", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.doc()["line_params"].size(), 2u);
  EXPECT_NEAR(r.doc()["value"].get<double>(), 0.4375, 1e-3);
}

TEST(Cli, EvidenceSubcommands) {
  const json sweep =
      run({"evidence", "sweep", "--n", "4", "--tau", "5", "--samples", "200", "--seed", "2"}).doc();
  EXPECT_EQ(sweep["improvements"], 0);
  EXPECT_EQ(sweep["seed"], 2);
  EXPECT_EQ(sweep["required_samples_99_99"], 459);
  EXPECT_EQ(sweep["certifies_99_99"], false);

  const Result symmetry = run({"evidence", "symmetry", "--n", "5", "--tau", "6", "--samples",
                               "5", "--format", "csv"});
  EXPECT_EQ(std::count(symmetry.out.begin(), symmetry.out.end(), '\n'), 6);
  EXPECT_EQ(run({"evidence", "symmetry", "--n", "5", "--tau", "6"}).doc()["failed"], 0);

  const json charpoly = run({"evidence", "charpoly", "--n", "6"}).doc();
  EXPECT_LE(charpoly["max_gap"].get<double>(), 1e-10);
  EXPECT_LE(charpoly["max_shift_gap"].get<double>(), 1e-10);

  const json dominance = run({"evidence", "dominance", "--topology", "line", "--n", "5",
                              "--tau", "4", "--samples", "10"}).doc();
  EXPECT_EQ(dominance["violations"], 0);
  EXPECT_GT(dominance["checks"].get<int>(), 0);
  const Result none = run({"evidence", "dominance", "--graph", fixture("star4.json"), "--tau",
                           "3", "--samples", "10", "--format", "csv"});
  EXPECT_EQ(none.out, "rule,chain,from,to,witness,expected_larger,expected_smaller\n");
}

TEST(Cli, OracleOnEveryFixture) {
  for (const auto& entry : std::filesystem::directory_iterator(PATROL_FIXTURE_DIR)) {
    const std::string name = entry.path().filename().string();
    const auto underscore = name.find('_');
    if (underscore == std::string::npos) continue;
    const std::string graph = fixture(name.substr(0, underscore) + ".json");
    for (int tau = 1; tau <= 7; ++tau) {
      const Result r = run({"oracle", "--chain", entry.path().string(), "--graph", graph,
                            "--tau", std::to_string(tau)});
      ASSERT_EQ(r.code, 0) << name << ": " << r.err;
      EXPECT_LE(r.doc()["max_discrepancy"].get<double>(), 1e-12) << name;
      EXPECT_FALSE(r.doc()["recursion_vs_vectorized"].is_null());
    }
  }
}

TEST(Cli, OracleSimulationEchoesSeed) {
  const json doc = run({"oracle", "--chain", fixture("line4_opt.json"), "--tau", "4",
                        "--samples", "20000", "--seed", "5"}).doc();
  EXPECT_EQ(doc["simulation"]["seed"], 5);
  EXPECT_LE(doc["simulation"]["max_z"].get<double>(), 6.0);
}

}  // namespace
}  // namespace patrol
