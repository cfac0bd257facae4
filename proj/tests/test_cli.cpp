#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "unknot/fixtures.hpp"
#include "unknot/json_io.hpp"

using namespace unknot;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  const std::string cmd = std::string(UNKNOT_CLI_PATH) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("unknot_cli_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

std::string problem_file(const std::string& knot, CrossingSplit split) {
  KnotProblem kp = fixtures::find(knot)->problem;
  kp.split = split;
  return write_temp(knot + "_" + std::to_string(split.positive) + std::to_string(split.negative) + ".json",
                    to_json(kp).dump());
}

}  // namespace

TEST(JsonIo, ProblemRoundTrip) {
  for (const auto& f : fixtures::all()) {
    const json j = to_json(f.problem);
    const KnotProblem back = problem_from_json(j);
    EXPECT_EQ(back.name, f.problem.name);
    EXPECT_EQ(back.goeritz, f.problem.goeritz);
    EXPECT_EQ(back.determinant, f.problem.determinant);
    EXPECT_EQ(back.signature, f.problem.signature);
    EXPECT_EQ(back.split.positive, f.problem.split.positive);
    EXPECT_EQ(back.split.negative, f.problem.split.negative);
    EXPECT_EQ(back.unknotting_upper_bound, f.problem.unknotting_upper_bound);
    EXPECT_EQ(to_json(back).dump(), j.dump());
  }
}

TEST(JsonIo, ProblemDefaultsAndErrors) {
  const auto kp = problem_from_json(json::parse(
      R"({"name":"x","signature":2,"goeritz":[[6,-3],[-3,6]],"split":[1,1]})"));
  EXPECT_EQ(kp.determinant, 27);
  EXPECT_EQ(kp.split.positive, 1);
  EXPECT_THROW(problem_from_json(json::parse(R"({"name":"x"})")), parse_error);
  EXPECT_THROW(matrix_from_json(json::parse(R"([[1,2],[3]])")), parse_error);
  EXPECT_THROW(matrix_from_json(json::parse(R"("no")")), parse_error);
}

TEST(JsonIo, ScalarsAndTables) {
  EXPECT_EQ(rational_from_json(to_json(Rational::parse("-69/105"))), Rational::parse("-23/35"));
  const BigInt huge = BigInt(1) << 80;
  EXPECT_EQ(bigint_from_json(to_json(huge)), huge);
  EXPECT_EQ(bigint_from_json(to_json(BigInt(-7))), -7);
  const IntMatrix m{{3, 2, 0}, {2, 27, 26}, {0, 26, 27}};
  EXPECT_EQ(matrix_from_json(to_json(m)), m);

  const json t = to_json(correction_table(IntMatrix{{6, -3}, {-3, 6}}));
  EXPECT_EQ(t["factors"], json::parse("[3,9]"));
  EXPECT_EQ(t["values"]["(0,0)"], "-1/2");
  EXPECT_EQ(t["values"].size(), 27u);

  const auto g = white_graph_from_json(json::parse(R"({"vertices":3,"edges":[[1,2],[2,3]]})"));
  EXPECT_EQ(goeritz_from_white_graph(g), (IntMatrix{{1, -1}, {-1, 2}}));
}

TEST(Cli, ObstructExitCodes) {
  EXPECT_EQ(run_cli("obstruct " + problem_file("9_10", {0, 2})).code, 10);
  EXPECT_EQ(run_cli("obstruct " + problem_file("9_35", {1, 1})).code, 10);
  EXPECT_EQ(run_cli("obstruct " + problem_file("9_35", {0, 2})).code, 12);
  EXPECT_EQ(run_cli("obstruct " + problem_file("9_35", {0, 0})).code, 2);
  EXPECT_EQ(run_cli("obstruct " + problem_file("9_10", {0, 2}) + " --split 1,1").code, 2);

  KnotProblem synthetic{"synthetic", 33, 4, lift_tilde(IntMatrix{{3, 0}, {0, 11}}), {0, 2}, std::nullopt};
  const auto path = write_temp("synthetic.json", to_json(synthetic).dump());
  EXPECT_EQ(run_cli("obstruct " + path).code, 11);

  const CliRun r = run_cli("obstruct " + problem_file("10_120", {0, 2}));
  EXPECT_EQ(r.code, 10);
  const json report = json::parse(r.out);
  EXPECT_EQ(report["verdict"], "obstructed");
  EXPECT_EQ(report["candidates"].size(), 4u);
}

TEST(Cli, InputErrors) {
  EXPECT_EQ(run_cli("obstruct " + write_temp("garbage.json", "{not json")).code, 2);
  EXPECT_EQ(run_cli("obstruct /nonexistent/problem.json").code, 2);
  EXPECT_EQ(run_cli("mq " + write_temp("indefinite.json", "[[1,2],[2,1]]")).code, 3);
  EXPECT_EQ(run_cli("mq " + write_temp("ragged.json", "[[1,2],[2]]")).code, 2);
  EXPECT_EQ(run_cli("enumerate --rank 2 --det 32 --neg 1").code, 2);
  EXPECT_EQ(run_cli("reproduce 12_345").code, 2);
  EXPECT_EQ(run_cli("no-such-command").code, 2);
}

TEST(Cli, MqReportsMinimum) {
  const CliRun r = run_cli("mq " + write_temp("g913.json", to_json(fixtures::find("9_13")->problem.goeritz).dump()));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out)["min_nonzero"], "-27/37");
  const CliRun id = run_cli("mq " + write_temp("one.json", "[[1]]"));
  ASSERT_EQ(id.code, 0);
  EXPECT_EQ(json::parse(id.out)["spin_value"], "0");
}

TEST(Cli, EnumerateAndGoeritz) {
  const json a = json::parse(run_cli("enumerate --rank 2 --det 27 --neg 1 --group 3,9").out);
  ASSERT_EQ(a["candidates"].size(), 1u);
  EXPECT_EQ(a["candidates"][0]["triple"], json::parse("[2,0,5]"));
  const CliRun two = run_cli("goeritz two-bridge --p 33 --q 10");
  ASSERT_EQ(two.code, 0);
  EXPECT_EQ(json::parse(two.out)["goeritz"], json::parse("[[4,-1,0,0],[-1,2,-1,0],[0,-1,2,-1],[0,0,-1,4]]"));
}

TEST(Cli, ReproduceIsDeterministic) {
  const CliRun first = run_cli("reproduce all --jobs 2");
  const CliRun second = run_cli("reproduce all --jobs 1");
  EXPECT_EQ(first.code, 0);
  EXPECT_EQ(first.out, second.out);
  EXPECT_EQ(run_cli("reproduce 9_38").code, 0);
}
