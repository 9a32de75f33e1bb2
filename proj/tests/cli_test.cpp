#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "gslab/errors.hpp"

using namespace gslab;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, ExactCensusJson) {
  auto r = run({"census", "--rule", "borda", "--q", "4", "--n", "2", "--exact"});
  ASSERT_EQ(r.code, cli::kPass) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["mode"], "exact");
  EXPECT_EQ(j["total"], 576);
  EXPECT_EQ(j["counts"]["manip"], 384);
  EXPECT_EQ(j["fractions"]["manip"]["num"], "2");
  EXPECT_EQ(j["fractions"]["manip"]["den"], "3");
  EXPECT_EQ(j["epsilon"]["num"], "7");
  EXPECT_EQ(j["pass"]["thm13"], true);
}

TEST(Cli, ProfileCsvHasOneRowPerProfile) {
  auto r = run({"census", "--rule", "plurality", "--q", "3", "--n", "2", "--exact", "--format", "csv"});
  ASSERT_EQ(r.code, cli::kPass) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "profile,winner,manipulable,r2,r3,r4");
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 36u);
}

TEST(Cli, SampledRunsAreByteIdentical) {
  const std::vector<std::string> args{"census", "--rule", "plurality", "--q", "3", "--n", "6", "--samples", "3000", "--seed", "4"};
  auto a = run(args);
  auto b = run(args);
  auto wide = args;
  wide.insert(wide.end(), {"--workers", "3"});
  auto c = run(wide);
  ASSERT_EQ(a.code, cli::kPass) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
  EXPECT_EQ(nlohmann::json::parse(a.out)["seed"], 4);
}

TEST(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(run({}).code, cli::kUsage);
  EXPECT_EQ(run({"census", "--q", "3", "--n", "2"}).code, cli::kUsage);
  EXPECT_EQ(run({"census", "--q", "3", "--n", "2", "--samples", "10"}).code, cli::kUsage);
  EXPECT_EQ(run({"census", "--rule", "nope", "--q", "3", "--n", "2", "--exact"}).code, cli::kUsage);
  EXPECT_EQ(run({"census", "--q", "3", "--n", "2", "--exact", "--cap", "5"}).code, cli::kUsage);
  EXPECT_EQ(run({"paths", "--kind", "order_preserving", "--from", "2>1>3", "--to", "1>2>3"}).code, cli::kUsage);
  EXPECT_EQ(run({"census", "--help"}).code, cli::kPass);
}

TEST(Cli, PathsDumpAnnotatesParts) {
  auto r = run({"paths", "--kind", "sim_canon", "--from", "1>2>3", "--to", "3>2>1", "--a", "1", "--b", "2"});
  ASSERT_EQ(r.code, cli::kPass) << r.err;
  EXPECT_NE(r.out.find("# part I"), std::string::npos);
  EXPECT_NE(r.out.find("# part II"), std::string::npos);
  auto v = run({"paths", "--kind", "v1", "--from", "1>2>3|1>2>3 ; 2>1>3|1>2>3", "--to", "3>1>2|3>2>1 ; 3>1>2|3>1>2"});
  ASSERT_EQ(v.code, cli::kPass) << v.err;
  EXPECT_NE(v.out.find("# part middle"), std::string::npos);
}

TEST(Cli, VerifySuitesPass) {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"verify", "--suite", "lemmas", "--rule", "borda", "--q", "4", "--n", "2", "--exact"},
        std::vector<std::string>{"verify", "--suite", "gs", "--q", "3", "--n", "2", "--samples", "200", "--seed", "1"},
        std::vector<std::string>{"verify", "--suite", "neutrality", "--q", "3", "--n", "2"}}) {
    auto r = run(args);
    EXPECT_EQ(r.code, cli::kPass) << args[2] << ": " << r.out << r.err;
    EXPECT_EQ(nlohmann::json::parse(r.out)["pass"], true);
  }
  auto gs = nlohmann::json::parse(run({"verify", "--suite", "gs", "--samples", "1000", "--seed", "1"}).out);
  EXPECT_NE(gs["checks"][0]["detail"].get<std::string>().find("1000/1000"), std::string::npos);
}

TEST(Cli, VacuousLemmaChecksAreNotApplicable) {
  auto r = run({"verify", "--suite", "lemmas", "--rule", "constant:2", "--q", "4", "--n", "2", "--exact"});
  ASSERT_EQ(r.code, cli::kPass);
  auto j = nlohmann::json::parse(r.out);
  for (const auto& c : j["checks"])
    if (c["name"] == "constant_distance_bound") {
      EXPECT_EQ(c["status"], "N/A");
    }
}

TEST(Cli, OutFileReceivesReport) {
  const std::string path = ::testing::TempDir() + "gslab_cli_out.json";
  auto r = run({"influence", "--rule", "dictator:2", "--q", "3", "--n", "2", "--exact", "--out", path});
  ASSERT_EQ(r.code, cli::kPass) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j["coordinates"][0]["total"]["num"], "0");
  EXPECT_EQ(j["coordinates"][1]["total"]["num"], "2");
  std::remove(path.c_str());
}

TEST(Cli, MakeRuleParsesSpecs) {
  EXPECT_EQ(cli::make_rule("dictator:2", 3, 2)(parse_profile("1>2>3|3>2>1")), 3);
  EXPECT_EQ(cli::make_rule("constant:3", 3, 2)(parse_profile("1>2>3|3>2>1")), 3);
  EXPECT_THROW(cli::make_rule("dictator:0", 3, 2), DomainError);
  EXPECT_THROW(cli::make_rule("borda", 1, 2), DomainError);
}
