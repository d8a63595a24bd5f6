#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli_app.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "satotate");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = satotate::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("satotate_cli_test_" + name);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Cli, DecomposeExamples) {
  auto r = run({"decompose", "--n", "3", "--spec", "1,1,0,0"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "mu,a_mu,dim\n2 1 0,1,8\n0 0 0,1,1\nchecksum,,9\n");
  r = run({"decompose", "--n", "2", "--spec", "0,0"});
  EXPECT_EQ(r.out, "mu,a_mu,dim\n0 0,1,1\nchecksum,,1\n");
  r = run({"decompose", "--n", "3", "--spec", "3,0,0,0", "--format", "json"});
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["summary"]["checksum"], 27);
  EXPECT_EQ(doc["rows"].size(), 4u);
}

TEST(Cli, MomentAgainstOracle) {
  auto r = run({"moment", "--n", "3", "--spec", "1,1,0,0", "--m", "100000", "--workers", "4", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["rows"][0]["oracle"], 1);
  EXPECT_LE(doc["rows"][0]["z_score"].get<double>(), 5.0);

  r = run({"moment", "--n", "3", "--spec", "0,0,0,0", "--m", "1000", "--format", "json"});
  doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["rows"][0]["mean_re"].get<double>(), 1.0);
  EXPECT_EQ(doc["rows"][0]["std_error"].get<double>(), 0.0);
}

TEST(Cli, SampleHistogram) {
  auto r = run({"sample", "--n", "2", "--m", "20000", "--bins", "50"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "bin_lo,bin_hi,count,empirical_density,semicircle_density");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, 50);
}

TEST(Cli, BoundVerifyAndRate) {
  auto r = run({"bound", "--verify", "--p", "2,3,5", "--alpha", "0.109375,0.5,1.6667", "--max-degree", "4"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "i1,i1p,i2,i2p,p,alpha,exact,bound");
  r = run({"bound", "--rate", "--spec", "1,0,0,0", "--p", "2", "--T-grid", "100", "--eps", "0.01"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "T,envelope,measured");
  r = run({"bound", "--verify", "--rate"});
  EXPECT_NE(r.code, 0);
}

TEST(Cli, Hecke) {
  auto r = run({"hecke", "--m", "2000", "--m-t1", "200"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("T1,5,200,"), std::string::npos);
}

TEST(Cli, EquidistSaveAndIngest) {
  const auto fam = temp_file("family.json");
  auto r = run({"equidist", "--n", "3", "--synth", "500", "--T-grid", "30", "--max-degree", "1", "--save-family",
                fam.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  r = run({"ingest", fam.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("3,500,"), std::string::npos);
  r = run({"equidist", "--family", fam.string(), "--T-grid", "30", "--spec", "1,1,0,0", "--format", "json"});
  EXPECT_EQ(r.code, 0) << r.err;
  std::filesystem::remove(fam);
}

TEST(Cli, IngestReportsIncoherentMember) {
  auto fam = satotate::synth_family(3, 20, satotate::SynthMode::sato_tate, {2}, 5);
  satotate::attach_coefficients(fam, 2, 2);
  fam.members[7].coefficients.at(satotate::CoefficientIndex(3, {1, 0})) += satotate::Complex(0.25, 0.0);
  const auto bad = temp_file("bad.json");
  satotate::save_family(fam, bad.string());
  const auto r = run({"ingest", bad.string()});
  EXPECT_NE(r.code, 0);
  const auto err = nlohmann::json::parse(r.err);
  EXPECT_EQ(err["error"]["kind"], "family_invalid");
  EXPECT_EQ(err["error"]["member"], 7);
  EXPECT_GT(err["error"]["residual"].get<double>(), 1e-6);
  std::filesystem::remove(bad);
}

TEST(Cli, ErrorsAreMachineReadable) {
  auto r = run({"decompose", "--n", "3", "--spec", "1,2"});
  EXPECT_NE(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.err)["error"]["kind"], "invalid_argument");
  r = run({"decompose", "--n", "3", "--bogus"});
  EXPECT_NE(r.code, 0);
  EXPECT_TRUE(nlohmann::json::parse(r.err).contains("error"));
  r = run({"decompose", "--n", "5", "--spec", "4,4,4,4,0,0,0,0", "--budget", "1000"});
  EXPECT_NE(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.err)["error"]["kind"], "budget_exceeded");
  r = run({"decompose", "--budget", "10"});
  EXPECT_NE(r.code, 0);
  r = run({"ingest", temp_file("missing.json").string()});
  EXPECT_NE(r.code, 0);
}

TEST(Cli, EnvironmentOverride) {
  ::setenv("SATOTATE_SPEC", "3,0,0,0", 1);
  const auto r = run({"decompose", "--n", "3"});
  ::unsetenv("SATOTATE_SPEC");
  EXPECT_NE(r.out.find("checksum,,27"), std::string::npos) << r.out << r.err;
}

TEST(Cli, DeterministicAcrossRunsAndWorkerCounts) {
  const auto a = temp_file("det_a.csv"), b = temp_file("det_b.csv");
  ASSERT_EQ(run({"sample", "--n", "3", "--m", "30000", "--seed", "5", "--workers", "1", "--out", a.string()}).code, 0);
  ASSERT_EQ(run({"sample", "--n", "3", "--m", "30000", "--seed", "5", "--workers", "4", "--out", b.string()}).code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
  ASSERT_EQ(run({"equidist", "--synth", "3000", "--seed", "5", "--workers", "1", "--out", a.string()}).code, 0);
  ASSERT_EQ(run({"equidist", "--synth", "3000", "--seed", "5", "--workers", "3", "--out", b.string()}).code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}
