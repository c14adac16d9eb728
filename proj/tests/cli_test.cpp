#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pbias/cli.hpp"
#include "pbias/report.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "pbias");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = pbias::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, ExpandCsv) {
  const auto r = run({"expand", "po", "--order", "8", "--format", "csv"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "n,coefficient\n0,0\n1,0\n2,0\n3,1\n4,0\n5,1\n6,1\n7,1\n8,2\n");
}

TEST(Cli, ExpandJsonUsesStrings) {
  const auto r = run({"expand", "pe", "--order", "2", "--format", "json"});
  EXPECT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["coefficients"], nlohmann::json::array({"0", "0", "1"}));
}

TEST(Cli, ExpandUsageErrors) {
  EXPECT_EQ(run({"expand", "po", "--order", "-1"}).code, 2);
  EXPECT_EQ(run({"expand", "nope"}).code, 2);
  EXPECT_EQ(run({"expand", "p10m"}).code, 2);
  EXPECT_EQ(run({"expand", "p10m", "--m", "1"}).code, 2);
  EXPECT_EQ(run({"expand", "po", "--format", "xml"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
}

TEST(Cli, VerifyExitCodes) {
  EXPECT_EQ(run({"verify", "thm_qeu", "--max-n", "200"}).code, 0);
  const auto low = run({"verify", "thm_mm", "--max-n", "6", "--from", "1", "--format", "json"});
  EXPECT_EQ(low.code, 1);
  const auto j = nlohmann::json::parse(low.out);
  std::vector<int> ns;
  for (const auto& v : j["violations"]) ns.push_back(v["n"]);
  EXPECT_EQ(ns, (std::vector<int>{3, 5}));
  EXPECT_EQ(run({"verify", "bogus_id"}).code, 2);
  EXPECT_EQ(run({"verify", "thm_kim_new"}).code, 2);
}

TEST(Cli, EnvironmentCapsApply) {
  setenv("PB_DP_CAP", "20", 1);
  setenv("PB_ENUM_CAP", "10", 1);
  const auto r = run({"verify", "thm_reverse_2", "--max-n", "30"});
  unsetenv("PB_DP_CAP");
  unsetenv("PB_ENUM_CAP");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("30"), std::string::npos);
}

TEST(Cli, OracleAgrees) {
  const auto r = run({"oracle", "qeu_ou", "--max-n", "30", "--format", "csv"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("n,series,dp,enum\n0,1,1,1\n", 0), 0u);
}

TEST(Cli, Identities) {
  EXPECT_EQ(run({"identities", "--order", "40"}).code, 0);
  EXPECT_EQ(run({"identities", "sylvester", "--set", "x=-q^2", "--step", "2", "--order", "40"}).code, 0);
  EXPECT_EQ(run({"identities", "heine", "--set", "a=0"}).code, 2);
  EXPECT_EQ(run({"identities", "sylvester", "--set", "x=q^z"}).code, 2);
}

TEST(Cli, ScanIsObservational) {
  const auto r = run({"scan", "--m", "3", "--max-n", "40", "--format", "json"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["observations"].size(), 3u);
}

TEST(Cli, ReportRequiresAll) { EXPECT_EQ(run({"report"}).code, 2); }

TEST(Cli, ReportIsDeterministicAndWritesFile) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto a = (dir / "pbias_report_a.json").string(), b = (dir / "pbias_report_b.json").string();
  const auto r1 = run({"report", "--all", "--max-n", "10", "--order", "30", "--out", a});
  const auto r2 = run({"report", "--all", "--max-n", "10", "--order", "30", "--out", b});
  EXPECT_EQ(r1.code, r2.code);
  std::ifstream fa(a), fb(b);
  const auto ja = nlohmann::json::parse(fa), jb = nlohmann::json::parse(fb);
  EXPECT_EQ(pbias::without_timings(ja), pbias::without_timings(jb));
  EXPECT_GE(ja["records"].size(), 14u);
  bool saw_vacuous_kim = false;
  for (const auto& rec : ja["records"]) {
    EXPECT_TRUE(rec.contains("elapsed_ms"));
    if (rec["id"] == "thm_kim_new" && rec["params"]["m"] == 2) saw_vacuous_kim = rec["vacuous"].get<bool>();
  }
  EXPECT_TRUE(saw_vacuous_kim);
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}
