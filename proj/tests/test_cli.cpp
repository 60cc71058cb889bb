#include <gtest/gtest.h>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code = -1;
  std::string out, err;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("wg_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  Result run(const std::string& args, const std::string& env = "") {
    const fs::path out = dir_ / "stdout", err = dir_ / "stderr";
    const std::string cmd = "WG_CACHE_DIR=" + (dir_ / "cache").string() + " " + env + " " WGCALC_PATH " " + args +
                            " >" + out.string() + " 2>" + err.string();
    Result r;
    const int status = std::system(cmd.c_str());
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }

  fs::path dir_;
};

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows(1);
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') field += text[++i];
      else if (c == '"') quoted = false;
      else field += c;
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      rows.back().push_back(field);
      field.clear();
    } else if (c == '\n') {
      rows.back().push_back(field);
      field.clear();
      rows.emplace_back();
    } else {
      field += c;
    }
  }
  if (rows.back().empty()) rows.pop_back();
  return rows;
}

}  // namespace

TEST_F(Cli, WeingartenExample) {
  const auto r = run("weingarten --family classical --k 4 --N 3");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["command"], "weingarten");
  EXPECT_EQ(j["matrix"][0][0], json({{"num", "2"}, {"den", "15"}}));
  EXPECT_EQ(j["matrix"][0][1], json({{"num", "-1"}, {"den", "30"}}));
  EXPECT_EQ(j["basis"].size(), 3u);
  EXPECT_FALSE(j["matrix"][0][0].contains("decimal"));
}

TEST_F(Cli, MomentExamples) {
  auto r = run("sphere-moment --sphere free --indices 1,1,1,1 --N 4");
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["value"], json({{"num", "1"}, {"den", "10"}}));
  EXPECT_EQ(j["query"]["indices"], json({1, 1, 1, 1}));
  EXPECT_EQ(j["family"], "free");
  EXPECT_EQ(j["twisted"], false);
  EXPECT_EQ(j["N"], 4);
  r = run("moment --family classical --k 2 --N 5 --i 1,2 --j 1,2");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["value"]["num"], "0");
  r = run("moment --family classical --k 2 --N 5 --i 1,1 --j 2,2");
  EXPECT_EQ(json::parse(r.out)["value"], json({{"num", "1"}, {"den", "5"}}));
}

TEST_F(Cli, DigitsAddDecimals) {
  const auto r = run("sphere-moment --sphere classical --indices 1,1 --N 3 --digits 12");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["value"]["digits"], 12);
  EXPECT_EQ(j["value"]["decimal"].get<std::string>().substr(0, 8), "0.333333");
}

TEST_F(Cli, Deterministic) {
  for (const std::string args : {"weingarten --family half --k 6 --N 3", "law --sphere free --N 7 --lmax 4",
                                 "classify --generators \"3:(3,2,1)\" --kmax 6", "verify --suite weingarten",
                                 "oracle free --l 3 --N 4 --digits 50", "--format csv gram --family free --k 6 --N 3"}) {
    // Same flags and same cache state: cold against cold, warm against warm.
    const auto cold = run(args);
    const auto other = run(args, "WG_CACHE_DIR=" + (dir_ / ("other" + std::to_string(std::hash<std::string>{}(args)))).string());
    const auto warm1 = run(args), warm2 = run(args);
    EXPECT_EQ(cold.code, 0) << args << cold.err;
    EXPECT_FALSE(cold.out.empty());
    EXPECT_EQ(cold.out, other.out) << args;
    EXPECT_EQ(warm1.out, warm2.out) << args;
  }
}

TEST_F(Cli, CsvAndJsonAgree) {
  const auto j = json::parse(run("weingarten --family classical --k 6 --N 4").out);
  const auto rows = parse_csv(run("--format csv weingarten --family classical --k 6 --N 4").out);
  ASSERT_EQ(rows[0], (std::vector<std::string>{"row", "col", "num", "den"}));
  ASSERT_EQ(rows.size(), 1 + 15u * 15u);
  for (std::size_t t = 1; t < rows.size(); ++t) {
    const auto r = std::stoul(rows[t][0]), c = std::stoul(rows[t][1]);
    EXPECT_EQ(j["matrix"][r][c]["num"], rows[t][2]);
    EXPECT_EQ(j["matrix"][r][c]["den"], rows[t][3]);
  }
  const auto sj = json::parse(run("sphere-moment --sphere half --indices 1,2,2,1 --N 3").out);
  const auto sc = parse_csv(run("sphere-moment --sphere half --indices 1,2,2,1 --N 3 --format csv").out);
  ASSERT_EQ(sc.size(), 2u);
  EXPECT_EQ(sc[1][3], "1,2,2,1");
  EXPECT_EQ(sc[1][4], sj["value"]["num"]);
  EXPECT_EQ(sc[1][5], sj["value"]["den"]);
  const auto pj = json::parse(run("pairings --k 6 --family free").out);
  const auto pc = parse_csv(run("pairings --k 6 --family free --format csv").out);
  ASSERT_EQ(pc.size(), pj["pairings"].size() + 1);
  for (std::size_t t = 1; t < pc.size(); ++t) EXPECT_EQ(pc[t][1], pj["pairings"][t - 1]);
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run("weingarten --k 4 --N 1").code, 3);
  auto r = run("weingarten --k 4 --N 1");
  const auto e = json::parse(r.err);
  EXPECT_EQ(e["error"], "gram_singular");
  EXPECT_EQ(e["rank"], 1);
  EXPECT_EQ(r.err.find('\n'), r.err.size() - 1);
  EXPECT_EQ(run("--strict sphere-moment --sphere classical --indices 1,1,1,1,1,1 --N 2").code, 3);
  EXPECT_EQ(run("sphere-moment --sphere classical --indices 1,1,1,1,1,1 --N 2").code, 0);
  for (const std::string bad : {"weingarten --k 3 --N 3", "weingarten --k 4", "pairings --k 4 --family quantum",
                                "moment --N 2 --i 1,3 --j 1,1", "moment --N 2 --i 1,1 --j 1", "--bogus",
                                "weingarten --k 4 --N 3 --unknown-flag", "frobnicate", "weingarten --k 12 --N 3",
                                "oracle free --l 2 --N 2", "classify --generators \"3:(1,1,2)\"",
                                "--format xml pairings --k 2", "sphere-moment --sphere free --indices 1,x --N 3"}) {
    const auto res = run(bad);
    EXPECT_EQ(res.code, 2) << bad << " -> " << res.err;
    EXPECT_NO_THROW(json::parse(res.err)) << bad;
    EXPECT_TRUE(res.out.empty()) << bad;
  }
  EXPECT_EQ(run("weingarten --k 12 --N 7 --max-k 12 --family free").code, 0);
}

TEST_F(Cli, CacheIsReused) {
  auto a = json::parse(run("weingarten --family half --k 6 --N 4").out);
  auto b = json::parse(run("weingarten --family half --k 6 --N 4").out);
  EXPECT_EQ(a["cache"]["computed"], 1);
  EXPECT_EQ(b["cache"]["computed"], 0);
  EXPECT_EQ(b["cache"]["disk_hits"], 1);
  EXPECT_EQ(a["matrix"], b["matrix"]);
  EXPECT_TRUE(fs::exists(dir_ / "cache" / "half" / "k6_N4.json"));
  const fs::path flag = dir_ / "flagdir";
  run("--cache-dir " + flag.string() + " weingarten --k 4 --N 2");
  EXPECT_TRUE(fs::exists(flag / "classical" / "k4_N2.json"));
}

TEST_F(Cli, CorruptCacheRecovers) {
  run("weingarten --k 4 --N 5");
  const fs::path file = dir_ / "cache" / "classical" / "k4_N5.json";
  const std::string good = slurp(file);
  std::ofstream(file) << "{\"truncated\": ";
  const auto r = run("weingarten --k 4 --N 5");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("corrupt"), std::string::npos);
  EXPECT_EQ(json::parse(r.out)["cache"]["computed"], 1);
  EXPECT_EQ(slurp(file), good);
}

TEST_F(Cli, ConcurrentProcesses) {
  run("weingarten --k 8 --N 5");
  const std::string base = "WG_CACHE_DIR=" + (dir_ / "cache").string() + " " WGCALC_PATH " weingarten --k 8 --N 5 > ";
  const std::string cmd = "(" + base + (dir_ / "a").string() + " & " + base + (dir_ / "b").string() + " & " + base +
                          (dir_ / "c").string() + " & wait)";
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  const std::string a = slurp(dir_ / "a");
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, slurp(dir_ / "b"));
  EXPECT_EQ(a, slurp(dir_ / "c"));
  EXPECT_EQ(json::parse(a)["cache"]["disk_hits"], 1);
}

TEST_F(Cli, OracleReports) {
  auto j = json::parse(run("oracle classical --profile 4,2 --N 5").out);
  EXPECT_TRUE(j.contains("provenance"));
  EXPECT_EQ(j["results"][0]["value"], json({{"num", "1"}, {"den", "105"}}));
  j = json::parse(run("oracle half --profile 2 --N 2").out);
  EXPECT_EQ(j["discrepant"], true);
  EXPECT_EQ(j["results"][0]["value"], json({{"num", "1"}, {"den", "3"}}));
  EXPECT_EQ(j["results"][1]["value"], json({{"num", "8"}, {"den", "5"}}));
  j = json::parse(run("oracle free --l 1 --N 4 --digits 20").out);
  EXPECT_EQ(j["digits"], 20);
  EXPECT_EQ(j["results"][0]["decimal"].get<std::string>().substr(0, 4), "0.25");
}

TEST_F(Cli, ClassifyReport) {
  const auto r = run("classify --generators \"3:(3,2,1);5:(2,1,3,4,5)\" --kmax 6");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["label"], "full");
  EXPECT_EQ(j["levels"].back()["order"], 720);
  EXPECT_EQ(j["rule_counts"]["generator"], 2);
  const auto t = json::parse(run("classify --generators \"3:(3,2,1)\" --twisted").out);
  EXPECT_EQ(t["label"], "star");
  EXPECT_EQ(t["sphere"], "twisted_half");
}

TEST_F(Cli, VerifySuites) {
  for (const std::string s : {"categorical", "weingarten", "oracles", "classify"}) {
    const auto r = run("verify --suite " + s);
    EXPECT_EQ(r.code, 0) << s;
    EXPECT_EQ(json::parse(r.out)["failed"], 0) << s;
  }
  const auto o = json::parse(run("verify --suite oracles").out);
  EXPECT_GT(o["expected_mismatches"].get<int>(), 0);
}

TEST_F(Cli, TimingIsOptIn) {
  EXPECT_FALSE(json::parse(run("pairings --k 4").out).contains("timing_ms"));
  EXPECT_TRUE(json::parse(run("--timing pairings --k 4").out).contains("timing_ms"));
}
