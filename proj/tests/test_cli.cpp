#include <gtest/gtest.h>
#include <nlohmann/json.hpp>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run(const std::string& args, bool merge_stderr = false) {
  std::string cmd = std::string(ZETA2CERT_PATH) + " " + args;
  cmd += merge_stderr ? " 2>&1" : " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("z2c_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
  static inline int counter_ = 0;
};

std::size_t line_count(const fs::path& p) {
  std::ifstream in(p);
  std::size_t n = 0;
  std::string line;
  while (std::getline(in, line)) ++n;
  return n;
}

}  // namespace

TEST(Cli, BernoulliCacheIsIdempotent) {
  TempDir dir;
  const std::string cache = (dir / "b.cache").string();
  const CliRun first = run("--cache " + cache + " bernoulli --max 400");
  ASSERT_EQ(first.code, 0);
  const json j1 = json::parse(first.out);
  EXPECT_EQ(j1["entries"], 401);
  EXPECT_GT(j1["computed"].get<long>(), 0);
  EXPECT_EQ(line_count(cache), 401u);
  const auto stamp = fs::last_write_time(cache);
  const CliRun second = run("--cache " + cache + " bernoulli --max 400");
  ASSERT_EQ(second.code, 0);
  EXPECT_EQ(json::parse(second.out)["computed"], 0);
  EXPECT_EQ(fs::last_write_time(cache), stamp);
}

TEST(Cli, CorruptCacheNamesLine) {
  TempDir dir;
  const fs::path cache = dir / "bad.cache";
  {
    std::ofstream out(cache);
    out << "0\t1/1\n1\t-1/2\n2\t1/6\n3\t0/1\n4\t-1/31\n";
  }
  const CliRun r = run("--cache " + cache.string() + " bernoulli --max 10", true);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("line 5"), std::string::npos) << r.out;
}

TEST(Cli, EnvironmentCachePath) {
  TempDir dir;
  const fs::path cache = dir / "env.cache";
  const std::string cmd = "Z2C_BERNOULLI_CACHE=" + cache.string() + " " + std::string(ZETA2CERT_PATH) +
                          " bernoulli --max 20 > /dev/null 2>&1";
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  EXPECT_EQ(line_count(cache), 21u);
}

TEST(Cli, ZetaValues) {
  const CliRun r = run("zeta --j 3 --x 1/4 --prec 64");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["j"], 3);
  EXPECT_EQ(j["x"], "1/4");
  EXPECT_EQ(j["abs_precision"], 64);
  const long e = j["scaling_exponent"].get<long>();
  EXPECT_GE(e, 0);
  EXPECT_LE(j["residue_hex"].get<std::string>().size(), static_cast<std::size_t>((64 + e + 3) / 4));

  const CliRun special = run("zeta --j 7 --prec 128");
  ASSERT_EQ(special.code, 0);
  EXPECT_TRUE(json::parse(special.out)["x"].is_null());
}

TEST(Cli, ZetaErrors) {
  EXPECT_EQ(run("zeta --j 3 --x 1/3").code, 2);
  const CliRun even = run("zeta --j 4", true);
  EXPECT_EQ(even.code, 2);
  EXPECT_NE(even.out.find("vanishing branch"), std::string::npos);
  EXPECT_EQ(run("zeta").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("--out yaml zeta --j 3 --x 1/4").code, 2);
}

TEST(Cli, VerifyValuation) {
  const CliRun r = run("verify --suite valuation --m 2 --s 0 --delta 0 --kind S");
  ASSERT_EQ(r.code, 0) << r.out;
  const json j = json::parse(r.out);
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_NE(r.out.find("67"), std::string::npos);
}

TEST(Cli, VerifySuites) {
  EXPECT_EQ(run("verify --suite lemma51 --m-max 12").code, 0);
  EXPECT_EQ(run("verify --suite integrality --n 31 --s 0 --delta 1").code, 0);
  EXPECT_EQ(run("verify --suite symmetry --n 5 --s 1 --delta 1").code, 0);
  EXPECT_EQ(run("verify --suite kummer --m-max 8").code, 0);
  EXPECT_EQ(run("verify --suite reflection --j 5").code, 0);
  EXPECT_EQ(run("verify --suite translation").code, 0);
  EXPECT_EQ(run("verify --suite decomposition --m 2 --s 0 --delta 1").code, 0);
  EXPECT_EQ(run("verify --suite growth --n 100000").code, 0);
  EXPECT_EQ(run("verify --suite delta-probe --m 3").code, 0);
  EXPECT_EQ(run("verify --suite lemma41 --n 7").code, 0);
  EXPECT_EQ(run("verify --suite bounds --n 7 --s 1").code, 0);
  EXPECT_EQ(run("verify --suite nope").code, 2);
  EXPECT_EQ(run("verify --suite valuation --m 1").code, 2);
}

TEST(Cli, VerifyTextAndCsv) {
  const CliRun text = run("--out text verify --suite lemma51 --m-max 6");
  EXPECT_EQ(text.code, 0);
  EXPECT_NE(text.out.find("pass"), std::string::npos);
  const CliRun csv = run("--out csv verify --suite lemma51 --m-max 6");
  EXPECT_EQ(csv.code, 0);
  EXPECT_NE(csv.out.find(','), std::string::npos);
}

TEST(Cli, CertificateWindowAndSchema) {
  const CliRun r = run("certificate --s 3 --delta 1 --m-list 2 --kind S");
  ASSERT_EQ(r.code, 0) << r.out;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["zeta_window"], json({7, 9, 11, 13}));
  EXPECT_EQ(j["kind"], "S");
  ASSERT_EQ(j["rows"].size(), 1u);
  const json& row = j["rows"][0];
  EXPECT_TRUE(row["mu_log2"].is_string());
  EXPECT_TRUE(row["scaled_coefficients"][0].is_string());
  EXPECT_TRUE(row["verdicts"].is_object());
  EXPECT_EQ(row["form_valuation"], row["predicted_valuation"]);

  const CliRun t = run("certificate --s 0 --kind T --m-list 2,3");
  ASSERT_EQ(t.code, 0);
  EXPECT_EQ(json::parse(t.out)["zeta_window"], json({3}));

  EXPECT_EQ(run("certificate --s 0 --delta 0 --m-list 2,3,4 --kind S").code, 0);
}

TEST(Cli, DeterministicJson) {
  const std::string args = "--seed 7 certificate --s 0 --delta 1 --m-list 2,3 --kind S";
  const CliRun a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const std::string probe = "--seed 3 verify --suite delta-probe --m 4";
  EXPECT_EQ(run(probe).out, run(probe).out);
}

TEST(Cli, Linform) {
  const CliRun r = run("linform --n 1 --s 0 --delta 0 --kind S");
  ASSERT_EQ(r.code, 0) << r.out;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["coefficients"][4], 294912);
  EXPECT_EQ(run("linform --n 3 --delta 2").code, 2);
}
