#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

namespace {

struct Outcome {
  int code = -1;
  std::string out;
};

Outcome run(const std::string& args) {
  const char* exe = std::getenv("ETFKIT");
  if (!exe) exe = "./etfkit";
  Outcome r;
  FILE* pipe = popen((std::string(exe) + " " + args + " 2>/dev/null").c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("etfkit_test_" + std::to_string(::getpid()) + "_" + name)).string();
}

}  // namespace

TEST(Cli, VerifyTableRow) {
  Outcome r = run("verify --a 24 --b 02 --n 6");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "skew-Hadamard: yes; ETF(12,6): yes; regular: yes\n");
}

TEST(Cli, VerifyRejectsNonSolution) {
  Outcome r = run("verify --a 24 --b 03 --n 6");
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out.substr(0, 17), "skew-Hadamard: no");
}

TEST(Cli, DecodeEncode) {
  Outcome d = run("decode --hex 24 --n 6");
  EXPECT_EQ(d.code, 0);
  EXPECT_EQ(d.out, "1 -1 -1 1 -1 -1\n");
  Outcome e = run("encode --signs 1,-1,-1,1,-1,-1");
  EXPECT_EQ(e.out, "24\n");
}

TEST(Cli, ClassifyEmptyCase) {
  Outcome r = run("classify --n 18");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("0 classes"), std::string::npos);
}

TEST(Cli, ClassifySmall) {
  Outcome r = run("classify --n 8");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("2 classes"), std::string::npos);
  EXPECT_NE(r.out.find("\tDP\t"), std::string::npos);
  EXPECT_NE(r.out.find("\tCDP\t"), std::string::npos);
}

TEST(Cli, SearchThenClassifyFromFile) {
  const std::string recs = temp_path("recs.txt");
  Outcome s = run("search --n 10 --out " + recs);
  EXPECT_EQ(s.code, 0);
  Outcome c = run("classify --n 10 --in " + recs + " --format records");
  EXPECT_EQ(c.code, 0);
  EXPECT_EQ(c.out.substr(c.out.size() - 5), "\tP\t1\n");
  std::filesystem::remove(recs);
}

TEST(Cli, EquivOnGramFiles) {
  const std::string a = temp_path("a.txt"), b = temp_path("b.txt"), c = temp_path("c.txt");
  ASSERT_EQ(run("gram --a F7 --b ED --n 8 --form shm --out " + a).code, 0);
  ASSERT_EQ(run("gram --a F7 --b ED --n 8 --exact --out " + b).code, 0);
  ASSERT_EQ(run("double-paley --q 7 --conj --out " + c).code, 0);
  Outcome same = run("equiv --left " + a + " --right " + b);
  EXPECT_EQ(same.code, 0);
  EXPECT_EQ(same.out.substr(0, 16), "equivalent: yes\n");
  EXPECT_NE(same.out.find("phases: 1 1 1 1 1 1 1 1 i i i i i i i i"), std::string::npos);
  Outcome diff = run("equiv --left " + b + " --right " + c);
  EXPECT_EQ(diff.code, 1);
  EXPECT_EQ(diff.out, "equivalent: no\n");
  for (const auto& p : {a, b, c}) std::filesystem::remove(p);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("verify --a 24 --b 02 --n 6 --bogus").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("verify --a 2G --b 02 --n 6").code, 2);
  EXPECT_EQ(run("equiv --left /nonexistent --right /nonexistent").code, 2);
  EXPECT_EQ(run("paley --q 5").code, 2);
}

TEST(Cli, DiscoverSmall) {
  Outcome r = run("discover --n 2 --restarts 20");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, 2), "2\t");
}
