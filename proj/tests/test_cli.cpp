#include "sitlab/sit_io.hpp"
#include "support/published.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) {
    q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  }
  return q + "'";
}

Run run(const std::string& args, const std::string& input = "") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto err_path = dir / ("sitlab_cli_err_" + std::to_string(::getpid()));
  const auto in_path = dir / ("sitlab_cli_in_" + std::to_string(::getpid()));
  std::ofstream(in_path) << input;
  const std::string cmd = std::string(SITLAB_BIN) + " " + args + " <" + quote(in_path.string()) + " 2>" +
                          quote(err_path.string());
  Run r{0, "", ""};
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) {
    r.code = -1;
    return r;
  }
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) {
    r.out.append(buf, got);
  }
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream e(err_path);
  r.err.assign(std::istreambuf_iterator<char>(e), {});
  std::filesystem::remove(err_path);
  std::filesystem::remove(in_path);
  return r;
}

bool has(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST(Cli, Simples) {
  const auto r = run("simples --max 11");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r.out, "n,s_n\n"));
  EXPECT_TRUE(has(r.out, "\n11,3454434\n"));
  const auto list = run("simples --list 4");
  EXPECT_TRUE(has(list.out, "2 4 1 3"));
  EXPECT_TRUE(has(list.out, "3 1 4 2"));
  const auto js = run("simples --max 6 --format json");
  EXPECT_EQ(nlohmann::json::parse(js.out).dump().find("\"46\"") != std::string::npos, true);
}

TEST(Cli, Count) {
  const auto r = run("count --k 8 --max 10");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r.out, ",2711062\n"));
  const auto sch = run("count --k schroeder --max 7");
  EXPECT_TRUE(has(sch.out, "7,") && has(sch.out, ",1806\n"));
}

TEST(Cli, Constants) {
  const auto r = run("constants --k-range 4..5 --eps 1e-12");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r.out, "0.2258458016"));
  EXPECT_TRUE(has(r.out, "0.1454726242"));
  EXPECT_TRUE(has(r.out, "0.2043553556"));
}

TEST(Cli, DecomposeComposeRoundTrip) {
  const auto d = run("decompose " + quote(published::kRunningExample));
  ASSERT_EQ(d.code, 0);
  const auto c = run("compose -", d.out);
  ASSERT_EQ(c.code, 0);
  EXPECT_EQ(c.out, published::kRunningExample + "\n");
  const auto again = run("decompose -", c.out);
  EXPECT_EQ(nlohmann::json::parse(again.out), nlohmann::json::parse(d.out));
  EXPECT_EQ(again.out, d.out);
  const auto dot = run("decompose '2 4 1 3' --format dot");
  EXPECT_TRUE(has(dot.out, "digraph"));
}

TEST(Cli, ErrorsAndExitCodes) {
  const auto bad = run("compose '{\"label\":\"plus\",\"children\":[{\"label\":\"plus\",\"children\":[{\"label\":\"leaf\"},{\"label\":\"leaf\"}]},{\"label\":\"leaf\"}]}'");
  EXPECT_EQ(bad.code, 1);
  EXPECT_TRUE(has(bad.err, "linear adjacency"));
  EXPECT_EQ(run("decompose '1 1 2'").code, 1);
  EXPECT_EQ(run("no-such-command").code, 2);
  EXPECT_EQ(run("constants --k-range 9..4").code, 2);
  EXPECT_EQ(run("count --k banana").code, 2);
  EXPECT_EQ(run("simples --max 0").code, 2);
  const auto full = run("constants --k-range 4..4 --eps 1e-3 --format json");
  EXPECT_EQ(full.code, 0);
}

TEST(Cli, StatsExact) {
  const auto r = run("stats-exact --param internal --k full --n 3");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r.out, "3,6,10,"));
  const auto u = run("stats-exact --param arity --kappa 2 --k 5 --n 6 --level P --semantics lambda");
  EXPECT_NE(u.code, 0);
}

TEST(Cli, SampleIsSeeded) {
  const auto a = run("sample --k 6 --size 60 --eps 0.2 --count 3 --seed 42");
  const auto b = run("sample --k 6 --size 60 --eps 0.2 --count 3 --seed 42");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_TRUE(has(a.err, "seed=42"));
  const auto unseeded = run("sample --k 6 --size 20 --eps 0.3");
  EXPECT_TRUE(has(unseeded.err, "seed="));
  std::size_t lines = 0;
  for (char ch : a.out) {
    lines += ch == '\n' ? 1 : 0;
  }
  EXPECT_EQ(lines, 3u);
}

TEST(Cli, SampleStats) {
  const auto r = run("sample-stats --k 7 --size 200 --eps 0.1 --count 20 --seed 1");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r.out, "parameter,basis,empirical,theoretical,relative_error"));
}

TEST(Cli, VerifyAndBounds) {
  const auto v = run("verify --n-max 5");
  EXPECT_EQ(v.code, 0);
  EXPECT_FALSE(has(v.out, "FAIL"));
  const auto b = run("bounds --k-range 5..6");
  EXPECT_EQ(b.code, 0);
  // rows for k = 4 lack some checks; every line still has the header's width
  const auto wide = run("bounds --k-range 4..6");
  std::istringstream lines(wide.out);
  std::string line;
  std::vector<std::size_t> widths;
  while (std::getline(lines, line)) {
    widths.push_back(static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')));
  }
  ASSERT_EQ(widths.size(), 4u);
  for (std::size_t w : widths) {
    EXPECT_EQ(w, widths.front());
  }
  const auto l = run("limit-check --lambda binary --k-max 5");
  EXPECT_EQ(l.code, 0);
  EXPECT_TRUE(has(l.out, "0.5000000000"));
  const auto st = run("stirling --n-range 10..10");
  EXPECT_EQ(st.code, 0);
  EXPECT_TRUE(has(st.out, "3628800"));
}

TEST(Cli, ConfigFile) {
  const auto path = std::filesystem::temp_directory_path() / "sitlab_cli_config.ini";
  std::ofstream(path) << "[simples]\nmax=5\n";
  const auto r = run("--config " + quote(path.string()) + " simples");
  const auto over = run("--config " + quote(path.string()) + " simples --max 6");
  std::filesystem::remove(path);
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r.out, "\n5,6\n"));
  EXPECT_FALSE(has(r.out, "\n6,46\n"));
  EXPECT_TRUE(has(over.out, "\n6,46\n"));
}
