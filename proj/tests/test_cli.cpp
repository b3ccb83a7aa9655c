#include <filesystem>
#include <string>

#include <doctest.h>

#include "test_support.hpp"

using namespace lhsba::test;

namespace {

std::string cli() { return LHSBA_CLI_PATH; }

std::string quiet(const std::string& cmd) { return cmd + " > /dev/null 2>&1"; }

}  // namespace

TEST_CASE("cli attack writes a trace") {
  const auto dir = scratch_dir("cli_attack");
  const auto trace = dir / "trace.csv";
  const auto point = dir / "adv.txt";
  const int code = run_command(quiet(cli() + " attack --oracle hypersphere:r=0.5,m=20 --budget 2000 --seed 4 -o " +
                                     trace.string() + " --output-point " + point.string()));
  CHECK(code == 0);
  const std::string text = read_file(trace);
  CHECK(text.rfind("t,M_t,delta_t,epsilon_t,queries,distortion,agree_count,step_retries,binsearch_steps\n", 0) == 0);
  CHECK(text.find("# status=BudgetExhausted") != std::string::npos);
  CHECK(std::filesystem::exists(point));
}

TEST_CASE("cli exit codes") {
  CHECK(run_command(quiet(cli() + " bench /nonexistent/missing.cfg")) == 1);
  CHECK(run_command(quiet(cli() + " attack --oracle cube:m=2")) == 1);
  CHECK(run_command(quiet(cli() + " attack")) == 1);
  const auto dir = scratch_dir("cli_init");
  CHECK(run_command(quiet(cli() + " attack --oracle hypersphere:r=5,m=4 --max-init-tries 3 -o " +
                          (dir / "t.csv").string())) == 2);
}

TEST_CASE("cli reruns are byte-identical") {
  const auto dir = scratch_dir("cli_rerun");
  const std::string args = " attack --oracle halfspace:m=10,b=-5 --fill 0.3 -T 12 --seed 9 --sampler srs -o ";
  REQUIRE(run_command(quiet(cli() + args + (dir / "a.csv").string())) == 0);
  REQUIRE(run_command(quiet(cli() + args + (dir / "b.csv").string())) == 0);
  CHECK(read_file(dir / "a.csv") == read_file(dir / "b.csv"));
  CHECK_FALSE(read_file(dir / "a.csv").empty());
}

TEST_CASE("cli external oracle reproduces the in-process trace") {
  const auto dir = scratch_dir("cli_external");
  const std::string common = " --fill 0.3 -T 12 --seed 21 -o ";
  REQUIRE(run_command(quiet(cli() + " attack --oracle halfspace:m=10,b=-5" + common + (dir / "local.csv").string())) ==
          0);
  const std::string ext = "'external:m=10,cmd=" + cli() + " oracle-serve halfspace:m=10,b=-5'";
  REQUIRE(run_command(quiet(cli() + " attack --oracle " + ext + common + (dir / "remote.csv").string())) == 0);
  CHECK(read_file(dir / "local.csv") == read_file(dir / "remote.csv"));
}

TEST_CASE("cli sample prints a batch") {
  const auto dir = scratch_dir("cli_sample");
  const auto out = dir / "rows.txt";
  REQUIRE(run_command(quiet(cli() + " sample -M 8 -d 3 --seed 2 --normalize -o " + out.string())) == 0);
  std::stringstream in(read_file(out));
  int rows = 0;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line[0] != '#') ++rows;
  }
  CHECK(rows == 8);
}

TEST_CASE("cli bench runs a config") {
  const auto dir = scratch_dir("cli_bench");
  {
    std::ofstream cfg(dir / "exp.cfg");
    cfg << "[experiment]\nrepetitions = 2\nbudgets = 100 300\noutput_dir = out\n\n"
           "[oracle ball]\nkind = hypersphere\nm = 6\nradius = 0.3\n\n"
           "[points]\ngenerate = fill\ncount = 2\ndim = 6\n\n"
           "[attack lhs]\nsampler = lhs\nM0 = 10\nT = 8\n\n"
           "[attack srs]\nsampler = srs\nM0 = 10\nT = 8\n";
  }
  REQUIRE(run_command(quiet(cli() + " bench " + (dir / "exp.cfg").string())) == 0);
  CHECK(std::filesystem::exists(dir / "out" / "summary.csv"));
  CHECK(std::filesystem::exists(dir / "out" / "runs.csv"));
}
