#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "cli.hpp"

using sgdlp::cli::run_cli;

namespace {

  struct Run {
    int         code;
    std::string out;
    std::string err;
  };

  Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int                code = run_cli(args, out, err);
    return Run{code, out.str(), err.str()};
  }

  std::string sample(std::string const& name) {
    return std::string(SGDLP_SAMPLES_DIR) + "/" + name;
  }

}  // namespace

TEST(Cli, AnalyzeBruteAndOracle) {
  auto brute = run({"analyze", sample("zmul24_tail.sgdlp")});
  EXPECT_EQ(brute.code, 0);
  EXPECT_EQ(brute.out, "l=3 n=2 t=2 e=0110 r=0108 method=brute\n");

  auto oracle = run({"analyze", sample("zmul24_tail.sgdlp"), "--method", "oracle"});
  EXPECT_EQ(oracle.code, 0);
  EXPECT_EQ(oracle.out, "l=3 n=2 t=2 e=0110 r=0108 method=oracle\n");

  auto idem = run({"analyze", sample("idempotent.sgdlp")});
  EXPECT_EQ(idem.out, "l=1 n=1 t=2 e=03000000 r=03000000 method=brute\n");
}

TEST(Cli, SolveWorkedExampleTrace) {
  auto r = run({"solve", sample("zmul24_tail.sgdlp"), "--trace"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("k=1\nn=2\nt=2\nr=0108\ncase=tail\nb=1\nx_prime=1\nc=1\nk=1\n", 0), 0u)
      << r.out;
}

TEST(Cli, SolveMemberAndGroup) {
  EXPECT_EQ(run({"solve", sample("zmul12_member.sgdlp")}).out, "k=5\n");
  EXPECT_EQ(run({"solve", sample("zmul12_member.sgdlp"), "--minimal"}).out, "k=3\n");
  EXPECT_EQ(run({"solve", sample("zmul7_group.sgdlp"), "--minimal"}).out, "k=3\n");
  for (char const* oracle : {"brute", "bsgs", "rho"}) {
    EXPECT_EQ(run({"solve", sample("zmul24_tail.sgdlp"), "--oracle", oracle}).out, "k=1\n");
  }
}

TEST(Cli, SolveInfinite) {
  auto r = run({"solve-infinite", sample("intmat_fib.sgdlp")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "k=5\n");
  auto rejected = run({"solve", sample("intmat_fib.sgdlp")});
  EXPECT_EQ(rejected.code, 1);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"solve"}).code, 1);
  EXPECT_EQ(run({"solve", "/nonexistent/file"}).code, 1);
  EXPECT_EQ(run({"solve", sample("idempotent.sgdlp")}).code, 1);  // no h line
  EXPECT_EQ(run({"solve", sample("zmul24_tail.sgdlp"), "--oracle", "magic"}).code, 1);
}

TEST(Cli, PromiseViolationExitCode) {
  auto path = ::testing::TempDir() + "nonpower.sgdlp";
  {
    std::ofstream f(path);
    f << "platform zmul m=7\ng 0102\nh 0103\n";
  }
  auto r = run({"solve", path});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("promise violation"), std::string::npos);
}

TEST(Cli, SeedDeterminism) {
  auto a = run({"--seed", "42", "solve", sample("zmul7_group.sgdlp"), "--trace"});
  auto b = run({"--seed", "42", "solve", sample("zmul7_group.sgdlp"), "--trace"});
  EXPECT_EQ(a.out, b.out);
  auto c = run({"--seed", "5", "bench", "--min-bits", "8", "--max-bits", "10", "--jobs", "1",
                "--omit-timing"});
  auto d = run({"--seed", "5", "bench", "--min-bits", "8", "--max-bits", "10", "--jobs", "3",
                "--omit-timing"});
  EXPECT_EQ(c.code, 0);
  EXPECT_EQ(c.out, d.out);
  EXPECT_EQ(c.out.rfind("platform,size,l,n,products,oracle_calls,wall_ns\n", 0), 0u);
}

TEST(Cli, Selftest) {
  auto ok = run({"selftest", "--count", "10"});
  EXPECT_EQ(ok.code, 0) << ok.out;
  EXPECT_NE(ok.out.find("suite=cycle-group checked="), std::string::npos);
  EXPECT_NE(ok.out.find("suite=associativity checked=10 failed=0"), std::string::npos);

  auto broken = run({"selftest", "--count", "10", "--corrupt-multiplication"});
  EXPECT_EQ(broken.code, 3);
  EXPECT_EQ(broken.out.find("suite=associativity checked=10 failed=0"), std::string::npos);
}
