#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include "fixtures.hpp"

#ifndef DFTGSPN_CLI
#error "DFTGSPN_CLI must be defined"
#endif

namespace {

struct Outcome {
  int status = -1;
  std::string out;
};

Outcome run(const std::string& args) {
  const std::string cmd = std::string("\"") + DFTGSPN_CLI + "\" " + args + " 2>&1";
  Outcome r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string fx(const std::string& name) { return "\"" + fixtures::path(name) + "\""; }

bool contains(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

}  // namespace

TEST(Cli, ValidateAcceptsWellFormedTrees) {
  Outcome r = run("validate " + fx("bike"));
  EXPECT_EQ(r.status, 0) << r.out;
}

TEST(Cli, ValidateReportsPriorityCycle) {
  Outcome r = run("validate " + fx("f6_ill_formed"));
  EXPECT_EQ(r.status, 1) << r.out;
  EXPECT_TRUE(contains(r.out, "pi_Z < pi_B <= pi_D <= pi_Z")) << r.out;
}

TEST(Cli, MissingFileIsAnInputError) {
  EXPECT_EQ(run("validate /nonexistent/tree.dft").status, 2);
  EXPECT_EQ(run("translate /nonexistent/tree.dft").status, 2);
}

TEST(Cli, BadSyntaxIsAnInputError) {
  const std::string tmp = testing::TempDir() + "/broken.dft";
  FILE* f = std::fopen(tmp.c_str(), "w");
  ASSERT_TRUE(f);
  std::fputs("toplevel \"Z\";\n\"Z\" frob \"A\";\n", f);
  std::fclose(f);
  Outcome r = run("validate \"" + tmp + "\"");
  EXPECT_EQ(r.status, 2);
  EXPECT_TRUE(contains(r.out, ":2:5:")) << r.out;
}

TEST(Cli, TranslateSummaryAndStrictMode) {
  Outcome plain = run("translate " + fx("f1_or_before_pand"));
  ASSERT_EQ(plain.status, 0) << plain.out;
  EXPECT_TRUE(contains(plain.out, "immediate=10")) << plain.out;
  Outcome strict = run("translate --strict-1-bounded-unavail " + fx("f1_or_before_pand"));
  ASSERT_EQ(strict.status, 0) << strict.out;
  EXPECT_TRUE(contains(strict.out, "immediate=14")) << strict.out;
}

TEST(Cli, TranslateFormats) {
  Outcome pnml = run("translate --format pnml " + fx("bike"));
  ASSERT_EQ(pnml.status, 0);
  EXPECT_TRUE(contains(pnml.out, "<pnml")) << pnml.out.substr(0, 200);
  Outcome dot = run("translate --format dot " + fx("bike"));
  ASSERT_EQ(dot.status, 0);
  EXPECT_EQ(dot.out.rfind("digraph", 0), 0u);
  Outcome mg = run("translate --format marking-graph-dot " + fx("bike"));
  ASSERT_EQ(mg.status, 0);
  EXPECT_TRUE(contains(mg.out, "digraph"));
  EXPECT_NE(run("translate --format nope " + fx("bike")).status, 0);
}

TEST(Cli, TranslateWritesOutputFile) {
  const std::string out = testing::TempDir() + "/bike.pnml";
  std::remove(out.c_str());
  ASSERT_EQ(run("translate --format pnml -o \"" + out + "\" " + fx("bike")).status, 0);
  FILE* f = std::fopen(out.c_str(), "r");
  ASSERT_TRUE(f);
  std::fclose(f);
}

TEST(Cli, UnsupportedProfileNeedsForce) {
  EXPECT_EQ(run("translate --semantics gspn-orig " + fx("f3_shared_spare")).status, 1);
  Outcome forced = run("translate --semantics gspn-orig --force " + fx("f3_shared_spare"));
  EXPECT_EQ(forced.status, 0) << forced.out;
  EXPECT_TRUE(contains(forced.out, "[ignored]")) << forced.out;
}

TEST(Cli, AnalyzeRaceBounds) {
  Outcome r = run("analyze --semantics ioimc " + fx("f1_or_before_pand"));
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_TRUE(contains(r.out, "min=0.5")) << r.out;
  EXPECT_TRUE(contains(r.out, "max=1")) << r.out;
}

TEST(Cli, AnalyzeUnreliability) {
  Outcome r = run("analyze --semantics gspn-orig --time 50 " + fx("f1_or_before_pand"));
  ASSERT_EQ(r.status, 0) << r.out;
  const auto at = r.out.find("unreliability t=50 p=");
  ASSERT_NE(at, std::string::npos) << r.out;
  EXPECT_NEAR(std::stod(r.out.substr(at + 21)), 0.75, 1e-6) << r.out;
}

TEST(Cli, AnalyzeJson) {
  Outcome r = run("analyze --json " + fx("single_be"));
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_TRUE(contains(r.out, "\"states\"")) << r.out;
}

TEST(Cli, StateLimitExitCode) {
  EXPECT_EQ(run("analyze --state-limit 3 " + fx("bike")).status, 3);
}

TEST(Cli, DiffListsAllProfiles) {
  Outcome r = run("diff " + fx("f1_or_before_pand"));
  ASSERT_EQ(r.status, 0) << r.out;
  for (const char* p : {"monolithic-ctmc", "ioimc", "monolithic-ma", "gspn-orig", "gspn-new"})
    EXPECT_TRUE(contains(r.out, p)) << p;
}

TEST(Cli, UnknownSemanticsIsRejected) {
  EXPECT_NE(run("translate --semantics bogus " + fx("bike")).status, 0);
}
