#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include "json.hpp"
#include "qf2/cli.hpp"
#include "qf2/forms.hpp"
#include "qf2/parse.hpp"
#include "qf2/witt.hpp"

using namespace qf2;
using json = nlohmann::json;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Run r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

json run_json(std::vector<std::string> args) {
  args.insert(args.begin(), {"--format", "json", "--no-meta"});
  const auto r = run(args);
  EXPECT_LE(r.code, 1) << r.err;
  return json::parse(r.out);
}

}  // namespace

TEST(Cli, IsotropyOfTameTwoFold) {
  const auto r = run({"witt", "isotropy", "--field", "F2((t))", "<<t,1]]"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_EQ(first_line(r.out), "Anisotropic");
  EXPECT_NE(r.out.find("certificate_verified: true"), std::string::npos);
}

TEST(Cli, IsotropicWitnessIsReported) {
  const auto j = run_json({"isotropy", "[1,t] + t*[1,1] + [1,1] + t*[1,t]"});
  ASSERT_EQ(j["verdict"], "Isotropic");
  EXPECT_TRUE(j["witness"]["verified"].get<bool>());
}

TEST(Cli, SymlenBound) {
  const auto r = run({"symlen", "bound", "--u", "8,8", "--n", "3"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_EQ(first_line(r.out), "3");
  EXPECT_EQ(first_line(run({"symlen", "bound", "--u", "8", "--n", "2"}).out), "3");
  EXPECT_EQ(first_line(run({"symlen", "prank", "--m", "4", "--d", "3"}).out), "6");
}

TEST(Cli, VerifySuiteSucceeds) {
  const auto r = run({"verify", "theoremu", "--field", "F2((t))", "--samples", "100", "--seed", "7"});
  EXPECT_EQ(r.code, cli::kOk) << r.out << r.err;
  EXPECT_EQ(first_line(r.out), "verified");
}

TEST(Cli, JsonIsDeterministicWithoutMeta) {
  const std::vector<std::string> args{"--format", "json",    "--no-meta", "--field", "F2((t1))((t2))",
                                      "verify",   "lift",    "--samples", "10",      "--seed", "3"};
  const auto a = run(args), b = run(args);
  EXPECT_EQ(a.code, cli::kOk);
  EXPECT_EQ(a.out, b.out);
  const auto j = json::parse(a.out);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["provenance"]["generator"], "mt19937_64");
  EXPECT_EQ(j["provenance"]["seed"], 3);
  EXPECT_EQ(j["provenance"]["precision"], 16);
  EXPECT_FALSE(j["provenance"].contains("timestamp"));
  EXPECT_FALSE(j["provenance"].contains("elapsed_ms"));
}

TEST(Cli, MetaAddsTimestamp) {
  const auto r = run({"--format", "json", "symlen", "bound", "--u", "8", "--n", "2"});
  const auto j = json::parse(r.out);
  EXPECT_TRUE(j["provenance"].contains("timestamp"));
  EXPECT_TRUE(j["provenance"].contains("elapsed_ms"));
}

TEST(Cli, ParseErrorPointsAtColumn) {
  const auto r = run({"isotropy", "[1,t] + [1,"});
  EXPECT_EQ(r.code, cli::kUsage);
  EXPECT_NE(r.err.find("cannot parse form"), std::string::npos);
  EXPECT_NE(r.err.find("column 12"), std::string::npos);
  EXPECT_NE(r.err.find("\n  " + std::string(11, ' ') + "^"), std::string::npos) << r.err;
}

TEST(Cli, UsageErrors) {
  const auto unknown = run({"frobnicate", "[1,"});
  EXPECT_EQ(unknown.code, cli::kUsage);
  EXPECT_NE(unknown.err.find("unknown verb 'frobnicate'"), std::string::npos) << unknown.err;
  EXPECT_EQ(run({}).code, cli::kUsage);
  EXPECT_EQ(run({"--field", "F3", "isotropy", "[1,1]"}).code, cli::kUsage);
  EXPECT_EQ(run({"--format", "xml", "isotropy", "[1,1]"}).code, cli::kUsage);
  EXPECT_EQ(run({"verify", "nosuchsuite"}).code, cli::kUsage);
  EXPECT_EQ(run({"symlen", "bound", "--u", "8,x", "--n", "3"}).code, cli::kUsage);
}

TEST(Cli, BudgetFromEnvironment) {
  ::setenv("QF2_BUDGET", "1234", 1);
  const auto j = run_json({"symlen", "bound", "--u", "8", "--n", "2"});
  EXPECT_EQ(j["provenance"]["budget"], 1234);
  ::setenv("QF2_BUDGET", "junk", 1);
  EXPECT_EQ(run({"symlen", "bound", "--u", "8", "--n", "2"}).code, cli::kUsage);
  ::unsetenv("QF2_BUDGET");
}

TEST(Cli, PrintedExpressionsReparse) {
  const auto field = parse::field("F2((t1))((t2))");
  const auto j = run_json({"--field", "F2((t1))((t2))", "witt", "decompose", "t1*[1,t2] + [t1, t1^-1] + <t2, 1+t1>q"});
  const auto input = parse::form(j["input"]["form"].get<std::string>(), field);
  const auto kernel = parse::form(j["verdict"]["kernel"].get<std::string>(), field);
  EXPECT_EQ(format_form(input, field.variable_names), j["input"]["form"].get<std::string>());
  EXPECT_EQ(kernel.dim(), j["evidence"]["kernel_dim"].get<int>());
  EXPECT_EQ(witt_index(input), j["verdict"]["index"].get<int>());

  const auto p = run_json({"--field", "F2((t1))((t2))", "pfister", "<<t1,t2,1]]"});
  const auto expansion = parse::form(p["evidence"]["expansion"].get<std::string>(), field);
  EXPECT_EQ(expansion.dim(), 8);
  const auto sym = parse::symbol_sum(p["evidence"]["symbol"].get<std::string>(), field);
  EXPECT_EQ(sym.degree, 3);
}

TEST(Cli, LinkageWitnessVerifies) {
  const auto j = run_json({"linkage", "max", "<<t,1]]", "<<t,t]]"});
  EXPECT_EQ(j["verdict"], 1);
  EXPECT_TRUE(j["evidence"]["power_of_two"].get<bool>());
  EXPECT_TRUE(j["witness"]["verified"].get<bool>());
  const auto i = run_json({"linkage", "check", "--k", "1", "--inseparable", "<<t,1]]", "<<t,t]]"});
  EXPECT_EQ(i["verdict"], "linked");
  EXPECT_TRUE(i["witness"]["verified"].get<bool>());
}

TEST(Cli, UInvariantEstimate) {
  const auto j = run_json({"u-invariant", "--n", "2", "--samples", "20"});
  EXPECT_EQ(j["verdict"], 4);
  EXPECT_EQ(j["witness"]["pfister"], "<<t,1]]");
  EXPECT_EQ(j["evidence"]["anisotropic"], 0);
}

TEST(Cli, SymbolTriviality) {
  EXPECT_EQ(first_line(run({"symbol", "t d(t)/t"}).out), "trivial");
  EXPECT_EQ(first_line(run({"symbol", "1 d(t)/t"}).out), "nontrivial");
}

TEST(Cli, PrecisionOption) {
  const auto j = run_json({"--precision", "6", "invariants", "[1,t^-1] + t*[1,t^-3]"});
  EXPECT_EQ(j["provenance"]["precision"], 6);
  EXPECT_EQ(j["verdict"]["arf_trivial"], false);
  EXPECT_EQ(run({"--precision", "0", "invariants", "[1,t]"}).code, cli::kUsage);
}
