#include <gtest/gtest.h>

#include <json.hpp>

#include <sstream>

#include "exponent_lab/cli/commands.hpp"
#include "exponent_lab/cli/golden.hpp"

using namespace exponent_lab;
using namespace exponent_lab::cli;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string diag;
};

Result run_cfg(const RunConfig& cfg) {
  std::ostringstream out;
  std::ostringstream diag;
  Result r;
  r.code = run(cfg, out, diag);
  r.out = out.str();
  r.diag = diag.str();
  return r;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

RunConfig mu_cfg(ConstantId id, std::size_t n) {
  RunConfig cfg;
  cfg.command = Command::MuTable;
  cfg.constant = std::move(id);
  cfg.n_max = n;
  return cfg;
}

}  // namespace

TEST(CliParse, Words) {
  EXPECT_EQ(parse_command("mu-table"), Command::MuTable);
  EXPECT_EQ(parse_command("expand"), Command::Expand);
  EXPECT_THROW(parse_command("plot"), std::invalid_argument);
  EXPECT_EQ(parse_rounding("ceil"), Rounding::Ceiling);
  EXPECT_EQ(parse_rounding("half-even"), Rounding::HalfEven);
  EXPECT_THROW(parse_rounding("up"), std::invalid_argument);
  EXPECT_EQ(parse_kernel_type("fejer"), KernelType::Fejer);
  EXPECT_EQ(parse_format("markdown"), Format::Markdown);
  EXPECT_THROW(parse_format("xml"), std::invalid_argument);
}

TEST(CliMuTable, CsvShape) {
  const Result r = run_cfg(mu_cfg(Zeta3{}, 5));
  EXPECT_EQ(r.code, kExitOk);
  const auto lines = lines_of(r.out);
  ASSERT_EQ(lines.size(), 6u);
  EXPECT_EQ(lines[0], "n,p,q,mu");
  EXPECT_EQ(lines[4], "4,113,94,2.103378");
}

TEST(CliMuTable, ExactHitNotice) {
  const Result r = run_cfg(mu_cfg(make_rational(10, 7), 10));
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(lines_of(r.out).size(), 4u);
  EXPECT_NE(r.diag.find("exact hit at row 3"), std::string::npos);
  EXPECT_EQ(lines_of(r.out).back(), "3,10,7,");
}

TEST(CliMuTable, GoldenPiCubedAndZeta3) {
  for (const ConstantId& id : std::vector<ConstantId>{PiPow{3}, Zeta3{}}) {
    RunConfig cfg = mu_cfg(id, 30);
    cfg.check_golden = true;
    const Result r = run_cfg(cfg);
    EXPECT_EQ(r.code, kExitOk) << r.diag;
  }
}

TEST(CliMuTable, GoldenPiSquaredDependsOnRounding) {
  RunConfig cfg = mu_cfg(PiPow{2}, 30);
  cfg.check_golden = true;
  const Result even = run_cfg(cfg);
  EXPECT_EQ(even.code, kExitMismatch);
  EXPECT_NE(even.diag.find("row 5"), std::string::npos);
  cfg.rounding = Rounding::Ceiling;
  const Result ceil = run_cfg(cfg);
  EXPECT_EQ(ceil.code, kExitOk) << ceil.diag;
}

TEST(CliMuTable, MarkdownCarriesHistory) {
  RunConfig cfg = mu_cfg(PiPow{2}, 3);
  cfg.format = Format::Markdown;
  const Result r = run_cfg(cfg);
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("| n | p | q | mu |"), std::string::npos);
  EXPECT_NE(r.out.find("11.85078"), std::string::npos);
}

TEST(CliMuTable, DigitsBelowMinimumIsUsageError) {
  RunConfig cfg = mu_cfg(PiPow{2}, 3);
  cfg.target_digits = 10;
  EXPECT_EQ(run_cfg(cfg).code, kExitUsage);
}

TEST(CliMuTable, PrecisionCeiling) {
  RunConfig cfg = mu_cfg(Champernowne{10}, 30);
  cfg.policy.max_digits = 60;
  const Result r = run_cfg(cfg);
  EXPECT_EQ(r.code, kExitPrecision);
  EXPECT_TRUE(r.out.empty());
}

TEST(CliVerify, JsonRows) {
  RunConfig cfg;
  cfg.command = Command::Verify;
  cfg.k = 2;
  cfg.n_max = 10;
  cfg.format = Format::Json;
  const Result r = run_cfg(cfg);
  EXPECT_EQ(r.code, kExitOk) << r.diag;
  int lemma_rows = 0;
  int kernel_rows = 0;
  for (const std::string& line : lines_of(r.out)) {
    const auto j = nlohmann::json::parse(line);
    if (j.at("record") == "lemma") {
      ++lemma_rows;
      EXPECT_EQ(j.at("w_parity"), "odd");
      EXPECT_EQ(j.at("k"), 2);
    } else {
      ++kernel_rows;
    }
  }
  EXPECT_EQ(lemma_rows, 10);
  EXPECT_GT(kernel_rows, 0);
}

TEST(CliVerify, CsvHeader) {
  RunConfig cfg;
  cfg.command = Command::Verify;
  cfg.k = 3;
  cfg.n_max = 6;
  cfg.format = Format::Csv;
  const Result r = run_cfg(cfg);
  EXPECT_EQ(r.code, kExitOk);
  const auto lines = lines_of(r.out);
  ASSERT_EQ(lines.size(), 7u);
  EXPECT_EQ(lines[0], "k,n,q,v2,w_parity,s_minus,s_plus,bound_residual,recip_ratio_qn1");
}

TEST(CliVerify, DegenerateRowIsFlagged) {
  RunConfig cfg;
  cfg.command = Command::Verify;
  cfg.k = 1;
  cfg.n_max = 1;
  cfg.format = Format::Json;
  const Result r = run_cfg(cfg);
  EXPECT_EQ(r.code, kExitOk);
  const auto j = nlohmann::json::parse(lines_of(r.out).front());
  EXPECT_EQ(j.at("degenerate"), true);
  EXPECT_NE(r.diag.find("degenerate"), std::string::npos);
}

TEST(CliKernel, GridAndSinglePoint) {
  RunConfig cfg;
  cfg.command = Command::Kernel;
  cfg.kernel_type = KernelType::Dirichlet;
  cfg.x = 10;
  cfg.grid = 100;
  const Result grid = run_cfg(cfg);
  EXPECT_EQ(grid.code, kExitOk);
  EXPECT_EQ(lines_of(grid.out).size(), 101u);

  cfg.kernel_type = KernelType::Fejer;
  cfg.x = 0;
  cfg.z = 1.0;
  cfg.format = Format::Json;
  const Result one = run_cfg(cfg);
  EXPECT_EQ(one.code, kExitOk);
  const auto j = nlohmann::json::parse(lines_of(one.out).front());
  EXPECT_EQ(j.at("agrees"), true);
  EXPECT_DOUBLE_EQ(j.at("closed").get<double>(), 1.0);
  EXPECT_DOUBLE_EQ(j.at("summed").get<double>(), 1.0);
}

TEST(CliKernel, HalfScaledColumn) {
  RunConfig cfg;
  cfg.command = Command::Kernel;
  cfg.kernel_type = KernelType::Fejer;
  cfg.x = 10;
  cfg.grid = 5;
  cfg.half_scaled = true;
  cfg.format = Format::Json;
  const Result r = run_cfg(cfg);
  EXPECT_EQ(r.code, kExitOk);
  for (const std::string& line : lines_of(r.out)) {
    const auto j = nlohmann::json::parse(line);
    EXPECT_NEAR(j.at("summed_over_half").get<double>(), 2.0, 1e-12);
  }
  EXPECT_NE(r.diag.find("1/2"), std::string::npos);
}

TEST(CliExpand, GoldenPrefixes) {
  RunConfig cfg;
  cfg.command = Command::Expand;
  cfg.constant = PiPow{2};
  cfg.n_max = 27;
  cfg.check_golden = true;
  EXPECT_EQ(run_cfg(cfg).code, kExitOk);
  cfg.constant = PiPow{3};
  cfg.n_max = 21;
  EXPECT_EQ(run_cfg(cfg).code, kExitOk);
}

TEST(CliGolden, FixtureShapes) {
  EXPECT_EQ(golden_mu_for(PiPow{2})->rows.size(), 30u);
  EXPECT_EQ(golden_mu_for(PiPow{3})->rows.size(), 30u);
  EXPECT_EQ(golden_mu_for(Zeta3{})->rows.size(), 30u);
  EXPECT_EQ(golden_cf_for(PiPow{2})->terms.size(), 27u);
  EXPECT_EQ(golden_cf_for(PiPow{3})->terms.size(), 21u);
  EXPECT_EQ(golden_history_for(PiPow{2}).size(), 3u);
  EXPECT_EQ(golden_history_for(Zeta3{}).size(), 3u);
  EXPECT_EQ(golden_mu_pi2()[4].mu, "3.236253");
  EXPECT_EQ(golden_mu_pi2()[0].mu, "");
  EXPECT_FALSE(golden_mu_for(Pi{}).has_value());
}

TEST(CliDeterminism, SameConfigSameBytes) {
  RunConfig cfg;
  cfg.command = Command::Verify;
  cfg.k = 3;
  cfg.n_max = 5;
  cfg.format = Format::Json;
  EXPECT_EQ(run_cfg(cfg).out, run_cfg(cfg).out);
}
