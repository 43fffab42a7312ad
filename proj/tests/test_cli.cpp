#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ncguard/cli/acceptance.hpp"
#include "ncguard/cli/experiment.hpp"
#include "ncguard/cli/vectors.hpp"
#include "ncguard/errors.hpp"

using namespace ncguard;
using namespace ncguard::cli;

namespace {

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

std::string sweep_text(const ExperimentConfig& c) {
  std::ostringstream os;
  run_sweep(c, os);
  return os.str();
}

}  // namespace

TEST(Sweep, HeaderAndAnalyticOnlyRows) {
  ExperimentConfig c;
  c.p = {0.0, 0.5, 1.0};
  const auto rows = parse_csv(sweep_text(c));
  ASSERT_EQ(rows.size(), 10U);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"scheme", "p", "n", "G", "h_p", "h_g", "analytic_ratio",
                                               "empirical_ratio", "stderr", "trials", "seed"}));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    ASSERT_EQ(rows[i].size(), 11U);
    EXPECT_EQ(rows[i][7], "");
    EXPECT_EQ(rows[i][8], "");
    const double r = std::stod(rows[i][6]);
    EXPECT_GE(r, 0.0);
    EXPECT_LE(r, 1.0);
  }
  EXPECT_EQ(rows[1][0], "error-correction");
  EXPECT_EQ(rows[4][0], "packet");
  EXPECT_EQ(rows[4][6], "0.06");
  EXPECT_EQ(rows[7][0], "generation");
  EXPECT_EQ(rows[7][6], "0.02");
}

TEST(Sweep, SixSignificantDigits) {
  EXPECT_EQ(format_number(0.1234567), "0.123457");
  EXPECT_EQ(format_number(1000.0), "1000");
  EXPECT_EQ(format_number(-0.0), "0");
}

TEST(Sweep, EmpiricalRowsWithinTolerance) {
  ExperimentConfig c;
  c.p = {0.0, 0.02, 0.3};
  c.schemes = {Scheme::error_correction, Scheme::packet};
  c.trials = 200;
  const auto rows = parse_csv(sweep_text(c));
  ASSERT_EQ(rows.size(), 7U);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i][9], "200");
    EXPECT_TRUE(within_tolerance(std::stod(rows[i][7]), std::stod(rows[i][6]), std::stod(rows[i][8])))
        << rows[i][0] << ' ' << rows[i][1];
  }
}

TEST(Sweep, ByteIdenticalAcrossRunsAndThreads) {
  ExperimentConfig c;
  c.p = {0.0, 0.1, 0.2, 0.4};
  c.G = {5, 10};
  c.trials = 20;
  c.threads = 1;
  const std::string a = sweep_text(c);
  c.threads = 3;
  EXPECT_EQ(a, sweep_text(c));
  EXPECT_EQ(a, sweep_text(c));
}

TEST(Sweep, SortedBySchemePThenG) {
  ExperimentConfig c;
  c.p = {0.5, 0.1};
  c.G = {20, 5};
  const auto rows = parse_csv(sweep_text(c));
  // One row per per-packet scheme and p, one per generation (p, G).
  ASSERT_EQ(rows.size(), 1U + 2U + 2U + 4U);
  EXPECT_EQ(rows[5][0], "generation");
  EXPECT_EQ(rows[5][1], "0.1");
  EXPECT_EQ(rows[5][3], "5");
  EXPECT_EQ(rows[6][3], "20");
  EXPECT_EQ(rows[7][1], "0.5");
}

TEST(Sweep, WritesFileAndRejectsBadPath) {
  ExperimentConfig c;
  c.p = {0.1};
  c.out = testing::TempDir() + "ncguard_sweep.csv";
  std::ostringstream unused;
  run_sweep(c, unused);
  EXPECT_TRUE(unused.str().empty());
  std::ifstream in(c.out);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, kCsvHeader);
  std::remove(c.out.c_str());
  c.out = "/nonexistent-dir/x.csv";
  EXPECT_THROW(run_sweep(c, unused), UsageError);
}

TEST(Sweep, InvalidOverrides) {
  ExperimentConfig c;
  c.p = {1.5};
  EXPECT_THROW(run_points(c), UsageError);
  c = {};
  c.G = {0};
  EXPECT_THROW(run_points(c), UsageError);
  c = {};
  c.hp_frac = 2.0;
  EXPECT_THROW(run_points(c), UsageError);
  c = {};
  c.logq = 17;
  EXPECT_THROW(run_points(c), UsageError);
}

TEST(Figures, Figure3Defaults) {
  ExperimentConfig c;
  c.G = {1, 5, 10, 20, 50};
  const auto points = run_points(figure3_config(c));
  EXPECT_EQ(points.size(), 5U * 101U);
  for (const GridPoint& gp : points) {
    EXPECT_EQ(gp.analytic.scheme, Scheme::generation);
    EXPECT_NEAR(gp.analytic.params.h_g, 0.02 * 1000 * static_cast<double>(gp.analytic.params.G), 1e-9);
    EXPECT_EQ(gp.analytic.params.n, 1000.0);
  }
}

TEST(Figures, Figure45Defaults) {
  const auto cfg = figure45_config({});
  EXPECT_EQ(cfg.p.size(), 101U + 100U - 10U);
  EXPECT_EQ(cfg.p.front(), 0.0);
  EXPECT_EQ(cfg.p.back(), 1.0);
  EXPECT_TRUE(std::is_sorted(cfg.p.begin(), cfg.p.end()));
  EXPECT_NE(std::find(cfg.p.begin(), cfg.p.end(), 0.003), cfg.p.end());
  const auto points = run_points(cfg);
  EXPECT_EQ(points.size(), 3U * cfg.p.size());
}

TEST(Accounting, Defaults) {
  std::ostringstream os;
  print_accounting({}, os);
  const std::string text = os.str();
  EXPECT_NE(text.find("h_p/n = 6%"), std::string::npos) << text;
  EXPECT_NE(text.find("h_g/(nG) = 2%"), std::string::npos) << text;
  EXPECT_NE(text.find("not part of h_p"), std::string::npos) << text;
}

TEST(Accounting, OnePercentHash) {
  ExperimentConfig c;
  c.k = 100;
  c.logq = 8;
  std::ostringstream os;
  print_accounting(c, os);
  EXPECT_NE(os.str().find("1/(k+1) = 0.9901%"), std::string::npos) << os.str();
}

TEST(Accounting, ZeroGenerationRejected) {
  ExperimentConfig c;
  c.G = {0};
  std::ostringstream os;
  EXPECT_THROW(print_accounting(c, os), UsageError);
}

TEST(Validate, FilterRunsOneCriterion) {
  ValidateOptions o;
  o.criterion = "peak";
  std::ostringstream os;
  EXPECT_EQ(run_validate(o, os), 0);
  const std::string text = os.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1);
  EXPECT_EQ(text.rfind("PASS 2 peak", 0), 0U) << text;
}

TEST(Validate, TamperedFormulaFailsCrossover) {
  ValidateOptions o;
  o.criterion = "crossover";
  std::ostringstream os;
  EXPECT_EQ(run_validate(o, os), 0);
  o.hooks = AnalyticHooks::tampered("packet");
  std::ostringstream bad;
  EXPECT_EQ(run_validate(o, bad), 1);
  EXPECT_EQ(bad.str().rfind("FAIL 1 crossover", 0), 0U);
  o.hooks = AnalyticHooks::tampered("crossover");
  EXPECT_EQ(run_validate(o, bad), 1);
  o.criterion = "peak";
  o.hooks = AnalyticHooks::tampered("peak");
  EXPECT_EQ(run_validate(o, bad), 1);
  o.criterion = "asymptote";
  o.hooks = AnalyticHooks::tampered("generation");
  EXPECT_EQ(run_validate(o, bad), 1);
}

TEST(Validate, UnknownCriterion) {
  ValidateOptions o;
  o.criterion = "everything";
  std::ostringstream os;
  EXPECT_THROW(run_validate(o, os), UsageError);
  EXPECT_THROW(AnalyticHooks::tampered("nothing"), UsageError);
  EXPECT_EQ(criterion_names().size(), 9U);
}

TEST(Vectors, RoundTrip) {
  const auto doc = make_hash_vectors(8, 50, 40, 3);
  EXPECT_EQ(doc.at("vectors").size(), 43U);
  const auto result = check_hash_vectors(nlohmann::json::parse(doc.dump()));
  EXPECT_EQ(result.passed, 43U);
  EXPECT_EQ(result.failed, 0U);
  std::size_t rejects = 0;
  for (const auto& v : doc.at("vectors")) rejects += v.at("expect") == "reject";
  EXPECT_EQ(rejects, 20U);
}

TEST(Vectors, KnownEntry) {
  nlohmann::json doc = {{"field", {{"kind", "binary"}, {"width", 3}, {"polynomial", 0xB}}},
                        {"k", 3},
                        {"vectors",
                         {{{"payload", {1, 1, 1}}, {"hash", {1}}, {"expect", "accept"}},
                          {{"payload", {1, 1, 1}}, {"hash", {0}}, {"expect", "reject"}},
                          {{"payload", {0, 0, 0}}, {"hash", {1}}, {"expect", "accept"}}}}};
  const auto result = check_hash_vectors(doc);
  EXPECT_EQ(result.passed, 2U);
  EXPECT_EQ(result.failed, 1U);
  EXPECT_EQ(result.first_failure, "vector 2 expected accept");
}

TEST(Vectors, Malformed) {
  EXPECT_THROW(check_hash_vectors(nlohmann::json{{"k", 3}}), UsageError);
  nlohmann::json doc = {{"field", {{"kind", "binary"}, {"width", 8}, {"polynomial", 0x11D}}}, {"k", 3}, {"vectors", nlohmann::json::array()}};
  EXPECT_THROW(check_hash_vectors(doc), UsageError);
  doc["field"]["polynomial"] = 0x11B;
  doc["vectors"] = {{{"payload", {300}}, {"hash", {0}}, {"expect", "accept"}}};
  EXPECT_THROW(check_hash_vectors(doc), UsageError);
}

TEST(Fig2Summary, CountsAndConservation) {
  const auto clean = run_fig2(8, {}, 20, 1);
  EXPECT_EQ(clean.injected, 0U);
  EXPECT_EQ(clean.f_complete, 20U);
  EXPECT_EQ(clean.f_clean, 20U);
  const auto dirty = run_fig2(8, {{"A->B", 0.2}}, 200, 1);
  EXPECT_GT(dirty.injected, 0U);
  EXPECT_EQ(dirty.flagged_trials.at("C"), 0U);
  EXPECT_GE(dirty.flagged_trials.at("B"), dirty.injected * 98 / 100);
  EXPECT_EQ(dirty.f_clean, 200U);
  std::ostringstream os;
  print_fig2(dirty, os);
  EXPECT_NE(os.str().find("node,flagged_trials"), std::string::npos);
}
