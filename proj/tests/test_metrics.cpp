// Copyright 2026 The FIFML Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "fifml.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace fifml;

namespace {

CampaignStatistics row(std::size_t i) {
  const auto& r = oracle::kTable1[i];
  return {oracle::kLibrarySize, r.nmf, r.nsf, r.nnr, r.noc};
}

}  // namespace

TEST(PerfThreshold, ConstantSamples) {
  std::vector<double> s(6, 7.0);
  auto p = compute_pt(s);
  EXPECT_EQ(p.psd, 0.0);
  EXPECT_EQ(p.wp, 7.0);
  EXPECT_EQ(p.pt, 7.0);
}

TEST(PerfThreshold, HandComputedSet) {
  std::vector<double> s = {1, 1, 1, 5};
  auto p = compute_pt(s);
  EXPECT_EQ(p.wp, 5.0);
  EXPECT_NEAR(p.psd, std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(p.pt, 10.1961524, 1e-7);
}

TEST(PerfThreshold, TranslationAndInsufficientData) {
  std::vector<double> s = {3, 9, 4, 12, 7}, t;
  for (double x : s) t.push_back(x + 250.0);
  auto a = compute_pt(s), b = compute_pt(t);
  EXPECT_NEAR(b.wp - a.wp, 250.0, 1e-9);
  EXPECT_NEAR(b.psd, a.psd, 1e-9);
  EXPECT_NEAR(b.pt - a.pt, 250.0, 1e-9);
  EXPECT_NEAR(a.pt, oracle::pt(s), 1e-9);
  EXPECT_THROW(compute_pt(std::vector<double>{1.0}), InsufficientDataError);
  EXPECT_THROW(compute_pt(std::vector<double>{}), InsufficientDataError);
}

TEST(Influence, Bands) {
  EXPECT_EQ(classify_influence(10.0, 10.0), InfluenceLevel::MildInfluence);
  EXPECT_EQ(classify_influence(50.0, 10.0), InfluenceLevel::SeriousInfluence);
  EXPECT_EQ(classify_influence(9.99, 10.0), InfluenceLevel::NoInfluence);
  EXPECT_EQ(classify_influence(0.0, 10.0), InfluenceLevel::NoInfluence);
  EXPECT_THROW(classify_influence(1.0, 0.0), DomainError);
  EXPECT_THROW(classify_influence(1.0, -2.0), DomainError);
  EXPECT_THROW(classify_influence(-1.0, 2.0), DomainError);
}

TEST(Fid, PublishedRows) {
  EXPECT_NEAR(compute_fid(row(0)), 1335.4, 1e-9);
  EXPECT_NEAR(compute_fid(row(1)), 1131.6, 1e-9);
  EXPECT_NEAR(compute_fid(row(2)), 1401.2, 1e-9);
  EXPECT_EQ(compute_fid(CampaignStatistics{}), 0.0);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(compute_fid(row(i)), oracle::fid(oracle::kTable1[i]), 1e-9);
}

TEST(Fid, CustomWeights) {
  CampaignStatistics s{10, 1, 2, 3, 4};
  EXPECT_NEAR(compute_fid(s, {1, 1, 1, 1}), 10.0, 1e-12);
}

TEST(Plf, FormulaValues) {
  EXPECT_EQ(compute_plf(0.0, 10), 100.0);
  EXPECT_NEAR(compute_plf(1335.4, 2870), 62.80, 0.01);
  EXPECT_NEAR(compute_plf(2 * 1335.4, 2 * 2870), compute_plf(1335.4, 2870), 1e-12);
  EXPECT_THROW(compute_plf(1.0, 0), DomainError);
}

TEST(FrPdr, PublishedColumns) {
  EXPECT_EQ(fixed2(compute_fr(row(0), 2870)), "13.87");
  EXPECT_EQ(fixed2(compute_fr(row(1), 2870)), "12.65");
  EXPECT_EQ(fixed2(compute_fr(row(2), 2870)), "13.34");
  EXPECT_EQ(fixed2(compute_pdr(row(0), 2870)), "22.93");
  EXPECT_EQ(fixed2(compute_pdr(row(2), 2870)), "29.58");
  EXPECT_EQ(fixed2(compute_pdr(row(1), 2870)), "20.31");
  EXPECT_EQ(compute_fr(CampaignStatistics{5, 2, 1, 0, 0}, 5), 0.0);
  EXPECT_THROW(compute_fr(row(0), 0), DomainError);
  EXPECT_THROW(compute_pdr(row(0), 0), DomainError);
}

TEST(Taf, MeanAndMedian) {
  std::vector<double> s = {4, 1, 10, 3};
  EXPECT_EQ(taf_of(s, TafStatistic::Mean), 4.5);
  EXPECT_EQ(taf_of(s, TafStatistic::Median), 3.5);
  s.push_back(2);
  EXPECT_EQ(taf_of(s, TafStatistic::Median), 3.0);
  EXPECT_THROW(taf_of(std::vector<double>{}, TafStatistic::Mean), InsufficientDataError);
}

TEST(Report, SingleNormalRecord) {
  FaultMode m{"linux-fs-5-4-1", "KFF-EIO", "x", ScenarioType::KernelFunctionFailure, ModuleTag::FileSystem, "read",
              {{"errno", "EIO"}}};
  TargetObservation o;
  o.tasks = {{"t", TaskStatus::Completed}};
  o.samples = {{"read", 100, 0, 5}};
  auto rec = make_record("exp-000001", {{m, 0, 10, "all", std::nullopt}}, o);
  LatencySamples base{{"read", {10, 10, 10}}};
  std::vector<ExperimentRecord> recs{rec};
  auto r = build_report("s", recs, build_profiles(base));
  EXPECT_EQ(r.stats, (CampaignStatistics{1, 0, 0, 0, 0}));
  EXPECT_EQ(r.fr, 0.0);
  EXPECT_EQ(r.pdr, 0.0);
  EXPECT_EQ(r.plf, 100.0);
  EXPECT_EQ(r.distribution.at(ModuleTag::FileSystem)[static_cast<std::size_t>(OutcomeClass::Normal)], 1u);
  EXPECT_EQ(build_report("s", recs, build_profiles(base)), r);

  EXPECT_THROW(build_report("s", std::vector<ExperimentRecord>{}, {}), Error);
  try {
    build_report("s", recs, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("'read'"), std::string::npos);
  }
}

TEST(Report, NOverrideAndValidity) {
  ReportOptions opt;
  opt.n_override = 5740;
  auto r = report_from_statistics("x", row(0), opt);
  EXPECT_EQ(r.stats.n, 5740u);
  EXPECT_NEAR(r.fr, oracle::fr(oracle::kTable1[0], 5740), 1e-12);
  opt.n_override = 10;
  EXPECT_THROW(report_from_statistics("x", row(0), opt), DomainError);
}

TEST(Report, ReferenceComparisonFlagsOnlyRealDeltas) {
  std::istringstream in("# c\nA.fr = 13.87\nA.pdr = 20.42\nA.plf = 62.80\n");
  auto ref = parse_reference(in);
  auto r = report_from_statistics("A", row(0));
  compare_with_reference(r, ref);
  ASSERT_EQ(r.discrepancies.size(), 1u);
  EXPECT_EQ(r.discrepancies[0].metric, "pdr");
  std::vector<SystemReport> v{r};
  auto kv = report_to_kv(v);
  EXPECT_NE(kv.find("A.discrepancy.pdr = computed 22.93 reference 20.42"), std::string::npos);
  auto text = report_to_text(v);
  EXPECT_NE(text.find("Reference discrepancies"), std::string::npos);
  std::istringstream bad("A.fr 13\n");
  EXPECT_THROW(parse_reference(bad), ParseError);
}

TEST(Report, RoundingIsHalfUp) {
  EXPECT_EQ(fixed2(0.125), "0.13");
  EXPECT_EQ(fixed2(62.795), "62.80");
  EXPECT_EQ(fixed2(0.0), "0.00");
}

TEST(Report, AgreesWithRecountOnRandomRecords) {
  std::mt19937_64 rng(3);
  const std::vector<std::string> fns = {"read", "write", "fork"};
  for (int trial = 0; trial < 50; ++trial) {
    LatencySamples base;
    for (const auto& f : fns)
      for (int k = 0; k < 4; ++k) base[f].push_back(static_cast<double>(5 + rng() % 30));
    std::vector<ExperimentRecord> recs;
    for (int i = 0; i < 1 + static_cast<int>(rng() % 30); ++i) {
      FaultMode m{"linux-io-1-1-1", "x", "x", ScenarioType::Delay, kAllModules[rng() % 5], fns[rng() % 3],
                  {{"delay_ms", "1"}}};
      TargetObservation o;
      o.tasks = {{"t", static_cast<TaskStatus>(rng() % 3)}};
      o.terminal = static_cast<TerminalEvent>(rng() % 4 == 0 ? 1 + rng() % 2 : 0);
      for (int k = static_cast<int>(rng() % 4); k > 0; --k)
        o.samples.push_back({m.target_function, 100, static_cast<std::int64_t>(rng() % 50), static_cast<std::int64_t>(rng() % 400)});
      recs.push_back(make_record(experiment_id_for(static_cast<std::size_t>(i + 1)), {{m, 20, 10, "all", std::nullopt}}, o));
    }
    auto r = build_report("s", recs, build_profiles(base));
    auto want = oracle::recount(recs, base);
    EXPECT_EQ(r.stats.nmf, want.nmf);
    EXPECT_EQ(r.stats.nsf, want.nsf);
    EXPECT_EQ(r.stats.nnr, want.nnr);
    EXPECT_EQ(r.stats.noc, want.noc);
    EXPECT_NEAR(r.fid, want.fid, 1e-9);
  }
}

TEST(Counts, ParseShippedFile) {
  auto rows = load_counts_file(testutil::data_path("distro_counts.txt"));
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[1].first, "Anolis-OS");
  EXPECT_EQ(rows[1].second, row(1));
  std::istringstream bad("FIFML-COUNTS 1\nX|10|5|5|5|5\n");
  EXPECT_THROW(parse_counts(bad), ParseError);
}
