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

#include "fifml.hpp"
#include "oracles.hpp"
#include "synthetic_store.hpp"
#include "test_util.hpp"

using namespace fifml;

namespace {

struct Inputs {
  Library lib = load_library_file(testutil::data_path("linux_fault_modes.lib"));
  WorkloadScript work = load_workload_file(testutil::data_path("reference.work"));
};

const Inputs& inputs() {
  static const Inputs in;
  return in;
}

CampaignConfig config(const std::filesystem::path& out) {
  CampaignConfig c;
  c.output_dir = out;
  c.license_path = testutil::data_path("fifml.license");
  c.seed = 42;
  return c;
}

}  // namespace

TEST(Campaign, SingleModeIsReproducible) {
  testutil::TempDir dir("camp1");
  auto c = config(dir / "a");
  c.command.selector.filter.id = "linux-mem-26-7-1";
  auto m = run_campaign(c, inputs().lib, inputs().work);
  EXPECT_EQ(m.experiment_ids.size(), 1u);
  c.output_dir = dir / "b";
  run_campaign(c, inputs().lib, inputs().work);
  EXPECT_EQ(testutil::snapshot_tree(dir / "a"), testutil::snapshot_tree(dir / "b"));
  auto s = load_store(dir / "a", &inputs().lib, &inputs().work);
  ASSERT_EQ(s.records.size(), 1u);
  EXPECT_EQ(s.records[0].entries[0].fault.simulation_method_id, "linux-mem-26-7-1");
}

TEST(Campaign, ParallelismDoesNotChangeTheStore) {
  testutil::TempDir dir("camp2");
  auto c = config(dir / "serial");
  c.command.selector.filter.target_function = "read";
  run_campaign(c, inputs().lib, inputs().work);
  c.output_dir = dir / "parallel";
  c.parallelism = 4;
  run_campaign(c, inputs().lib, inputs().work);
  EXPECT_EQ(testutil::snapshot_tree(dir / "serial"), testutil::snapshot_tree(dir / "parallel"));
}

TEST(Campaign, MemoryModuleCampaignCounts) {
  testutil::TempDir dir("camp3");
  auto c = config(dir / "mem");
  c.command.selector.filter.module = ModuleTag::MemoryManagement;
  c.parallelism = 4;
  auto m = run_campaign(c, inputs().lib, inputs().work);
  EXPECT_EQ(m.experiment_ids.size(), 173u);
  auto s = load_store(dir / "mem");
  EXPECT_EQ(s.records.size(), 173u);
  for (std::size_t i = 0; i < s.records.size(); ++i) {
    EXPECT_EQ(s.records[i].experiment_id, m.experiment_ids[i]);
    EXPECT_EQ(s.records[i].entries.at(0).fault.module, ModuleTag::MemoryManagement);
  }
  auto r = analyze_store(s);
  EXPECT_EQ(r.stats.n, 173u);
  std::uint64_t total = 0;
  for (auto k : r.distribution.at(ModuleTag::MemoryManagement)) total += k;
  EXPECT_EQ(total, 173u);
  auto want = oracle::recount(s.records, s.baseline);
  EXPECT_EQ(r.stats.nmf, want.nmf);
  EXPECT_EQ(r.stats.nsf, want.nsf);
  EXPECT_EQ(r.stats.nnr, want.nnr);
  EXPECT_EQ(r.stats.noc, want.noc);
}

TEST(Campaign, CombinedRunsOneExperiment) {
  testutil::TempDir dir("camp4");
  auto c = config(dir / "x");
  c.command.selector.ids = {"linux-mem-11-1-1", "linux-pro-18-1-1"};
  c.combined = true;
  auto m = run_campaign(c, inputs().lib, inputs().work);
  ASSERT_EQ(m.experiment_ids.size(), 1u);
  auto s = load_store(dir / "x");
  EXPECT_EQ(s.records[0].entries.size(), 2u);
}

TEST(Campaign, RefusesWithoutLicense) {
  testutil::TempDir dir("camp5");
  auto c = config(dir / "x");
  c.license_path = dir / "none";
  c.command.selector.filter.id = "linux-mem-26-7-1";
  EXPECT_THROW(run_campaign(c, inputs().lib, inputs().work), LicenseError);
  EXPECT_FALSE(std::filesystem::exists(dir / "x"));
}

TEST(Campaign, RefusesEmptySelectionAndDirtyOutput) {
  testutil::TempDir dir("camp6");
  auto c = config(dir / "x");
  c.command.selector.filter.id = "no-such-id";
  EXPECT_THROW(run_campaign(c, inputs().lib, inputs().work), EmptySelectionError);

  std::filesystem::create_directories(dir / "y");
  testutil::write_file(dir / "y" / "junk", "x");
  c = config(dir / "y");
  c.command.selector.filter.id = "linux-mem-26-7-1";
  EXPECT_THROW(run_campaign(c, inputs().lib, inputs().work), IoError);

  c = config(dir / "z");
  c.system = "bad name";
  EXPECT_THROW(run_campaign(c, inputs().lib, inputs().work), ValidationError);
}

TEST(Campaign, StoreCrossChecks) {
  testutil::TempDir dir("camp7");
  auto c = config(dir / "x");
  c.command.selector.filter.target_function = "semop";
  run_campaign(c, inputs().lib, inputs().work);

  std::vector<FaultMode> fewer(inputs().lib.modes().begin(), inputs().lib.modes().end() - 1);
  Library other(fewer);
  EXPECT_THROW(load_store(dir / "x", &other), ValidationError);

  std::filesystem::remove(dir / "x" / "exp-000001.rec");
  EXPECT_THROW(load_store(dir / "x"), ValidationError);

  std::filesystem::create_directories(dir / "empty");
  try {
    load_store(dir / "empty");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("no records"), std::string::npos);
  }
}

TEST(Campaign, SyntheticStoresReproducePublishedColumns) {
  testutil::TempDir dir("camp8");
  const double fr[] = {13.87, 12.65, 13.34};
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& r = oracle::kTable1[i];
    CampaignStatistics s{oracle::kLibrarySize, r.nmf, r.nsf, r.nnr, r.noc};
    synthetic::write_store(dir / r.system, r.system, s, inputs().lib, inputs().work);
    auto rep = analyze_store(load_store(dir / r.system));
    EXPECT_EQ(rep.stats, s);
    EXPECT_EQ(fixed2(rep.fr), fixed2(fr[i]));
    if (i != 1) EXPECT_NEAR(rep.pdr, oracle::kTable2[i][1], 0.01);
  }
}
