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

#include <random>
#include <sstream>

#include "fifml.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace fifml;

namespace {

TargetObservation with_tasks(std::initializer_list<TaskStatus> st) {
  TargetObservation o;
  int i = 0;
  for (auto s : st) o.tasks.push_back({"t" + std::to_string(i++), s});
  return o;
}

SchemeEntry sample_entry() {
  FaultMode m{"linux-fs-5-4-1", "KFF-EIO", "eio", ScenarioType::KernelFunctionFailure, ModuleTag::FileSystem, "read",
              {{"errno", "EIO"}}};
  return {m, 10, 2000, "task:files", std::string("data.txt")};
}

}  // namespace

TEST(Outcome, RuleTable) {
  auto crash = with_tasks({TaskStatus::Completed});
  crash.terminal = TerminalEvent::Crash;
  EXPECT_EQ(classify_outcome(crash), OutcomeClass::Crash);

  auto hang = with_tasks({TaskStatus::Failed});
  hang.terminal = TerminalEvent::NoProgress;
  EXPECT_EQ(classify_outcome(hang), OutcomeClass::NoResponse);

  EXPECT_EQ(classify_outcome(with_tasks({TaskStatus::Completed, TaskStatus::Failed, TaskStatus::CompletedWithErrors})),
            OutcomeClass::Affect);
  EXPECT_EQ(classify_outcome(with_tasks({TaskStatus::Completed, TaskStatus::Completed, TaskStatus::Completed,
                                         TaskStatus::CompletedWithErrors})),
            OutcomeClass::Light);
  EXPECT_EQ(classify_outcome(with_tasks({TaskStatus::Completed, TaskStatus::Completed})), OutcomeClass::Normal);
}

TEST(Outcome, BaselineIsNormal) {
  auto w = load_workload_file(testutil::data_path("reference.work"));
  EXPECT_EQ(classify_outcome(run_baseline(w, 1)), OutcomeClass::Normal);
}

TEST(Outcome, IncompleteObservationIsRejected) {
  TargetObservation o;
  o.tasks.push_back({"t", std::nullopt});
  EXPECT_THROW(classify_outcome(o), Error);
  o.terminal = TerminalEvent::Crash;
  EXPECT_EQ(classify_outcome(o), OutcomeClass::Crash);
}

TEST(Outcome, AgreesWithOracleAndIsMonotone) {
  std::mt19937 rng(17);
  for (int k = 0; k < 500; ++k) {
    TargetObservation o;
    for (int i = static_cast<int>(rng() % 5); i >= 0; --i)
      o.tasks.push_back({"t" + std::to_string(i), static_cast<TaskStatus>(rng() % 3)});
    o.terminal = static_cast<TerminalEvent>(rng() % 3);
    EXPECT_EQ(classify_outcome(o), oracle::classify(o));
    auto crashed = o;
    crashed.terminal = TerminalEvent::Crash;
    EXPECT_EQ(classify_outcome(crashed), OutcomeClass::Crash);
    auto clean = o;
    clean.terminal = TerminalEvent::None;
    for (auto& t : clean.tasks) t.status = TaskStatus::Completed;
    EXPECT_EQ(classify_outcome(clean), OutcomeClass::Normal);
  }
}

TEST(Outcome, NamesRoundTrip) {
  for (auto c : kAllOutcomes) EXPECT_EQ(parse_outcome(outcome_name(c)), c);
  EXPECT_FALSE(parse_outcome("Fine"));
  EXPECT_EQ(experiment_id_for(42), "exp-000042");
}

TEST(Records, TextRoundTrip) {
  auto w = load_workload_file(testutil::data_path("reference.work"));
  auto e = sample_entry();
  auto rec = make_record("exp-000001", {e}, run_experiment(e, w, 3));
  EXPECT_EQ(rec.outcome, OutcomeClass::Affect);
  std::istringstream in(record_to_string(rec));
  EXPECT_EQ(parse_record(in), rec);
}

TEST(Records, CorruptLineReportsLineNumber) {
  auto w = load_workload_file(testutil::data_path("reference.work"));
  auto e = sample_entry();
  auto text = record_to_string(make_record("exp-000001", {e}, run_experiment(e, w, 3)));
  auto pos = text.find("outcome=Affect");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 14, "outcome=Bogus!");
  std::istringstream in(text);
  try {
    parse_record(in);
    FAIL();
  } catch (const ParseError& err) {
    EXPECT_EQ(err.line(), 5u);
  }
}

TEST(Records, StoredOutcomeMustMatchObservation) {
  auto w = load_workload_file(testutil::data_path("reference.work"));
  auto e = sample_entry();
  auto text = record_to_string(make_record("exp-000001", {e}, run_experiment(e, w, 3)));
  text.replace(text.find("outcome=Affect"), 14, "outcome=Normal");
  std::istringstream in(text);
  EXPECT_THROW(parse_record(in), ParseError);
}

TEST(Records, StoreRoundTripAndOrdering) {
  testutil::TempDir dir("store");
  RecordStore store(dir / "s");
  store.create();
  EXPECT_TRUE(store.load_records().empty());

  auto w = load_workload_file(testutil::data_path("reference.work"));
  auto e = sample_entry();
  auto r1 = make_record("exp-000002", {e}, run_experiment(e, w, 3));
  auto r0 = make_record("exp-000001", {e}, run_baseline(w, 3));
  store.persist_record(r1);
  store.persist_record(r0);
  auto back = store.load_records();
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0], r0);
  EXPECT_EQ(back[1], r1);

  CampaignManifest m{"sys", "0123", "4567", "sch-1", 9, {"exp-000001", "exp-000002"}};
  store.write_manifest(m);
  EXPECT_EQ(store.read_manifest(), m);

  LatencySamples base{{"read", {1, 2.5}}, {"write", {3}}};
  store.write_baseline(base);
  EXPECT_EQ(store.read_baseline(), base);
}

TEST(Records, CorruptRecordFileIsNamed) {
  testutil::TempDir dir("corrupt");
  testutil::write_file(dir / "exp-000001.rec", "FIFML-REC 1\nexperiment_id=exp-000001\nnonsense\n");
  try {
    RecordStore::load_record_file(dir / "exp-000001.rec");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("exp-000001.rec"), std::string::npos);
    EXPECT_EQ(e.line(), 3u);
  }
}
