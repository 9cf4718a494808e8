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

#include <sstream>

#include "fifml.hpp"
#include "oracles.hpp"
#include "synthetic_store.hpp"
#include "test_util.hpp"

using namespace fifml;
using testutil::data_path;
using testutil::quote;
using testutil::run_cli;

namespace {

std::string lib_arg() { return " --library " + quote(data_path("linux_fault_modes.lib")); }

std::string run_args(const std::filesystem::path& out) {
  return "run" + lib_arg() + " --workload " + quote(data_path("reference.work")) + " --license " +
         quote(data_path("fifml.license")) + " --out " + quote(out);
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(CliLibrary, ValidateSeeded) {
  auto r = run_cli("library validate" + lib_arg());
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_TRUE(r.out.starts_with("2870 records, 0 findings\n")) << r.out;
}

TEST(CliLibrary, ValidateReportsFindings) {
  testutil::TempDir dir("cli-val");
  testutil::write_file(dir / "bad.lib", "FIFML-LIB 1\nlinux-mem-1-1-1|x|y|KFF|mem|f|errno=NOPE\n");
  auto r = run_cli("library validate --library " + quote(dir / "bad.lib"));
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_TRUE(r.out.starts_with("1 records, 1 findings\n")) << r.out;
}

TEST(CliLibrary, QueryByModuleAndMissingId) {
  auto r = run_cli("library query" + lib_arg() + " --module mem");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(count_lines(r.out), 173u);
  std::istringstream in("FIFML-LIB 1\n" + r.out);
  EXPECT_EQ(load_library(in).size(), 173u);

  r = run_cli("library query" + lib_arg() + " --id no-such-id");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, "");
}

TEST(CliLibrary, ParseErrorIsOneLine) {
  testutil::TempDir dir("cli-parse");
  testutil::write_file(dir / "broken.lib", "FIFML-LIB 1\nfoo|bar\n");
  auto r = run_cli("library query --library " + quote(dir / "broken.lib"));
  EXPECT_NE(r.exit_code, 0);
  EXPECT_EQ(count_lines(r.out), 1u) << r.out;
  EXPECT_NE(r.out.find("line 2"), std::string::npos);
  r = run_cli("library validate --library " + quote(dir / "absent.lib"));
  EXPECT_NE(r.exit_code, 0);
}

TEST(CliLibrary, GenerateCreatesThenAppends) {
  testutil::TempDir dir("cli-gen");
  testutil::write_file(dir / "one.desc",
                       "FIFML-DESC 1\nsyscall mprotect\nmodule mem\nordinal 11\noperation setting memory permission\n"
                       "param start\nparam len\nparam prot\nfault 0 EINVAL invalid address parameter\n"
                       "fault 1 ENOMEM memory overflow\nfault 2 EACCES permission conflict\nend\n");
  testutil::write_file(dir / "two.desc",
                       "FIFML-DESC 1\nsyscall semop\nmodule pro\nordinal 18\noperation operating on a semaphore set\n"
                       "param semid\nfault 0 EIDRM semaphore set removed\nextra DLY delay_ms=10\nend\n");
  const auto lib = dir / "out.lib";
  auto r = run_cli("library generate --descriptors " + quote(dir / "one.desc") + " --library " + quote(lib));
  EXPECT_EQ(r.exit_code, 0) << r.out;
  EXPECT_EQ(load_library_file(lib).size(), 3u);
  r = run_cli("library generate --descriptors " + quote(dir / "two.desc") + " --library " + quote(lib));
  EXPECT_EQ(r.exit_code, 0) << r.out;
  auto l = load_library_file(lib);
  ASSERT_EQ(l.size(), 5u);
  EXPECT_EQ(l.modes()[3].attach_data.at("errno"), "EIDRM");
  EXPECT_EQ(l.modes()[4].attach_data.at("delay_ms"), "10");

  // regenerating the same descriptors collides on ids
  r = run_cli("library generate --descriptors " + quote(dir / "two.desc") + " --library " + quote(lib));
  EXPECT_NE(r.exit_code, 0);
  EXPECT_EQ(load_library_file(lib).size(), 5u);
}

TEST(CliPlan, WritesAValidScheme) {
  testutil::TempDir dir("cli-plan");
  auto r = run_cli("plan" + lib_arg() + " --function semop --repeat 2 --out " + quote(dir / "s.scheme"));
  EXPECT_EQ(r.exit_code, 0) << r.out;
  auto lib = load_library_file(data_path("linux_fault_modes.lib"));
  auto s = load_scheme_file(dir / "s.scheme", lib);
  QueryFilter f;
  f.target_function = "semop";
  EXPECT_EQ(s.entries.size(), 2 * query_modes(lib, f).size());
  EXPECT_TRUE(validate_scheme(s, lib).empty());

  r = run_cli("plan" + lib_arg() + " --id linux-mem-26-7-1 --duration 0");
  EXPECT_NE(r.exit_code, 0);
  EXPECT_NE(r.out.find("duration_ms"), std::string::npos);
}

TEST(CliRun, SingleIdIsDeterministic) {
  testutil::TempDir dir("cli-run");
  for (const char* d : {"a", "b"}) {
    auto r = run_cli(run_args(dir / d) + " --id linux-mem-26-7-1 --seed 5");
    EXPECT_EQ(r.exit_code, 0) << r.out;
  }
  auto a = testutil::snapshot_tree(dir / "a");
  EXPECT_EQ(a, testutil::snapshot_tree(dir / "b"));
  EXPECT_EQ(a.count("exp-000001.rec"), 1u);
  EXPECT_EQ(a.count("exp-000002.rec"), 0u);
}

TEST(CliRun, EmptySelectionFails) {
  testutil::TempDir dir("cli-empty");
  auto r = run_cli(run_args(dir / "x") + " --id no-such-id");
  EXPECT_NE(r.exit_code, 0);
  EXPECT_NE(r.out.find("empty selection"), std::string::npos);
}

TEST(CliRun, LicenseRefusal) {
  testutil::TempDir dir("cli-lic");
  auto r = run_cli("run" + lib_arg() + " --workload " + quote(data_path("reference.work")) + " --license " +
                   quote(dir / "missing") + " --out " + quote(dir / "x") + " --id linux-mem-26-7-1");
  EXPECT_EQ(r.exit_code, 3);
  EXPECT_NE(r.out.find("license file not found"), std::string::npos);
}

TEST(CliAnalyze, ThreeSyntheticStoresGiveComparativeTable) {
  testutil::TempDir dir("cli-three");
  auto lib = load_library_file(data_path("linux_fault_modes.lib"));
  auto work = load_workload_file(data_path("reference.work"));
  std::string args = "analyze";
  for (const auto& r : oracle::kTable1) {
    synthetic::write_store(dir / r.system, r.system, {oracle::kLibrarySize, r.nmf, r.nsf, r.nnr, r.noc}, lib, work);
    args += " " + quote(dir / r.system);
  }
  auto kv = run_cli(args + " --format kv");
  ASSERT_EQ(kv.exit_code, 0) << kv.out;
  EXPECT_NE(kv.out.find("CentOS-8.fr = 13.87"), std::string::npos);
  EXPECT_NE(kv.out.find("Anolis-OS.fr = 12.65"), std::string::npos);
  EXPECT_NE(kv.out.find("openEuler.fr = 13.34"), std::string::npos);

  auto text = run_cli(args + " --reference " + quote(data_path("distro_reference.kv")));
  ASSERT_EQ(text.exit_code, 0);
  EXPECT_NE(text.out.find("Metrics (%)"), std::string::npos);
  EXPECT_NE(text.out.find("Outcome distribution: openEuler"), std::string::npos);
  EXPECT_NE(text.out.find("Anolis-OS pdr: computed 20.31, reference 20.42"), std::string::npos);
  EXPECT_EQ(run_cli(args).out, run_cli(args).out);
}

TEST(CliAnalyze, EmptyAndCorruptStores) {
  testutil::TempDir dir("cli-bad");
  std::filesystem::create_directories(dir / "empty");
  auto r = run_cli("analyze " + quote(dir / "empty"));
  EXPECT_NE(r.exit_code, 0);
  EXPECT_NE(r.out.find("no records"), std::string::npos);

  ASSERT_EQ(run_cli(run_args(dir / "s") + " --function semop").exit_code, 0);
  testutil::write_file(dir / "s" / "exp-000002.rec", "FIFML-REC 1\ngarbage\n");
  r = run_cli("analyze " + quote(dir / "s"));
  EXPECT_NE(r.exit_code, 0);
  EXPECT_NE(r.out.find("exp-000002.rec"), std::string::npos) << r.out;
}

TEST(CliAnalyze, RejectsForeignLibrary) {
  testutil::TempDir dir("cli-foreign");
  ASSERT_EQ(run_cli(run_args(dir / "s") + " --id linux-mem-26-7-1").exit_code, 0);
  testutil::write_file(dir / "other.lib", "FIFML-LIB 1\n");
  auto r = run_cli("analyze " + quote(dir / "s") + " --library " + quote(dir / "other.lib"));
  EXPECT_NE(r.exit_code, 0);
  EXPECT_NE(r.out.find("different library"), std::string::npos);
}

TEST(CliReport, CountsWithOverrides) {
  const auto counts = quote(data_path("distro_counts.txt"));
  auto r = run_cli("report --counts " + counts + " --format kv");
  ASSERT_EQ(r.exit_code, 0);
  const auto plf = fixed2(oracle::plf(oracle::kTable1[0], oracle::kLibrarySize));
  EXPECT_NEAR(oracle::plf(oracle::kTable1[0], oracle::kLibrarySize), 62.80, 0.01);
  EXPECT_NE(r.out.find("CentOS-8.plf = " + plf), std::string::npos);
  EXPECT_NE(r.out.find("CentOS-8.fid = 1335.40"), std::string::npos);

  r = run_cli("report --counts " + counts + " --format kv --weights 1,1,1,1 --n 5740");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("CentOS-8.fid = 658.00"), std::string::npos);
  EXPECT_NE(r.out.find("CentOS-8.n = 5740"), std::string::npos);

  EXPECT_NE(run_cli("report --counts " + counts + " --weights 1,2").exit_code, 0);
  EXPECT_NE(run_cli("report --counts " + counts + " --n 100").exit_code, 0);
}

TEST(CliMisc, UnknownSubcommandFails) {
  EXPECT_NE(run_cli("frobnicate").exit_code, 0);
  EXPECT_NE(run_cli("library query" + lib_arg() + " --module xyz").exit_code, 0);
}
