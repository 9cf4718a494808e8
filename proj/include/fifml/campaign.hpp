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

/**
 * @file
 *   Campaign orchestration: library -> scheme -> injection -> store, and
 *   store -> metrics report.
 */

#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "fifml/core.hpp"
#include "fifml/injection.hpp"
#include "fifml/library.hpp"
#include "fifml/metrics.hpp"
#include "fifml/outcome.hpp"
#include "fifml/scheme.hpp"
#include "fifml/workload.hpp"

namespace fifml {

struct CampaignConfig {
  std::string system = "simulated";
  std::filesystem::path output_dir;
  std::filesystem::path license_path;
  std::uint64_t seed = 1;
  int baseline_repetitions = 5;
  ControlCommand command;
  int parallelism = 1;
  bool combined = false;  // all entries in one experiment
  ExperimentOptions experiment;
};

inline std::vector<Finding> validate_config(const CampaignConfig& c) {
  std::vector<Finding> out;
  if (c.output_dir.empty()) out.push_back({"config", "output_dir", "must be non-empty"});
  if (c.license_path.empty()) out.push_back({"config", "license_path", "must be non-empty"});
  if (c.parallelism < 1) out.push_back({"config", "parallelism", "must be >= 1"});
  if (c.baseline_repetitions < 2) out.push_back({"config", "repetitions", "must be >= 2"});
  if (c.system.empty() || c.system.find_first_of(" \t\n|=.") != std::string::npos)
    out.push_back({"config", "system", "must be a token without spaces, '|', '=' or '.'"});
  return out;
}

namespace detail {
inline void throw_findings(const char* what, const std::vector<Finding>& findings) {
  std::vector<std::string> lines;
  for (const auto& f : findings) lines.push_back(f.to_string());
  throw ValidationError(what, std::move(lines));
}

/// Runs `count` jobs on up to `threads` workers; rethrows the first failure.
template <class Job>
void parallel_for(std::size_t count, int threads, Job job) {
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          job(i);
        } catch (...) {
          std::lock_guard lock(mu);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}
}  // namespace detail

/// Plans and validates the scheme for `config` without running anything.
inline InjectionScheme plan_campaign(const CampaignConfig& config, const Library& library) {
  auto scheme = generate_scheme(config.command, library);
  if (auto f = validate_scheme(scheme, library); !f.empty()) detail::throw_findings("scheme failed validation", f);
  return scheme;
}

/// Runs a full campaign into `config.output_dir`, which must not already
/// hold a campaign. Output is a pure function of (config minus parallelism,
/// library, workload).
inline CampaignManifest run_campaign(const CampaignConfig& config, const Library& library,
                                     const WorkloadScript& workload) {
  if (auto f = validate_config(config); !f.empty()) detail::throw_findings("invalid campaign config", f);
  if (auto lic = check_license({config.license_path}); !lic) throw LicenseError(lic.reason);

  const auto scheme = plan_campaign(config, library);

  RecordStore store(config.output_dir);
  std::error_code ec;
  if (std::filesystem::exists(config.output_dir, ec) && !std::filesystem::is_empty(config.output_dir, ec))
    throw IoError("output directory '" + config.output_dir.string() + "' is not empty");
  store.create();

  const auto baseline = baseline_profile(workload, config.seed, config.baseline_repetitions);
  auto options = config.experiment;
  options.watchdog_ms = watchdog_for(workload, config.seed, options);

  std::vector<std::vector<SchemeEntry>> groups;
  if (config.combined) groups.push_back(scheme.entries);
  else
    for (const auto& e : scheme.entries) groups.push_back({e});

  CampaignManifest m;
  m.system = config.system;
  m.library_hash = hex64(library.fingerprint());
  m.workload_hash = hex64(workload_fingerprint(workload));
  m.scheme_id = scheme.scheme_id;
  m.seed = config.seed;
  for (std::size_t i = 0; i < groups.size(); ++i) m.experiment_ids.push_back(experiment_id_for(i + 1));

  detail::parallel_for(groups.size(), config.parallelism, [&](std::size_t i) {
    auto obs = run_experiment(groups[i], workload, config.seed, options);
    store.persist_record(make_record(m.experiment_ids[i], groups[i], std::move(obs)));
  });

  store.write_baseline(baseline);
  store.write_snapshot(RecordStore::kLibraryName, library_to_string(library));
  store.write_snapshot(RecordStore::kWorkloadName, workload_to_string(workload));
  store.write_manifest(m);
  return m;
}

/// A loaded, cross-checked store.
struct LoadedStore {
  CampaignManifest manifest;
  std::vector<ExperimentRecord> records;
  LatencySamples baseline;
};

/// Loads a store and verifies it against its own manifest and snapshots.
/// If `library` or `workload` is given, their hashes must match too.
inline LoadedStore load_store(const std::filesystem::path& dir, const Library* library = nullptr,
                              const WorkloadScript* workload = nullptr) {
  RecordStore store(dir);
  LoadedStore out;
  out.records = store.load_records();
  if (out.records.empty()) throw Error(dir.string() + ": no records");
  out.manifest = store.read_manifest();
  out.baseline = store.read_baseline();

  const auto where = dir.string() + ": ";
  std::istringstream lib_text(store.read_snapshot(RecordStore::kLibraryName));
  Library snapshot = [&] {
    try {
      return load_library(lib_text);
    } catch (const ParseError& e) {
      throw ParseError(e.line(), where + std::string(RecordStore::kLibraryName) + ": " + e.what());
    }
  }();
  if (hex64(snapshot.fingerprint()) != out.manifest.library_hash)
    throw ValidationError(where + "library snapshot does not match manifest hash", {});
  std::istringstream work_text(store.read_snapshot(RecordStore::kWorkloadName));
  const auto snapshot_workload = parse_workload(work_text);
  if (hex64(workload_fingerprint(snapshot_workload)) != out.manifest.workload_hash)
    throw ValidationError(where + "workload snapshot does not match manifest hash", {});
  if (library && hex64(library->fingerprint()) != out.manifest.library_hash)
    throw ValidationError(where + "store was produced from a different library", {});
  if (workload && hex64(workload_fingerprint(*workload)) != out.manifest.workload_hash)
    throw ValidationError(where + "store was produced from a different workload", {});

  std::vector<std::string> ids;
  for (const auto& r : out.records) {
    ids.push_back(r.experiment_id);
    for (const auto& e : r.entries) {
      const auto* m = snapshot.find(e.fault.simulation_method_id);
      if (!m || !(*m == e.fault))
        throw ValidationError(where + r.experiment_id + " references a mode absent from the library snapshot",
                              {e.fault.simulation_method_id});
    }
  }
  auto listed = out.manifest.experiment_ids;
  std::sort(listed.begin(), listed.end());
  if (listed != ids) throw ValidationError(where + "manifest and record files disagree", {});
  return out;
}

inline SystemReport analyze_store(const LoadedStore& s, const ReportOptions& options = {}) {
  return build_report(s.manifest.system, s.records, build_profiles(s.baseline), options);
}

}  // namespace fifml
