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

// Writes campaign stores whose records reproduce given impact counts, for
// exercising analysis without running experiments.

#pragma once

#include <string>

#include "fifml.hpp"
#include "test_util.hpp"

namespace synthetic {

using namespace fifml;

/// Baseline samples {10, 10} for every function, so PT = 10 everywhere.
inline LatencySamples flat_baseline(const Library& lib) {
  LatencySamples b;
  for (const auto& m : lib.modes()) b[m.target_function] = {10.0, 10.0};
  return b;
}

/// One record per library mode, in library order: the first `stats.noc`
/// crash, the next `nnr` hang, then `nsf` serious and `nmf` mild latency
/// records; the rest are clean. Requires stats.n == lib.size().
inline void write_store(const std::filesystem::path& dir, const std::string& system, const CampaignStatistics& stats,
                        const Library& lib, const WorkloadScript& work) {
  RecordStore store(dir);
  store.create();
  CampaignManifest m{system, hex64(lib.fingerprint()), hex64(workload_fingerprint(work)), "sch-synthetic", 1, {}};
  std::size_t i = 0;
  for (const auto& mode : lib.modes()) {
    SchemeEntry e{mode, 0, 100, "all", std::nullopt};
    TargetObservation o;
    o.started_at_ms = 1000;
    o.finished_at_ms = 2000;
    o.tasks = {{"t", TaskStatus::Completed}};
    std::int64_t lat = 10;
    if (i < stats.noc) o.terminal = TerminalEvent::Crash;
    else if (i < stats.noc + stats.nnr) o.terminal = TerminalEvent::NoProgress;
    else if (i < stats.noc + stats.nnr + stats.nsf) lat = 60;
    else if (i < stats.noc + stats.nnr + stats.nsf + stats.nmf) lat = 20;
    else lat = 5;
    o.samples = {{mode.target_function, 100, 1000, lat}};
    ++i;
    m.experiment_ids.push_back(experiment_id_for(i));
    store.persist_record(make_record(m.experiment_ids.back(), {e}, std::move(o)));
  }
  store.write_baseline(flat_baseline(lib));
  store.write_snapshot(RecordStore::kLibraryName, library_to_string(lib));
  store.write_snapshot(RecordStore::kWorkloadName, workload_to_string(work));
  store.write_manifest(m);
}

}  // namespace synthetic
