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

#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fifml/scheme.hpp"
#include "fifml/simulated_target.hpp"
#include "fifml/workload.hpp"

namespace fifml {

struct ExperimentOptions {
  std::int64_t restart_latency_ms = 1000;
  double watchdog_factor = 10.0;            // x baseline virtual duration
  std::optional<std::int64_t> watchdog_ms;  // explicit override
};

namespace detail {
inline constexpr std::size_t kMaxSteps = 50'000'000;

inline TargetObservation drive(TargetAdapter& target, std::span<const SchemeEntry> entries) {
  for (const auto& e : entries) target.arm(e);
  std::size_t steps = 0;
  while (target.step().kind == StepKind::Progress)
    if (++steps > kMaxSteps) throw Error("experiment exceeded step budget");
  for (const auto& e : entries) target.disarm(e);
  return target.observe();
}
}  // namespace detail

/// One unfaulted run; the reference every faulted run is compared with.
inline TargetObservation run_baseline(const WorkloadScript& workload, std::uint64_t seed,
                                      const ExperimentOptions& options = {}) {
  SimulatedTarget target;
  target.spawn(workload, {seed, 0, options.restart_latency_ms});
  return detail::drive(target, {});
}

/// Virtual time from workload start to completion of an unfaulted run.
inline std::int64_t baseline_duration_ms(const WorkloadScript& workload, std::uint64_t seed) {
  auto o = run_baseline(workload, seed);
  return o.finished_at_ms - o.started_at_ms;
}

inline std::int64_t watchdog_for(const WorkloadScript& workload, std::uint64_t seed, const ExperimentOptions& options) {
  if (options.watchdog_ms) return *options.watchdog_ms;
  const auto d = static_cast<double>(baseline_duration_ms(workload, seed));
  return std::max<std::int64_t>(1, std::llround(options.watchdog_factor * d));
}

/// Runs one experiment on a fresh simulated target: warmup, arm every entry
/// for its window, run to completion or watchdog expiry, disarm, observe.
/// Deterministic in (entries, workload, seed).
inline TargetObservation run_experiment(std::span<const SchemeEntry> entries, const WorkloadScript& workload,
                                        std::uint64_t seed, const ExperimentOptions& options = {}) {
  SimulatedTarget target;
  target.spawn(workload, {seed, watchdog_for(workload, seed, options), options.restart_latency_ms});
  return detail::drive(target, entries);
}

inline TargetObservation run_experiment(const SchemeEntry& entry, const WorkloadScript& workload, std::uint64_t seed,
                                        const ExperimentOptions& options = {}) {
  return run_experiment(std::span<const SchemeEntry>(&entry, 1), workload, seed, options);
}

using LatencySamples = std::map<std::string, std::vector<double>>;

/// Pools per-function latencies over `repetitions` unfaulted runs. Run r
/// uses seed + r, so run 0 matches the jitter of experiments at `seed`.
inline LatencySamples baseline_profile(const WorkloadScript& workload, std::uint64_t seed, int repetitions) {
  if (repetitions < 2) throw DomainError("baseline_profile needs at least 2 repetitions");
  LatencySamples out;
  for (int r = 0; r < repetitions; ++r) {
    auto o = run_baseline(workload, seed + static_cast<std::uint64_t>(r));
    for (const auto& s : o.samples) out[s.function].push_back(static_cast<double>(s.latency_ms));
  }
  return out;
}

/// Latencies of each entry's target function from the start of its window
/// onward (during and after injection).
inline LatencySamples post_injection_samples(const TargetObservation& o, std::span<const SchemeEntry> entries) {
  LatencySamples out;
  for (const auto& e : entries) {
    const auto from = o.started_at_ms + e.start_offset_ms;
    auto& v = out[e.fault.target_function];
    for (const auto& s : o.samples)
      if (s.function == e.fault.target_function && s.start_ms >= from) v.push_back(static_cast<double>(s.latency_ms));
    if (v.empty()) out.erase(e.fault.target_function);
  }
  return out;
}

}  // namespace fifml
