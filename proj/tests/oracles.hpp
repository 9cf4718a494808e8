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

// Independent reference computations used as test oracles. Nothing here
// calls into the metrics or classification code under test.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fifml/outcome.hpp"

namespace oracle {

/// Population SD, two-pass, long double accumulation.
inline long double population_sd(const std::vector<double>& v) {
  long double sum = 0;
  for (double x : v) sum += x;
  const long double mean = sum / static_cast<long double>(v.size());
  long double ss = 0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<long double>(v.size()));
}

inline double pt(const std::vector<double>& v) {
  return static_cast<double>(3.0L * population_sd(v) + *std::max_element(v.begin(), v.end()));
}

struct Row {
  const char* system;
  std::uint64_t nmf, nsf, nnr, noc;
};

// Published impact counts (NMF, NSF, NNR, NOC) for the three distributions.
inline constexpr Row kTable1[] = {
    {"CentOS-8", 179, 81, 70, 328},
    {"Anolis-OS", 156, 64, 139, 224},
    {"openEuler", 243, 223, 80, 303},
};

// Published FR, PDR and PL_f percentages, same row order.
inline constexpr double kTable2[3][3] = {
    {13.87, 22.93, 67.49},
    {12.65, 20.42, 70.47},
    {13.34, 29.58, 65.47},
};

inline constexpr std::uint64_t kLibrarySize = 2870;

inline double fid(const Row& r) { return 0.4 * r.nsf + 1.0 * r.nmf + 2.0 * r.nnr + 3.0 * r.noc; }
inline double plf(const Row& r, std::uint64_t n) { return 100.0 * std::exp(-fid(r) / static_cast<double>(n)); }
inline double fr(const Row& r, std::uint64_t n) { return 100.0 * static_cast<double>(r.nnr + r.noc) / n; }
inline double pdr(const Row& r, std::uint64_t n) {
  return 100.0 * static_cast<double>(r.nmf + r.nsf + r.nnr + r.noc) / n;
}

/// Outcome by the five-rule table, read straight off the observation.
inline fifml::OutcomeClass classify(const fifml::TargetObservation& o) {
  using fifml::OutcomeClass;
  using fifml::TaskStatus;
  if (o.terminal == fifml::TerminalEvent::Crash) return OutcomeClass::Crash;
  if (o.terminal == fifml::TerminalEvent::NoProgress) return OutcomeClass::NoResponse;
  int failed = 0, errors = 0;
  for (const auto& t : o.tasks) {
    failed += t.status == TaskStatus::Failed;
    errors += t.status == TaskStatus::CompletedWithErrors;
  }
  if (failed) return OutcomeClass::Affect;
  if (errors) return OutcomeClass::Light;
  return OutcomeClass::Normal;
}

struct Recount {
  std::uint64_t n = 0, nmf = 0, nsf = 0, nnr = 0, noc = 0;
  double fid = 0, fr = 0, pdr = 0;
};

/// Straight-line pass over raw records: outcome from the terminal event and
/// task statuses, TAF as the mean of the target function's samples that
/// start at or after the window start, PT from the baseline samples.
inline Recount recount(const std::vector<fifml::ExperimentRecord>& records,
                       const std::map<std::string, std::vector<double>>& baseline) {
  Recount c;
  for (const auto& r : records) {
    ++c.n;
    const auto oc = classify(r.observation);
    if (oc == fifml::OutcomeClass::Crash) {
      ++c.noc;
      continue;
    }
    if (oc == fifml::OutcomeClass::NoResponse) {
      ++c.nnr;
      continue;
    }
    int worst = 0;  // 0 none, 1 mild, 2 serious
    for (const auto& e : r.entries) {
      const auto& fn = e.fault.target_function;
      double sum = 0;
      int k = 0;
      for (const auto& s : r.observation.samples)
        if (s.function == fn && s.start_ms >= r.observation.started_at_ms + e.start_offset_ms) {
          sum += static_cast<double>(s.latency_ms);
          ++k;
        }
      if (k == 0) continue;
      const double taf = sum / k;
      const double p = pt(baseline.at(fn));
      const int level = taf >= 5 * p ? 2 : taf >= p ? 1 : 0;
      worst = std::max(worst, level);
    }
    if (worst == 1) ++c.nmf;
    if (worst == 2) ++c.nsf;
  }
  c.fid = 0.4 * c.nsf + 1.0 * c.nmf + 2.0 * c.nnr + 3.0 * c.noc;
  c.fr = 100.0 * static_cast<double>(c.nnr + c.noc) / static_cast<double>(c.n);
  c.pdr = 100.0 * static_cast<double>(c.nmf + c.nsf + c.nnr + c.noc) / static_cast<double>(c.n);
  return c;
}

}  // namespace oracle
