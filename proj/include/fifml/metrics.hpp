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
 *   Performance and reliability metrics.
 *
 *       PT   = 3 * PSD + WP
 *       FID  = w_s * NSF + w_m * NMF + w_r * NNR + w_c * NOC
 *       PL_f = exp(-FID / N) * 100
 *       FR   = (NNR + NOC) / N * 100
 *       PDR  = (NMF + NSF + NNR + NOC) / N * 100
 *
 *   Influence bands are left-closed: TAF < PT is none, PT <= TAF < 5 PT is
 *   mild, TAF >= 5 PT is serious.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "fifml/core.hpp"
#include "fifml/injection.hpp"
#include "fifml/outcome.hpp"

namespace fifml {

struct PerfProfileEntry {
  double psd = 0.0;  // population standard deviation
  double wp = 0.0;   // worst (max) sample
  double pt = 0.0;
  bool operator==(const PerfProfileEntry&) const = default;
};

/// Keyed by target function.
using PerfProfile = std::map<std::string, PerfProfileEntry>;

inline PerfProfileEntry compute_pt(std::span<const double> samples) {
  if (samples.size() < 2)
    throw InsufficientDataError("PT needs at least 2 baseline samples, got " + std::to_string(samples.size()));
  const double n = static_cast<double>(samples.size());
  const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : samples) ss += (x - mean) * (x - mean);
  PerfProfileEntry e;
  e.psd = std::sqrt(ss / n);
  e.wp = *std::max_element(samples.begin(), samples.end());
  e.pt = 3.0 * e.psd + e.wp;
  return e;
}

inline PerfProfile build_profiles(const LatencySamples& baseline) {
  PerfProfile out;
  for (const auto& [fn, v] : baseline) {
    try {
      out[fn] = compute_pt(v);
    } catch (const InsufficientDataError& e) {
      throw InsufficientDataError(fn + ": " + e.what());
    }
  }
  return out;
}

enum class InfluenceLevel { NoInfluence, MildInfluence, SeriousInfluence };

constexpr std::string_view influence_name(InfluenceLevel l) {
  switch (l) {
    case InfluenceLevel::NoInfluence: return "NoInfluence";
    case InfluenceLevel::MildInfluence: return "MildInfluence";
    case InfluenceLevel::SeriousInfluence: return "SeriousInfluence";
  }
  return "?";
}

inline InfluenceLevel classify_influence(double taf, double pt) {
  if (!(pt > 0.0)) throw DomainError("classify_influence requires pt > 0");
  if (!(taf >= 0.0)) throw DomainError("classify_influence requires taf >= 0");
  if (taf < pt) return InfluenceLevel::NoInfluence;
  if (taf < 5.0 * pt) return InfluenceLevel::MildInfluence;
  return InfluenceLevel::SeriousInfluence;
}

struct CampaignStatistics {
  std::uint64_t n = 0;
  std::uint64_t nmf = 0;
  std::uint64_t nsf = 0;
  std::uint64_t nnr = 0;
  std::uint64_t noc = 0;

  bool valid() const { return nmf + nsf + nnr + noc <= n; }
  bool operator==(const CampaignStatistics&) const = default;
};

/// Weights as printed: serious 0.4, mild 1.0, no response 2.0, crash 3.0.
struct FidWeights {
  double serious = 0.4;
  double mild = 1.0;
  double no_response = 2.0;
  double crash = 3.0;
  bool operator==(const FidWeights&) const = default;
};

inline double compute_fid(const CampaignStatistics& s, const FidWeights& w = {}) {
  return w.serious * static_cast<double>(s.nsf) + w.mild * static_cast<double>(s.nmf) +
         w.no_response * static_cast<double>(s.nnr) + w.crash * static_cast<double>(s.noc);
}

inline double compute_plf(double fid, std::uint64_t n) {
  if (n == 0) throw DomainError("PL_f requires n > 0");
  if (fid < 0.0) throw DomainError("PL_f requires fid >= 0");
  return std::exp(-fid / static_cast<double>(n)) * 100.0;
}

inline double compute_fr(const CampaignStatistics& s, std::uint64_t n) {
  if (n == 0) throw DomainError("FR requires n > 0");
  return static_cast<double>(s.nnr + s.noc) / static_cast<double>(n) * 100.0;
}

inline double compute_pdr(const CampaignStatistics& s, std::uint64_t n) {
  if (n == 0) throw DomainError("PDR requires n > 0");
  return static_cast<double>(s.nmf + s.nsf + s.nnr + s.noc) / static_cast<double>(n) * 100.0;
}

enum class TafStatistic { Mean, Median };

inline std::optional<TafStatistic> parse_taf_statistic(std::string_view s) {
  if (s == "mean") return TafStatistic::Mean;
  if (s == "median") return TafStatistic::Median;
  return std::nullopt;
}

inline double taf_of(std::span<const double> samples, TafStatistic stat) {
  if (samples.empty()) throw InsufficientDataError("TAF of an empty sample set");
  if (stat == TafStatistic::Mean)
    return std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(samples.size());
  std::vector<double> v(samples.begin(), samples.end());
  std::sort(v.begin(), v.end());
  const auto m = v.size() / 2;
  return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2.0;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

using OutcomeCounts = std::array<std::uint64_t, 5>;  // indexed by OutcomeClass

struct ReportOptions {
  TafStatistic taf = TafStatistic::Mean;
  std::optional<std::uint64_t> n_override;
  FidWeights weights;
};

struct Discrepancy {
  std::string metric;
  double computed = 0.0;
  double reference = 0.0;
  bool operator==(const Discrepancy&) const = default;
};

struct SystemReport {
  std::string system;
  CampaignStatistics stats;
  double fid = 0.0;
  double plf = 100.0;
  double fr = 0.0;
  double pdr = 0.0;
  std::map<ModuleTag, OutcomeCounts> distribution;
  std::vector<Discrepancy> discrepancies;
  bool operator==(const SystemReport&) const = default;
};

inline SystemReport report_from_statistics(std::string system, const CampaignStatistics& stats,
                                           const ReportOptions& options = {}) {
  if (!stats.valid()) throw DomainError(system + ": nmf + nsf + nnr + noc exceeds n");
  SystemReport r;
  r.system = std::move(system);
  r.stats = stats;
  if (options.n_override) r.stats.n = *options.n_override;
  if (!r.stats.valid()) throw DomainError(r.system + ": nmf + nsf + nnr + noc exceeds n");
  r.fid = compute_fid(r.stats, options.weights);
  r.plf = compute_plf(r.fid, r.stats.n);
  r.fr = compute_fr(r.stats, r.stats.n);
  r.pdr = compute_pdr(r.stats, r.stats.n);
  return r;
}

/// Influence of one record: the worst band over its entries. Entries whose
/// target function produced no post-injection samples have no influence.
inline InfluenceLevel record_influence(const ExperimentRecord& rec, const PerfProfile& profiles, TafStatistic stat) {
  auto worst = InfluenceLevel::NoInfluence;
  for (const auto& e : rec.entries) {
    const auto& fn = e.fault.target_function;
    auto it = rec.taf_samples.find(fn);
    if (it == rec.taf_samples.end() || it->second.empty()) continue;
    auto p = profiles.find(fn);
    if (p == profiles.end()) throw Error("no baseline profile for function '" + fn + "'");
    worst = std::max(worst, classify_influence(taf_of(it->second, stat), p->second.pt));
  }
  return worst;
}

inline SystemReport build_report(std::string system, std::span<const ExperimentRecord> records,
                                 const PerfProfile& profiles, const ReportOptions& options = {}) {
  if (records.empty()) throw Error(system + ": no records");
  CampaignStatistics s;
  s.n = records.size();
  std::map<ModuleTag, OutcomeCounts> dist;
  for (const auto& rec : records) {
    if (rec.entries.empty()) throw Error(rec.experiment_id + ": record has no scheme entry");
    dist[rec.entries.front().fault.module][static_cast<std::size_t>(rec.outcome)]++;
    if (rec.outcome == OutcomeClass::Crash) {
      ++s.noc;
    } else if (rec.outcome == OutcomeClass::NoResponse) {
      ++s.nnr;
    } else {
      switch (record_influence(rec, profiles, options.taf)) {
        case InfluenceLevel::MildInfluence: ++s.nmf; break;
        case InfluenceLevel::SeriousInfluence: ++s.nsf; break;
        case InfluenceLevel::NoInfluence: break;
      }
    }
  }
  auto r = report_from_statistics(std::move(system), s, options);
  r.distribution = std::move(dist);
  return r;
}

// ---------------------------------------------------------------------------
// Formatting
// ---------------------------------------------------------------------------

inline double round_half_up(double x, int decimals = 2) {
  const double scale = std::pow(10.0, decimals);
  return std::floor(x * scale + 0.5 + 1e-9) / scale;
}

inline std::string fixed2(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", round_half_up(x, 2));
  return buf;
}

/// Reference values keyed `system.metric`, as in the kv format.
using ReferenceValues = std::map<std::string, double>;

inline ReferenceValues parse_reference(std::istream& in) {
  ReferenceValues out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto sv = trim(line);
    if (sv.empty() || sv[0] == '#') continue;
    auto eq = sv.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'system.metric = value'");
    auto key = trim(sv.substr(0, eq));
    auto v = parse_double(trim(sv.substr(eq + 1)));
    if (key.empty() || !v) throw ParseError(line_no, "expected 'system.metric = value'");
    out[std::string(key)] = *v;
  }
  return out;
}

inline ReferenceValues load_reference_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open reference '" + path.string() + "'");
  try {
    return parse_reference(in);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path.string() + ": " + e.what());
  }
}

/// Flags every metric whose 2-decimal value differs from the reference by
/// more than `tolerance` percentage points.
inline void compare_with_reference(SystemReport& r, const ReferenceValues& ref, double tolerance = 0.01) {
  r.discrepancies.clear();
  const std::array<std::pair<std::string_view, double>, 4> metrics = {
      {{"fr", r.fr}, {"pdr", r.pdr}, {"plf", r.plf}, {"fid", r.fid}}};
  for (const auto& [name, value] : metrics) {
    auto it = ref.find(r.system + "." + std::string(name));
    if (it == ref.end()) continue;
    if (std::fabs(round_half_up(value) - it->second) > tolerance + 1e-9)
      r.discrepancies.push_back({std::string(name), value, it->second});
  }
}

inline std::string report_to_kv(std::span<const SystemReport> reports) {
  std::ostringstream os;
  for (const auto& r : reports) {
    const auto& p = r.system;
    os << p << ".n = " << r.stats.n << '\n'
       << p << ".nmf = " << r.stats.nmf << '\n'
       << p << ".nsf = " << r.stats.nsf << '\n'
       << p << ".nnr = " << r.stats.nnr << '\n'
       << p << ".noc = " << r.stats.noc << '\n'
       << p << ".fid = " << fixed2(r.fid) << '\n'
       << p << ".plf = " << fixed2(r.plf) << '\n'
       << p << ".fr = " << fixed2(r.fr) << '\n'
       << p << ".pdr = " << fixed2(r.pdr) << '\n';
    for (const auto& [m, counts] : r.distribution)
      for (auto c : kAllOutcomes)
        os << p << ".dist." << module_tag(m) << '.' << outcome_name(c) << " = "
           << counts[static_cast<std::size_t>(c)] << '\n';
    for (const auto& d : r.discrepancies)
      os << p << ".discrepancy." << d.metric << " = computed " << fixed2(d.computed) << " reference "
         << fixed2(d.reference) << '\n';
  }
  return os.str();
}

namespace detail {
inline std::string pad(std::string s, std::size_t w, bool right = false) {
  if (s.size() >= w) return s;
  return right ? std::string(w - s.size(), ' ') + s : s + std::string(w - s.size(), ' ');
}
}  // namespace detail

inline std::string report_to_text(std::span<const SystemReport> reports) {
  using detail::pad;
  std::size_t w = 8;
  for (const auto& r : reports) w = std::max(w, r.system.size() + 2);
  std::ostringstream os;

  os << "Faults by impact\n";
  os << pad("system", w) << pad("NMF", 8, true) << pad("NSF", 8, true) << pad("NNR", 8, true) << pad("NOC", 8, true)
     << pad("N", 8, true) << '\n';
  for (const auto& r : reports)
    os << pad(r.system, w) << pad(std::to_string(r.stats.nmf), 8, true) << pad(std::to_string(r.stats.nsf), 8, true)
       << pad(std::to_string(r.stats.nnr), 8, true) << pad(std::to_string(r.stats.noc), 8, true)
       << pad(std::to_string(r.stats.n), 8, true) << '\n';

  os << "\nMetrics (%)\n";
  os << pad("system", w) << pad("FR", 9, true) << pad("PDR", 9, true) << pad("PL_f", 9, true) << pad("FID", 11, true)
     << '\n';
  for (const auto& r : reports)
    os << pad(r.system, w) << pad(fixed2(r.fr), 9, true) << pad(fixed2(r.pdr), 9, true) << pad(fixed2(r.plf), 9, true)
       << pad(fixed2(r.fid), 11, true) << '\n';

  for (const auto& r : reports) {
    if (r.distribution.empty()) continue;
    os << "\nOutcome distribution: " << r.system << '\n';
    for (const auto& [m, counts] : r.distribution) {
      const auto total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
      os << "  " << module_tag(m) << " (" << total << ")\n";
      for (auto c : kAllOutcomes) {
        const auto k = counts[static_cast<std::size_t>(c)];
        const auto bar = total ? static_cast<std::size_t>(std::llround(40.0 * static_cast<double>(k) /
                                                                       static_cast<double>(total)))
                               : 0;
        os << "    " << pad(std::string(outcome_name(c)), 11) << ' ' << pad(std::string(bar, '#'), 40) << ' '
           << k << '\n';
      }
    }
  }

  bool any = false;
  for (const auto& r : reports) any |= !r.discrepancies.empty();
  if (any) {
    os << "\nReference discrepancies\n";
    for (const auto& r : reports)
      for (const auto& d : r.discrepancies)
        os << "  " << r.system << ' ' << d.metric << ": computed " << fixed2(d.computed) << ", reference "
           << fixed2(d.reference) << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Counts files
// ---------------------------------------------------------------------------

/// `FIFML-COUNTS 1`, then `system|n|nmf|nsf|nnr|noc` per line.
inline std::vector<std::pair<std::string, CampaignStatistics>> parse_counts(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || trim(line) != "FIFML-COUNTS 1") throw ParseError(1, "expected header 'FIFML-COUNTS 1'");
  std::vector<std::pair<std::string, CampaignStatistics>> out;
  while (std::getline(in, line)) {
    ++line_no;
    auto sv = trim(line);
    if (sv.empty() || sv[0] == '#') continue;
    auto f = split(sv, '|');
    if (f.size() != 6 || f[0].empty()) throw ParseError(line_no, "expected 'system|n|nmf|nsf|nnr|noc'");
    std::array<std::uint64_t, 5> v{};
    for (std::size_t i = 0; i < 5; ++i) {
      auto x = parse_int<std::uint64_t>(f[i + 1]);
      if (!x) throw ParseError(line_no, "bad count '" + std::string(f[i + 1]) + "'");
      v[i] = *x;
    }
    CampaignStatistics s{v[0], v[1], v[2], v[3], v[4]};
    if (!s.valid()) throw ParseError(line_no, "nmf + nsf + nnr + noc exceeds n");
    out.emplace_back(std::string(f[0]), s);
  }
  return out;
}

inline std::vector<std::pair<std::string, CampaignStatistics>> load_counts_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open counts '" + path.string() + "'");
  try {
    return parse_counts(in);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path.string() + ": " + e.what());
  }
}

}  // namespace fifml
