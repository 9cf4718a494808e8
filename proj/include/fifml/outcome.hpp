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
 *   Monitor and log: five-level outcome classification and the on-disk
 *   record store.
 *
 *   A store is a directory holding one `<experiment_id>.rec` per experiment,
 *   a `campaign.toc` manifest, the baseline latency samples and snapshots of
 *   the library and workload the campaign ran with.
 */

#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "fifml/core.hpp"
#include "fifml/injection.hpp"
#include "fifml/library.hpp"
#include "fifml/scheme.hpp"
#include "fifml/simulated_target.hpp"

namespace fifml {

/// Ordered by severity: Normal < Light < Affect < NoResponse < Crash.
enum class OutcomeClass { Normal, Light, Affect, NoResponse, Crash };

inline constexpr std::array<OutcomeClass, 5> kAllOutcomes = {
    OutcomeClass::Crash, OutcomeClass::NoResponse, OutcomeClass::Affect, OutcomeClass::Light, OutcomeClass::Normal};

constexpr std::string_view outcome_name(OutcomeClass c) {
  switch (c) {
    case OutcomeClass::Crash: return "Crash";
    case OutcomeClass::NoResponse: return "NoResponse";
    case OutcomeClass::Affect: return "Affect";
    case OutcomeClass::Light: return "Light";
    case OutcomeClass::Normal: return "Normal";
  }
  return "?";
}

inline std::optional<OutcomeClass> parse_outcome(std::string_view s) {
  for (auto c : kAllOutcomes)
    if (s == outcome_name(c)) return c;
  return std::nullopt;
}

/// First matching rule wins: crash, no progress, any Failed task, any
/// CompletedWithErrors task, otherwise Normal.
inline OutcomeClass classify_outcome(const TargetObservation& o) {
  if (o.terminal == TerminalEvent::None)
    for (const auto& t : o.tasks)
      if (!t.status) throw Error("incomplete observation: task '" + t.name + "' has no completion status");
  if (o.terminal == TerminalEvent::Crash) return OutcomeClass::Crash;
  if (o.terminal == TerminalEvent::NoProgress) return OutcomeClass::NoResponse;
  bool with_errors = false;
  for (const auto& t : o.tasks) {
    if (t.status == TaskStatus::Failed) return OutcomeClass::Affect;
    with_errors |= t.status == TaskStatus::CompletedWithErrors;
  }
  return with_errors ? OutcomeClass::Light : OutcomeClass::Normal;
}

struct ExperimentRecord {
  std::string experiment_id;
  std::vector<SchemeEntry> entries;  // one unless the campaign combined faults
  TargetObservation observation;
  OutcomeClass outcome = OutcomeClass::Normal;
  LatencySamples taf_samples;
  std::int64_t started_at_ms = 0;
  std::int64_t finished_at_ms = 0;

  bool operator==(const ExperimentRecord&) const = default;
};

/// The only way records are built: outcome and TAF samples are derived
/// from the observation, never supplied.
inline ExperimentRecord make_record(std::string id, std::vector<SchemeEntry> entries, TargetObservation observation) {
  ExperimentRecord r;
  r.experiment_id = std::move(id);
  r.entries = std::move(entries);
  r.outcome = classify_outcome(observation);
  r.taf_samples = post_injection_samples(observation, r.entries);
  r.started_at_ms = observation.started_at_ms;
  r.finished_at_ms = observation.finished_at_ms;
  r.observation = std::move(observation);
  return r;
}

inline std::string experiment_id_for(std::size_t ordinal) {
  std::string n = std::to_string(ordinal);
  return "exp-" + std::string(n.size() < 6 ? 6 - n.size() : 0, '0') + n;
}

// ---------------------------------------------------------------------------
// Record text form
// ---------------------------------------------------------------------------

inline constexpr std::string_view kRecordHeader = "FIFML-REC 1";

inline std::string record_to_string(const ExperimentRecord& r) {
  std::ostringstream os;
  os << kRecordHeader << '\n';
  os << "experiment_id=" << r.experiment_id << '\n';
  os << "started_at=" << r.started_at_ms << '\n';
  os << "finished_at=" << r.finished_at_ms << '\n';
  os << "outcome=" << outcome_name(r.outcome) << '\n';
  os << "terminal=" << terminal_event_name(r.observation.terminal) << '\n';
  for (const auto& e : r.entries)
    os << "entry=" << e.start_offset_ms << '|' << e.duration_ms << '|' << e.process_selector << '|'
       << e.target_file.value_or("") << '|' << format_mode(e.fault) << '\n';
  for (const auto& t : r.observation.tasks)
    os << "task=" << t.name << '|' << (t.status ? task_status_name(*t.status) : "-") << '\n';
  for (const auto& s : r.observation.samples)
    os << "sample=" << s.function << '|' << s.pid << '|' << s.start_ms << '|' << s.latency_ms << '\n';
  os << "events=" << r.observation.events.size() << '\n';
  for (const auto& e : r.observation.events) os << e.to_line() << '\n';
  return os.str();
}

inline ExperimentRecord parse_record(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line != kRecordHeader)
    throw ParseError(1, "expected header '" + std::string(kRecordHeader) + "'");

  std::string id;
  std::vector<SchemeEntry> entries;
  TargetObservation obs;
  std::optional<OutcomeClass> stored;
  std::optional<std::int64_t> started, finished;
  std::optional<std::size_t> event_count;

  auto int_of = [&](std::string_view v) {
    auto n = parse_int<std::int64_t>(v);
    if (!n) throw ParseError(line_no, "expected integer, got '" + std::string(v) + "'");
    return *n;
  };

  while (!event_count && std::getline(in, line)) {
    ++line_no;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(line_no, "expected key=value");
    std::string_view key(line.data(), eq);
    std::string_view value(line.data() + eq + 1, line.size() - eq - 1);
    if (key == "experiment_id") {
      id = std::string(value);
    } else if (key == "started_at") {
      started = int_of(value);
    } else if (key == "finished_at") {
      finished = int_of(value);
    } else if (key == "outcome") {
      stored = parse_outcome(value);
      if (!stored) throw ParseError(line_no, "unknown outcome '" + std::string(value) + "'");
    } else if (key == "terminal") {
      auto t = parse_terminal_event(value);
      if (!t) throw ParseError(line_no, "unknown terminal event '" + std::string(value) + "'");
      obs.terminal = *t;
    } else if (key == "entry") {
      std::string_view rest = value;
      std::array<std::string_view, 4> head;
      for (auto& h : head) {
        auto bar = rest.find('|');
        if (bar == std::string_view::npos) throw ParseError(line_no, "malformed entry");
        h = rest.substr(0, bar);
        rest.remove_prefix(bar + 1);
      }
      SchemeEntry e{parse_mode(rest, line_no), int_of(head[0]), int_of(head[1]), std::string(head[2]), std::nullopt};
      if (!head[3].empty()) e.target_file = std::string(head[3]);
      entries.push_back(std::move(e));
    } else if (key == "task") {
      auto f = split(value, '|');
      if (f.size() != 2) throw ParseError(line_no, "malformed task line");
      TaskReport t{std::string(f[0]), std::nullopt};
      if (f[1] != "-") {
        t.status = parse_task_status(f[1]);
        if (!t.status) throw ParseError(line_no, "unknown task status '" + std::string(f[1]) + "'");
      }
      obs.tasks.push_back(std::move(t));
    } else if (key == "sample") {
      auto f = split(value, '|');
      if (f.size() != 4) throw ParseError(line_no, "malformed sample line");
      obs.samples.push_back({std::string(f[0]), static_cast<int>(int_of(f[1])), int_of(f[2]), int_of(f[3])});
    } else if (key == "events") {
      event_count = static_cast<std::size_t>(int_of(value));
    } else {
      throw ParseError(line_no, "unknown key '" + std::string(key) + "'");
    }
  }
  if (id.empty() || !stored || !started || !finished || !event_count)
    throw ParseError(line_no, "record is missing required header keys");
  for (std::size_t i = 0; i < *event_count; ++i) {
    if (!std::getline(in, line)) throw ParseError(line_no + 1, "record truncated: expected more event lines");
    ++line_no;
    obs.events.push_back(parse_event_line(line, line_no));
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty()) throw ParseError(line_no, "trailing data after event log");
  }
  obs.started_at_ms = *started;
  obs.finished_at_ms = *finished;

  ExperimentRecord r;
  try {
    r = make_record(id, std::move(entries), std::move(obs));
  } catch (const Error& e) {
    throw ParseError(0, e.what());
  }
  if (r.outcome != *stored)
    throw ParseError(0, "stored outcome " + std::string(outcome_name(*stored)) + " disagrees with observation (" +
                            std::string(outcome_name(r.outcome)) + ")");
  return r;
}

// ---------------------------------------------------------------------------
// Store
// ---------------------------------------------------------------------------

struct CampaignManifest {
  std::string system;
  std::string library_hash;
  std::string workload_hash;
  std::string scheme_id;
  std::uint64_t seed = 0;
  std::vector<std::string> experiment_ids;  // execution order

  bool operator==(const CampaignManifest&) const = default;
};

class RecordStore {
 public:
  static constexpr std::string_view kManifestName = "campaign.toc";
  static constexpr std::string_view kBaselineName = "baseline.samples";
  static constexpr std::string_view kLibraryName = "library.lib";
  static constexpr std::string_view kWorkloadName = "workload.work";

  explicit RecordStore(std::filesystem::path dir) : dir_(std::move(dir)) {}

  const std::filesystem::path& dir() const noexcept { return dir_; }

  void create() const {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw IoError("cannot create store '" + dir_.string() + "': " + ec.message());
  }

  void persist_record(const ExperimentRecord& r) const {
    write_file(dir_ / (r.experiment_id + ".rec"), record_to_string(r));
  }

  /// All records in the store, ordered by experiment_id.
  std::vector<ExperimentRecord> load_records() const {
    std::vector<std::filesystem::path> files;
    std::error_code ec;
    if (!std::filesystem::is_directory(dir_, ec)) throw IoError("store '" + dir_.string() + "' is not a directory");
    for (const auto& de : std::filesystem::directory_iterator(dir_, ec))
      if (de.is_regular_file() && de.path().extension() == ".rec") files.push_back(de.path());
    if (ec) throw IoError("cannot list store '" + dir_.string() + "': " + ec.message());
    std::sort(files.begin(), files.end());
    std::vector<ExperimentRecord> out;
    out.reserve(files.size());
    for (const auto& f : files) out.push_back(load_record_file(f));
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.experiment_id < b.experiment_id; });
    return out;
  }

  static ExperimentRecord load_record_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open record '" + path.string() + "'");
    try {
      return parse_record(in);
    } catch (const ParseError& e) {
      throw ParseError(e.line(), path.string() + ": " + e.what());
    }
  }

  void write_manifest(const CampaignManifest& m) const {
    std::ostringstream os;
    os << "FIFML-TOC 1\n";
    os << "system=" << m.system << '\n';
    os << "library_hash=" << m.library_hash << '\n';
    os << "workload_hash=" << m.workload_hash << '\n';
    os << "scheme_id=" << m.scheme_id << '\n';
    os << "seed=" << m.seed << '\n';
    for (const auto& id : m.experiment_ids) os << "experiment=" << id << '\n';
    write_file(dir_ / std::string(kManifestName), os.str());
  }

  CampaignManifest read_manifest() const {
    const auto path = dir_ / std::string(kManifestName);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open manifest '" + path.string() + "'");
    std::string line;
    std::size_t line_no = 1;
    if (!std::getline(in, line) || line != "FIFML-TOC 1") throw ParseError(1, path.string() + ": bad manifest header");
    CampaignManifest m;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      auto eq = line.find('=');
      if (eq == std::string::npos) throw ParseError(line_no, path.string() + ": expected key=value");
      auto key = line.substr(0, eq);
      auto value = line.substr(eq + 1);
      if (key == "system") m.system = value;
      else if (key == "library_hash") m.library_hash = value;
      else if (key == "workload_hash") m.workload_hash = value;
      else if (key == "scheme_id") m.scheme_id = value;
      else if (key == "seed") {
        auto s = parse_int<std::uint64_t>(value);
        if (!s) throw ParseError(line_no, path.string() + ": bad seed");
        m.seed = *s;
      } else if (key == "experiment") m.experiment_ids.push_back(value);
      else throw ParseError(line_no, path.string() + ": unknown key '" + key + "'");
    }
    return m;
  }

  void write_baseline(const LatencySamples& samples) const {
    std::ostringstream os;
    os << "FIFML-BASELINE 1\n";
    for (const auto& [fn, v] : samples) {
      os << fn << '|';
      for (std::size_t i = 0; i < v.size(); ++i) {
        std::array<char, 32> buf{};
        auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v[i]);
        os << (i ? "," : "") << std::string_view(buf.data(), static_cast<std::size_t>(res.ptr - buf.data()));
      }
      os << '\n';
    }
    write_file(dir_ / std::string(kBaselineName), os.str());
  }

  LatencySamples read_baseline() const {
    const auto path = dir_ / std::string(kBaselineName);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open baseline '" + path.string() + "'");
    std::string line;
    std::size_t line_no = 1;
    if (!std::getline(in, line) || line != "FIFML-BASELINE 1")
      throw ParseError(1, path.string() + ": bad baseline header");
    LatencySamples out;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      auto f = split(line, '|');
      if (f.size() != 2) throw ParseError(line_no, path.string() + ": malformed baseline line");
      auto& v = out[std::string(f[0])];
      for (auto x : split(f[1], ',')) {
        auto n = parse_double(x);
        if (!n) throw ParseError(line_no, path.string() + ": bad sample '" + std::string(x) + "'");
        v.push_back(*n);
      }
    }
    return out;
  }

  void write_snapshot(std::string_view name, const std::string& content) const {
    write_file(dir_ / std::string(name), content);
  }

  std::string read_snapshot(std::string_view name) const {
    const auto path = dir_ / std::string(name);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  }

 private:
  static void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << content;
    out.flush();
    if (!out) throw IoError("write failure on '" + path.string() + "'");
  }

  std::filesystem::path dir_;
};

}  // namespace fifml
