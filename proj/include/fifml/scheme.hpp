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
 *   Injection-scheme planning: control commands, the scheme generator, the
 *   parameter checker and the license gate.
 *
 *   Scheme file:
 *
 *       FIFML-SCHEME 1
 *       scheme_id|simulation_method_id|start_offset_ms|duration_ms|process_selector|target_file
 */

#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fifml/core.hpp"
#include "fifml/library.hpp"

namespace fifml {

/// Which processes a fault applies to: `all`, `task:<name>` or `pid:<n>`.
/// The concrete pid binds when the scheme is executed.
struct TargetScope {
  std::string process_selector = "all";
  std::optional<std::string> file_name;
  bool operator==(const TargetScope&) const = default;
};

inline bool is_valid_process_selector(std::string_view s) {
  if (s == "all") return true;
  if (s.starts_with("task:")) return s.size() > 5 && s.find_first_of("| \t\n") == std::string_view::npos;
  if (s.starts_with("pid:")) return parse_int<int>(s.substr(4)).has_value();
  return false;
}

/// Either a query filter or an explicit list of simulation_method_ids.
struct ModeSelector {
  QueryFilter filter;
  std::vector<std::string> ids;
};

struct ControlCommand {
  ModeSelector selector;
  std::int64_t start_offset_ms = 0;
  std::int64_t duration_ms = 2000;
  TargetScope scope;
  int repeat_count = 1;
};

struct SchemeEntry {
  FaultMode fault;
  std::int64_t start_offset_ms = 0;
  std::int64_t duration_ms = 1;
  std::string process_selector = "all";
  std::optional<std::string> target_file;

  std::int64_t end_offset_ms() const { return start_offset_ms + duration_ms; }
  bool operator==(const SchemeEntry&) const = default;
};

struct InjectionScheme {
  std::string scheme_id;
  std::vector<SchemeEntry> entries;
  bool operator==(const InjectionScheme&) const = default;
};

inline std::vector<Finding> validate_command(const ControlCommand& c) {
  std::vector<Finding> out;
  if (c.start_offset_ms < 0) out.push_back({"command", "start_offset_ms", "must be >= 0"});
  if (c.duration_ms <= 0) out.push_back({"command", "duration_ms", "must be > 0"});
  if (c.repeat_count < 1) out.push_back({"command", "repeat_count", "must be >= 1"});
  if (!is_valid_process_selector(c.scope.process_selector))
    out.push_back({"command", "process_selector", "expected all, task:<name> or pid:<n>"});
  if (c.scope.file_name && (c.scope.file_name->empty() ||
                            c.scope.file_name->find_first_of("| \t\n") != std::string::npos))
    out.push_back({"command", "file_name", "must be a non-empty token"});
  return out;
}

namespace detail {
inline std::string canonical_command(const ControlCommand& c) {
  std::string s = "sel:";
  if (c.selector.filter.module) s += "m=" + std::string(module_tag(*c.selector.filter.module)) + ";";
  if (c.selector.filter.scenario) s += "s=" + std::string(scenario_code(*c.selector.filter.scenario)) + ";";
  if (c.selector.filter.id) s += "i=" + *c.selector.filter.id + ";";
  if (c.selector.filter.target_function) s += "t=" + *c.selector.filter.target_function + ";";
  for (const auto& id : c.selector.ids) s += "id=" + id + ";";
  s += "|start=" + std::to_string(c.start_offset_ms) + "|dur=" + std::to_string(c.duration_ms) +
       "|proc=" + c.scope.process_selector + "|file=" + c.scope.file_name.value_or("") +
       "|rep=" + std::to_string(c.repeat_count);
  return s;
}
}  // namespace detail

/// Plans one entry per (selected mode x repeat), library order then repeat
/// index. Pure in (command, library).
inline InjectionScheme generate_scheme(const ControlCommand& command, const Library& library) {
  if (auto f = validate_command(command); !f.empty()) {
    std::vector<std::string> lines;
    for (const auto& x : f) lines.push_back(x.to_string());
    throw ValidationError("invalid control command", std::move(lines));
  }

  std::vector<const FaultMode*> selected;
  if (!command.selector.ids.empty()) {
    std::vector<std::string> unknown;
    std::vector<std::size_t> positions;
    for (const auto& id : command.selector.ids) {
      auto pos = library.position(id);
      if (!pos) unknown.push_back("unknown simulation_method_id '" + id + "'");
      else if (library.modes()[*pos].simulation_method_id == id && command.selector.filter.matches(library.modes()[*pos]))
        positions.push_back(*pos);
    }
    if (!unknown.empty()) throw ValidationError("invalid control command", std::move(unknown));
    std::sort(positions.begin(), positions.end());
    positions.erase(std::unique(positions.begin(), positions.end()), positions.end());
    for (auto p : positions) selected.push_back(&library.modes()[p]);
  } else if (command.selector.filter.id) {
    if (const auto* m = library.find(*command.selector.filter.id); m && command.selector.filter.matches(*m))
      selected.push_back(m);
  } else {
    for (const auto& m : library.modes())
      if (command.selector.filter.matches(m)) selected.push_back(&m);
  }
  if (selected.empty()) throw EmptySelectionError();

  InjectionScheme scheme;
  scheme.scheme_id =
      "sch-" + hex64(fnv1a64(detail::canonical_command(command), library.fingerprint())).substr(0, 12);
  scheme.entries.reserve(selected.size() * static_cast<std::size_t>(command.repeat_count));
  for (const auto* m : selected)
    for (int r = 0; r < command.repeat_count; ++r)
      scheme.entries.push_back({*m, command.start_offset_ms, command.duration_ms, command.scope.process_selector,
                                command.scope.file_name});
  return scheme;
}

/// The parameter checker. Zero findings iff the scheme is executable
/// against `library`.
inline std::vector<Finding> validate_scheme(const InjectionScheme& scheme, const Library& library) {
  std::vector<Finding> out;
  if (scheme.scheme_id.empty() || scheme.scheme_id.find_first_of("| \t\n") != std::string::npos)
    out.push_back({"scheme", "scheme_id", "must be a non-empty token"});
  if (scheme.entries.empty()) out.push_back({"scheme", "entries", "scheme has no entries"});
  for (std::size_t i = 0; i < scheme.entries.size(); ++i) {
    const auto& e = scheme.entries[i];
    const std::string subject = "entry " + std::to_string(i) + " (" + e.fault.simulation_method_id + ")";
    if (e.start_offset_ms < 0) out.push_back({subject, "start_offset_ms", "must be >= 0"});
    if (e.duration_ms <= 0) out.push_back({subject, "duration_ms", "must be > 0"});
    if (!is_valid_process_selector(e.process_selector))
      out.push_back({subject, "process_selector", "expected all, task:<name> or pid:<n>"});
    if (e.target_file && e.target_file->empty()) out.push_back({subject, "target_file", "empty"});
    if (!library.find(e.fault.simulation_method_id))
      out.push_back({subject, "fault", "not present in the source library"});
    if (e.fault.target_function.empty()) out.push_back({subject, "target_function", "empty"});
    auto kv = validate_attach_data(subject, e.fault.simulation_method_type, e.fault.attach_data);
    out.insert(out.end(), kv.begin(), kv.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Scheme files
// ---------------------------------------------------------------------------

inline constexpr std::string_view kSchemeHeader = "FIFML-SCHEME 1";

inline void save_scheme(const InjectionScheme& s, std::ostream& out) {
  out << kSchemeHeader << '\n';
  for (const auto& e : s.entries)
    out << s.scheme_id << '|' << e.fault.simulation_method_id << '|' << e.start_offset_ms << '|' << e.duration_ms
        << '|' << e.process_selector << '|' << e.target_file.value_or("") << '\n';
  out.flush();
  if (!out) throw IoError("write failure while saving scheme");
}

/// Resolves every entry's fault against `library`.
inline InjectionScheme load_scheme(std::istream& in, const Library& library) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || trim(line) != kSchemeHeader)
    throw ParseError(1, "expected header '" + std::string(kSchemeHeader) + "'");
  InjectionScheme s;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view sv = line;
    if (!sv.empty() && sv.back() == '\r') sv.remove_suffix(1);
    if (sv.empty() || sv[0] == '#') continue;
    auto f = split(sv, '|');
    if (f.size() != 6) throw ParseError(line_no, "expected 6 '|'-separated fields");
    if (s.scheme_id.empty()) s.scheme_id = std::string(f[0]);
    else if (s.scheme_id != f[0]) throw ParseError(line_no, "scheme_id changes mid-file");
    const auto* mode = library.find(f[1]);
    if (!mode) throw ParseError(line_no, "unknown simulation_method_id '" + std::string(f[1]) + "'");
    auto start = parse_int<std::int64_t>(f[2]);
    auto dur = parse_int<std::int64_t>(f[3]);
    if (!start || !dur) throw ParseError(line_no, "offset and duration must be integers");
    SchemeEntry e{*mode, *start, *dur, std::string(f[4]), std::nullopt};
    if (!f[5].empty()) e.target_file = std::string(f[5]);
    s.entries.push_back(std::move(e));
  }
  return s;
}

inline InjectionScheme load_scheme_file(const std::filesystem::path& path, const Library& library) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open scheme '" + path.string() + "'");
  return load_scheme(in, library);
}

// ---------------------------------------------------------------------------
// License gate
// ---------------------------------------------------------------------------

struct LicenseConfig {
  std::filesystem::path path;
};

struct LicenseCheck {
  bool ok = false;
  std::string reason;
  explicit operator bool() const { return ok; }
};

inline constexpr std::string_view kLicenseHeader = "FIFML-LICENSE 1";

/// License text: header, free-form `key=value` lines, then
/// `checksum=<fnv1a64 of everything above>`.
inline std::string make_license_text(const std::string& licensee) {
  std::string body = std::string(kLicenseHeader) + "\nlicensee=" + licensee + "\n";
  return body + "checksum=" + hex64(fnv1a64(body)) + "\n";
}

inline LicenseCheck check_license(const LicenseConfig& config) {
  std::error_code ec;
  if (config.path.empty() || !std::filesystem::is_regular_file(config.path, ec))
    return {false, "license file not found"};
  std::ifstream in(config.path, std::ios::binary);
  if (!in) return {false, "license file not found"};
  std::string body, line;
  std::optional<std::string> checksum;
  while (std::getline(in, line)) {
    if (line.starts_with("checksum=")) {
      checksum = line.substr(9);
      break;
    }
    body += line;
    body += '\n';
  }
  if (!body.starts_with(kLicenseHeader) || !checksum || *checksum != hex64(fnv1a64(body)))
    return {false, "license invalid"};
  return {true, {}};
}

}  // namespace fifml
