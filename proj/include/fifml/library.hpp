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
 *   Fault-mode data model and the portable library format.
 *
 *   A library file is UTF-8 text with LF line endings:
 *
 *       FIFML-LIB 1
 *       # comment
 *       id|fault_mode_id|fault_mode_name|KFF|mem|munmap|errno=EINVAL,param=addr
 *
 *   A Library is immutable once constructed; concurrent readers are safe.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fifml/core.hpp"
#include "fifml/errno_table.hpp"

namespace fifml {

using AttachData = std::map<std::string, std::string>;

struct FaultMode {
  std::string simulation_method_id;
  std::string fault_mode_id;
  std::string fault_mode_name;
  ScenarioType simulation_method_type = ScenarioType::KernelFunctionFailure;
  ModuleTag module = ModuleTag::FileSystem;
  std::string target_function;
  AttachData attach_data;

  bool operator==(const FaultMode&) const = default;
};

inline constexpr std::string_view kLibraryHeader = "FIFML-LIB 1";

// ---------------------------------------------------------------------------
// attach_data contract
// ---------------------------------------------------------------------------

/// Keys every mode of the given scenario must carry.
inline std::span<const std::string_view> required_keys(ScenarioType s) {
  static constexpr std::string_view kff[] = {"errno"};
  static constexpr std::string_view dly[] = {"delay_ms"};
  static constexpr std::string_view buf[] = {"offset", "length", "pattern"};
  static constexpr std::string_view dwn[] = {"restart"};
  static constexpr std::string_view dos[] = {"signal"};
  static constexpr std::string_view cpu[] = {"load_factor"};
  switch (s) {
    case ScenarioType::KernelFunctionFailure: return kff;
    case ScenarioType::Delay: return dly;
    case ScenarioType::BufferDataError: return buf;
    case ScenarioType::DowntimeRestart: return dwn;
    case ScenarioType::KernelDenialOfService: return dos;
    case ScenarioType::CpuUsageIncrease: return cpu;
  }
  return {};
}

inline bool is_supported_signal(std::string_view s) {
  return s == "KILL" || s == "TERM" || s == "SEGV" || s == "STOP";
}

/// Parses `0xHH` or a decimal byte value.
inline std::optional<unsigned char> parse_byte_pattern(std::string_view s) {
  int base = 10;
  if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
    s.remove_prefix(2);
    base = 16;
  }
  unsigned v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v, base);
  if (s.empty() || ec != std::errc{} || p != s.data() + s.size() || v > 0xff) return std::nullopt;
  return static_cast<unsigned char>(v);
}

/// Checks required keys and the value domain of each known key.
inline std::vector<Finding> validate_attach_data(const std::string& subject, ScenarioType type,
                                                 const AttachData& data) {
  std::vector<Finding> out;
  for (auto key : required_keys(type))
    if (!data.contains(std::string(key)))
      out.push_back({subject, std::string(key), "missing required key"});

  auto value_of = [&](std::string_view key) -> const std::string* {
    auto it = data.find(std::string(key));
    return it == data.end() ? nullptr : &it->second;
  };
  auto non_negative_int = [&](std::string_view key) {
    if (const auto* v = value_of(key)) {
      auto n = parse_int<std::int64_t>(*v);
      if (!n || *n < 0) out.push_back({subject, std::string(key), "expected non-negative integer, got '" + *v + "'"});
    }
  };

  switch (type) {
    case ScenarioType::KernelFunctionFailure:
      if (const auto* v = value_of("errno"); v && !is_known_errno(*v))
        out.push_back({subject, "errno", "unrecognized errno symbol '" + *v + "'"});
      break;
    case ScenarioType::Delay:
      non_negative_int("delay_ms");
      break;
    case ScenarioType::BufferDataError:
      non_negative_int("offset");
      non_negative_int("length");
      if (const auto* v = value_of("pattern"); v && !parse_byte_pattern(*v))
        out.push_back({subject, "pattern", "expected byte value, got '" + *v + "'"});
      break;
    case ScenarioType::DowntimeRestart:
      if (const auto* v = value_of("restart"); v && *v != "true" && *v != "false")
        out.push_back({subject, "restart", "expected true or false, got '" + *v + "'"});
      break;
    case ScenarioType::KernelDenialOfService:
      if (const auto* v = value_of("signal"); v && !is_supported_signal(*v))
        out.push_back({subject, "signal", "unsupported signal '" + *v + "'"});
      break;
    case ScenarioType::CpuUsageIncrease:
      if (const auto* v = value_of("load_factor")) {
        auto f = parse_double(*v);
        if (!f || !(*f >= 1.0)) out.push_back({subject, "load_factor", "expected multiplier >= 1, got '" + *v + "'"});
      }
      break;
  }
  return out;
}

/// Checks id shape, target, and attach_data of one mode.
inline std::vector<Finding> validate_mode(const FaultMode& m) {
  std::vector<Finding> out;
  const std::string& id = m.simulation_method_id;
  const std::string prefix = "linux-" + std::string(module_tag(m.module)) + "-";
  if (id.rfind(prefix, 0) != 0) {
    out.push_back({id, "simulation_method_id", "expected prefix '" + prefix + "'"});
  } else {
    // trailing three dash-separated integers
    auto parts = split(id, '-');
    bool ok = parts.size() >= 5;
    for (std::size_t i = parts.size() >= 3 ? parts.size() - 3 : 0; ok && i < parts.size(); ++i)
      ok = parse_int<unsigned>(parts[i]).has_value();
    if (!ok) out.push_back({id, "simulation_method_id", "expected linux-<tag>[-<sub>]-<int>-<int>-<int>"});
  }
  if (m.target_function.empty()) out.push_back({id, "target_function", "empty"});
  auto more = validate_attach_data(id, m.simulation_method_type, m.attach_data);
  out.insert(out.end(), more.begin(), more.end());
  return out;
}

// ---------------------------------------------------------------------------
// Record text form
// ---------------------------------------------------------------------------

inline std::string format_attach_data(const AttachData& data) {
  std::string out;
  for (const auto& [k, v] : data) {
    if (!out.empty()) out.push_back(',');
    out += k;
    out.push_back('=');
    out += v;
  }
  return out;
}

inline std::string format_mode(const FaultMode& m) {
  std::string out;
  out += m.simulation_method_id;
  out += '|';
  out += m.fault_mode_id;
  out += '|';
  out += m.fault_mode_name;
  out += '|';
  out += scenario_code(m.simulation_method_type);
  out += '|';
  out += module_tag(m.module);
  out += '|';
  out += m.target_function;
  out += '|';
  out += format_attach_data(m.attach_data);
  return out;
}

/// Parses one 7-field record. Throws ParseError tagged with `line_no`.
inline FaultMode parse_mode(std::string_view line, std::size_t line_no) {
  auto fields = split(line, '|');
  if (fields.size() != 7)
    throw ParseError(line_no, "expected 7 '|'-separated fields, found " + std::to_string(fields.size()));
  FaultMode m;
  m.simulation_method_id = std::string(fields[0]);
  m.fault_mode_id = std::string(fields[1]);
  m.fault_mode_name = std::string(fields[2]);
  if (m.simulation_method_id.empty()) throw ParseError(line_no, "empty simulation_method_id");
  auto type = parse_scenario(fields[3]);
  if (!type || fields[3].size() != 3) throw ParseError(line_no, "unknown scenario type '" + std::string(fields[3]) + "'");
  m.simulation_method_type = *type;
  auto mod = parse_module_tag(fields[4]);
  if (!mod) throw ParseError(line_no, "unknown module tag '" + std::string(fields[4]) + "'");
  m.module = *mod;
  m.target_function = std::string(fields[5]);
  if (m.target_function.empty()) throw ParseError(line_no, "empty target_function");
  if (!fields[6].empty()) {
    for (auto pair : split(fields[6], ',')) {
      auto eq = pair.find('=');
      if (eq == std::string_view::npos || eq == 0)
        throw ParseError(line_no, "malformed attach_data pair '" + std::string(pair) + "'");
      std::string key(pair.substr(0, eq));
      std::string value(pair.substr(eq + 1));
      if (value.find('=') != std::string::npos)
        throw ParseError(line_no, "malformed attach_data pair '" + std::string(pair) + "'");
      if (!m.attach_data.emplace(std::move(key), std::move(value)).second)
        throw ParseError(line_no, "repeated attach_data key in '" + std::string(fields[6]) + "'");
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// Library
// ---------------------------------------------------------------------------

/// Filter for query_modes; unset fields match everything.
struct QueryFilter {
  std::optional<ModuleTag> module;
  std::optional<ScenarioType> scenario;
  std::optional<std::string> id;
  std::optional<std::string> target_function;

  bool matches(const FaultMode& m) const {
    return (!module || m.module == *module) && (!scenario || m.simulation_method_type == *scenario) &&
           (!id || m.simulation_method_id == *id) &&
           (!target_function || m.target_function == *target_function);
  }
  bool empty() const { return !module && !scenario && !id && !target_function; }
};

class Library {
 public:
  Library() : fingerprint_(compute_fingerprint()) {}

  /// Throws DuplicateIdError if two modes share a simulation_method_id.
  explicit Library(std::vector<FaultMode> modes, std::vector<std::string> comments = {})
      : modes_(std::move(modes)), comments_(std::move(comments)) {
    index_.reserve(modes_.size());
    for (std::size_t i = 0; i < modes_.size(); ++i)
      if (!index_.emplace(modes_[i].simulation_method_id, i).second)
        throw DuplicateIdError(modes_[i].simulation_method_id);
    fingerprint_ = compute_fingerprint();
  }

  std::size_t size() const noexcept { return modes_.size(); }
  bool empty() const noexcept { return modes_.empty(); }
  std::span<const FaultMode> modes() const noexcept { return modes_; }
  const std::vector<std::string>& comments() const noexcept { return comments_; }

  const FaultMode* find(std::string_view id) const {
    auto it = index_.find(std::string(id));
    return it == index_.end() ? nullptr : &modes_[it->second];
  }

  /// Position of `id` in library order.
  std::optional<std::size_t> position(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Content hash over the records (comments excluded).
  std::uint64_t fingerprint() const noexcept { return fingerprint_; }

  /// Records only; comments are presentation.
  bool operator==(const Library& other) const { return modes_ == other.modes_; }

 private:
  std::uint64_t compute_fingerprint() const {
    std::uint64_t h = fnv1a64(kLibraryHeader);
    for (const auto& m : modes_) {
      h = fnv1a64("\n", h);
      h = fnv1a64(format_mode(m), h);
    }
    return h;
  }

  std::vector<FaultMode> modes_;
  std::vector<std::string> comments_;
  std::unordered_map<std::string, std::size_t> index_;
  std::uint64_t fingerprint_ = 0;
};

/// Comments found before the first record are kept as library comments.
inline Library load_library(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError(1, "missing header '" + std::string(kLibraryHeader) + "'");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kLibraryHeader)
    throw ParseError(1, "expected header '" + std::string(kLibraryHeader) + "', found '" + line + "'");

  std::vector<FaultMode> modes;
  std::vector<std::string> comments;
  std::unordered_map<std::string, std::size_t> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (modes.empty()) comments.push_back(line.substr(1));
      continue;
    }
    auto mode = parse_mode(line, line_no);
    if (!seen.emplace(mode.simulation_method_id, line_no).second) throw DuplicateIdError(mode.simulation_method_id);
    modes.push_back(std::move(mode));
  }
  if (in.bad()) throw IoError("read failure while loading library");
  return Library(std::move(modes), std::move(comments));
}

inline Library load_library_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open library '" + path.string() + "'");
  try {
    return load_library(in);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path.string() + ": " + e.what());
  }
}

/// Writes the library and returns the number of records written.
inline std::size_t save_library(const Library& lib, std::ostream& out) {
  out << kLibraryHeader << '\n';
  for (const auto& c : lib.comments()) out << '#' << c << '\n';
  for (const auto& m : lib.modes()) out << format_mode(m) << '\n';
  out.flush();
  if (!out) throw IoError("write failure while saving library");
  return lib.size();
}

inline std::size_t save_library_file(const Library& lib, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write library '" + path.string() + "'");
  return save_library(lib, out);
}

inline std::string library_to_string(const Library& lib) {
  std::ostringstream os;
  save_library(lib, os);
  return os.str();
}

/// All modes matching every set filter field, in library order.
inline std::vector<FaultMode> query_modes(const Library& lib, const QueryFilter& filter) {
  std::vector<FaultMode> out;
  if (filter.id) {
    if (const auto* m = lib.find(*filter.id); m && filter.matches(*m)) out.push_back(*m);
    return out;
  }
  for (const auto& m : lib.modes())
    if (filter.matches(m)) out.push_back(m);
  return out;
}

inline std::vector<Finding> validate_library(const Library& lib) {
  std::vector<Finding> out;
  for (const auto& m : lib.modes()) {
    auto f = validate_mode(m);
    out.insert(out.end(), f.begin(), f.end());
  }
  return out;
}

inline std::map<ModuleTag, std::size_t> count_by_module(const Library& lib) {
  std::map<ModuleTag, std::size_t> out;
  for (auto m : kAllModules) out[m] = 0;
  for (const auto& m : lib.modes()) ++out[m.module];
  return out;
}

inline std::map<ScenarioType, std::size_t> count_by_scenario(const Library& lib) {
  std::map<ScenarioType, std::size_t> out;
  for (auto s : kAllScenarios) out[s] = 0;
  for (const auto& m : lib.modes()) ++out[m.simulation_method_type];
  return out;
}

}  // namespace fifml
