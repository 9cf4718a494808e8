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
 *   Shared vocabulary for the fault-injection toolkit: error types, the
 *   scenario and module enumerations, findings, hashing and the small
 *   string helpers every text format in the project relies on.
 */

#pragma once

#include <array>
#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace fifml {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class DuplicateIdError : public Error {
 public:
  explicit DuplicateIdError(const std::string& id)
      : Error("duplicate simulation_method_id '" + id + "'"), id_(id) {}
  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, std::vector<std::string> details)
      : Error(join_details(what, details)), details_(std::move(details)) {}
  const std::vector<std::string>& details() const noexcept { return details_; }

 private:
  static std::string join_details(const std::string& what, const std::vector<std::string>& d) {
    std::string s = what;
    for (const auto& x : d) s += "\n  " + x;
    return s;
  }
  std::vector<std::string> details_;
};

class EmptySelectionError : public Error {
 public:
  EmptySelectionError() : Error("empty selection: no fault mode matches the selector") {}
};

/// Argument outside an operation's mathematical domain (n = 0, pt <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class LicenseError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Findings
// ---------------------------------------------------------------------------

/// One validation complaint. Findings are data, not failures.
struct Finding {
  std::string subject;  // e.g. "entry 3" or a simulation_method_id
  std::string field;
  std::string message;

  std::string to_string() const { return subject + ": " + field + ": " + message; }
  bool operator==(const Finding&) const = default;
};

// ---------------------------------------------------------------------------
// Scenario types and module tags
// ---------------------------------------------------------------------------

enum class ScenarioType {
  KernelFunctionFailure,
  Delay,
  BufferDataError,
  DowntimeRestart,
  KernelDenialOfService,
  CpuUsageIncrease,
};

inline constexpr std::array<ScenarioType, 6> kAllScenarios = {
    ScenarioType::KernelFunctionFailure, ScenarioType::Delay,
    ScenarioType::BufferDataError,       ScenarioType::DowntimeRestart,
    ScenarioType::KernelDenialOfService, ScenarioType::CpuUsageIncrease,
};

constexpr std::string_view scenario_code(ScenarioType s) {
  switch (s) {
    case ScenarioType::KernelFunctionFailure: return "KFF";
    case ScenarioType::Delay: return "DLY";
    case ScenarioType::BufferDataError: return "BUF";
    case ScenarioType::DowntimeRestart: return "DWN";
    case ScenarioType::KernelDenialOfService: return "DOS";
    case ScenarioType::CpuUsageIncrease: return "CPU";
  }
  return "?";
}

constexpr std::string_view scenario_name(ScenarioType s) {
  switch (s) {
    case ScenarioType::KernelFunctionFailure: return "KernelFunctionFailure";
    case ScenarioType::Delay: return "Delay";
    case ScenarioType::BufferDataError: return "BufferDataError";
    case ScenarioType::DowntimeRestart: return "DowntimeRestart";
    case ScenarioType::KernelDenialOfService: return "KernelDenialOfService";
    case ScenarioType::CpuUsageIncrease: return "CpuUsageIncrease";
  }
  return "?";
}

/// Accepts the three-letter code or the full name.
inline std::optional<ScenarioType> parse_scenario(std::string_view s) {
  for (auto t : kAllScenarios)
    if (s == scenario_code(t) || s == scenario_name(t)) return t;
  return std::nullopt;
}

enum class ModuleTag {
  FileSystem,
  InterruptManagement,
  IoManagement,
  MemoryManagement,
  ProcessManagement,
};

inline constexpr std::array<ModuleTag, 5> kAllModules = {
    ModuleTag::FileSystem, ModuleTag::InterruptManagement, ModuleTag::IoManagement,
    ModuleTag::MemoryManagement, ModuleTag::ProcessManagement,
};

constexpr std::string_view module_tag(ModuleTag m) {
  switch (m) {
    case ModuleTag::FileSystem: return "fs";
    case ModuleTag::InterruptManagement: return "int";
    case ModuleTag::IoManagement: return "io";
    case ModuleTag::MemoryManagement: return "mem";
    case ModuleTag::ProcessManagement: return "pro";
  }
  return "?";
}

inline std::optional<ModuleTag> parse_module_tag(std::string_view s) {
  for (auto m : kAllModules)
    if (s == module_tag(m)) return m;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Hashing
// ---------------------------------------------------------------------------

/// 64-bit FNV-1a. Used for content fingerprints, never for security.
constexpr std::uint64_t fnv1a64(std::string_view data,
                                std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::string hex64(std::uint64_t v) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) s[static_cast<std::size_t>(i)] = kDigits[v & 0xf];
  return s;
}

// ---------------------------------------------------------------------------
// String helpers
// ---------------------------------------------------------------------------

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

/// Whitespace tokenizer; runs of blanks count as one separator.
inline std::vector<std::string_view> tokenize(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <typename Int>
std::optional<Int> parse_int(std::string_view s) {
  Int v{};
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

inline std::optional<double> parse_double(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::string tmp(s);
  char* end = nullptr;
  double v = std::strtod(tmp.c_str(), &end);
  if (end != tmp.c_str() + tmp.size()) return std::nullopt;
  return v;
}

inline std::string to_hex_bytes(std::string_view bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    out.push_back(kDigits[c >> 4]);
    out.push_back(kDigits[c & 0xf]);
  }
  return out;
}

/// Characters that may not appear inside a library attach_data key or value.
constexpr bool is_attach_reserved(char c) {
  return c == '|' || c == ',' || c == '=' || c == '\n' || c == '\r';
}

}  // namespace fifml
