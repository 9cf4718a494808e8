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
 *   Checklist-driven fault-mode generation.
 *
 *   A SyscallDescriptor records what the checklist walk found for one
 *   system call: the internal function it lands in, its parameters, the
 *   errno each bad parameter provokes, and which non-return-value scenarios
 *   (delay, buffer corruption, downtime, denial of service, CPU load) apply.
 *   generate_modes() turns that into library records with ids of the form
 *   `linux-<tag>-<descriptor ordinal>-<entry ordinal>-1`.
 *
 *   Descriptor files:
 *
 *       FIFML-DESC 1
 *       syscall mprotect
 *       internal do_mprotect_pkey
 *       module mem
 *       ordinal 16
 *       operation setting memory permission
 *       param start address
 *       fault 0 EINVAL invalid address parameter
 *       extra DLY delay_ms=800
 *       end
 */

#pragma once

#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "fifml/core.hpp"
#include "fifml/errno_table.hpp"
#include "fifml/library.hpp"

namespace fifml {

struct ParamSpec {
  std::string name;
  std::string role;
  bool operator==(const ParamSpec&) const = default;
};

struct ParamFault {
  int param_index = 0;
  std::string errno_symbol;
  std::string description;
  bool operator==(const ParamFault&) const = default;
};

/// A scenario beyond KernelFunctionFailure, with optional attach_data overrides.
struct ExtraScenario {
  ScenarioType type = ScenarioType::Delay;
  AttachData overrides;
  bool operator==(const ExtraScenario&) const = default;
};

struct SyscallDescriptor {
  std::string name;
  std::string internal_function;
  ModuleTag module = ModuleTag::FileSystem;
  int ordinal = 1;        // position of this call within its module's corpus
  std::string operation;  // e.g. "setting memory permission"
  std::vector<ParamSpec> params;
  std::vector<ParamFault> param_faults;
  std::vector<ExtraScenario> extra_scenarios;

  bool operator==(const SyscallDescriptor&) const = default;
};

inline constexpr std::string_view kDescriptorHeader = "FIFML-DESC 1";

/// Defaults chosen so every generated mode satisfies required_keys().
inline AttachData default_attach_data(ScenarioType s) {
  switch (s) {
    case ScenarioType::KernelFunctionFailure: return {{"errno", "EIO"}};
    case ScenarioType::Delay: return {{"delay_ms", "500"}};
    case ScenarioType::BufferDataError: return {{"length", "4"}, {"offset", "0"}, {"pattern", "0xFF"}};
    case ScenarioType::DowntimeRestart: return {{"restart", "true"}};
    case ScenarioType::KernelDenialOfService: return {{"signal", "KILL"}};
    case ScenarioType::CpuUsageIncrease: return {{"load_factor", "4"}};
  }
  return {};
}

inline std::string_view scenario_phrase(ScenarioType s) {
  switch (s) {
    case ScenarioType::KernelFunctionFailure: return "kernel function failure";
    case ScenarioType::Delay: return "long delay";
    case ScenarioType::BufferDataError: return "buffer data error";
    case ScenarioType::DowntimeRestart: return "system downtime and restart";
    case ScenarioType::KernelDenialOfService: return "kernel denial of service";
    case ScenarioType::CpuUsageIncrease: return "system CPU usage increase";
  }
  return "";
}

namespace detail {
inline bool has_reserved(std::string_view s, std::string_view reserved) {
  return s.find_first_of(reserved) != std::string_view::npos;
}
}  // namespace detail

inline std::vector<Finding> validate_descriptor(const SyscallDescriptor& d) {
  std::vector<Finding> out;
  const std::string who = d.name.empty() ? std::string("<unnamed>") : d.name;
  if (d.name.empty()) out.push_back({who, "name", "empty"});
  if (detail::has_reserved(d.name, "|,=\n ")) out.push_back({who, "name", "contains a reserved character"});
  if (detail::has_reserved(d.internal_function, "|,=\n ")) out.push_back({who, "internal", "contains a reserved character"});
  if (detail::has_reserved(d.operation, "|\n")) out.push_back({who, "operation", "contains '|' or newline"});
  if (d.ordinal < 1) out.push_back({who, "ordinal", "must be >= 1"});
  for (std::size_t i = 0; i < d.params.size(); ++i)
    if (detail::has_reserved(d.params[i].name, "|,=\n "))
      out.push_back({who, "param " + std::to_string(i), "name contains a reserved character"});
  for (std::size_t i = 0; i < d.param_faults.size(); ++i) {
    const auto& pf = d.param_faults[i];
    const std::string subject = who + " fault " + std::to_string(i);
    if (pf.param_index < 0 || static_cast<std::size_t>(pf.param_index) >= d.params.size())
      out.push_back({subject, "param_index", "references no parameter (" + std::to_string(pf.param_index) + ")"});
    if (!is_known_errno(pf.errno_symbol))
      out.push_back({subject, "errno", "unrecognized errno symbol '" + pf.errno_symbol + "'"});
    if (detail::has_reserved(pf.description, "|\n"))
      out.push_back({subject, "description", "contains '|' or newline"});
  }
  std::set<ScenarioType> seen;
  for (const auto& e : d.extra_scenarios) {
    const std::string subject = who + " extra " + std::string(scenario_code(e.type));
    if (e.type == ScenarioType::KernelFunctionFailure)
      out.push_back({subject, "type", "kernel function failures come from param faults"});
    if (!seen.insert(e.type).second) out.push_back({subject, "type", "listed twice"});
    for (const auto& [k, v] : e.overrides)
      if (detail::has_reserved(k, "|,=\n") || detail::has_reserved(v, "|,=\n"))
        out.push_back({subject, k, "override contains a reserved character"});
  }
  return out;
}

/// Derives fault modes from a descriptor: one KernelFunctionFailure mode per
/// parameter fault, then one mode per extra scenario. Throws ValidationError
/// on an invalid descriptor.
inline std::vector<FaultMode> generate_modes(const SyscallDescriptor& d) {
  if (auto findings = validate_descriptor(d); !findings.empty()) {
    std::vector<std::string> lines;
    for (const auto& f : findings) lines.push_back(f.to_string());
    throw ValidationError("invalid syscall descriptor '" + d.name + "'", std::move(lines));
  }
  const std::string tag(module_tag(d.module));
  auto make_id = [&](std::size_t entry) {
    return "linux-" + tag + "-" + std::to_string(d.ordinal) + "-" + std::to_string(entry) + "-1";
  };

  std::vector<FaultMode> out;
  out.reserve(d.param_faults.size() + d.extra_scenarios.size());
  std::size_t entry = 0;
  for (const auto& pf : d.param_faults) {
    FaultMode m;
    m.simulation_method_id = make_id(++entry);
    m.fault_mode_id = "KFF-" + pf.errno_symbol;
    m.fault_mode_name = pf.description + " error when " + d.operation;
    m.simulation_method_type = ScenarioType::KernelFunctionFailure;
    m.module = d.module;
    m.target_function = d.name;
    m.attach_data = {{"errno", pf.errno_symbol}, {"param", d.params[static_cast<std::size_t>(pf.param_index)].name}};
    if (!d.internal_function.empty()) m.attach_data["internal"] = d.internal_function;
    out.push_back(std::move(m));
  }
  for (const auto& e : d.extra_scenarios) {
    FaultMode m;
    m.simulation_method_id = make_id(++entry);
    m.fault_mode_id = std::string(scenario_code(e.type));
    m.fault_mode_name = std::string(scenario_phrase(e.type)) + " when " + d.operation;
    m.simulation_method_type = e.type;
    m.module = d.module;
    m.target_function = d.name;
    m.attach_data = default_attach_data(e.type);
    for (const auto& [k, v] : e.overrides) m.attach_data[k] = v;
    if (!d.internal_function.empty()) m.attach_data["internal"] = d.internal_function;
    out.push_back(std::move(m));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Descriptor files
// ---------------------------------------------------------------------------

inline std::vector<SyscallDescriptor> load_descriptors(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line) || (++line_no, trim(line) != kDescriptorHeader))
    throw ParseError(1, "expected header '" + std::string(kDescriptorHeader) + "'");

  std::vector<SyscallDescriptor> out;
  std::optional<SyscallDescriptor> cur;
  std::size_t cur_line = 0;
  auto rest_after = [](std::string_view s, std::size_t ntok) {
    // text after the first `ntok` whitespace-separated tokens
    std::size_t i = 0;
    for (std::size_t t = 0; t < ntok; ++t) {
      while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
      while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    }
    return std::string(trim(s.substr(i)));
  };

  while (std::getline(in, line)) {
    ++line_no;
    std::string_view sv = trim(line);
    if (sv.empty() || sv[0] == '#') continue;
    auto tok = tokenize(sv);
    const auto kw = tok[0];
    if (kw == "syscall") {
      if (cur) throw ParseError(line_no, "'syscall' before 'end' of descriptor started on line " + std::to_string(cur_line));
      if (tok.size() != 2) throw ParseError(line_no, "expected 'syscall <name>'");
      cur.emplace();
      cur->name = std::string(tok[1]);
      cur_line = line_no;
      continue;
    }
    if (!cur) throw ParseError(line_no, "'" + std::string(kw) + "' outside a descriptor block");
    if (kw == "end") {
      out.push_back(std::move(*cur));
      cur.reset();
    } else if (kw == "internal" && tok.size() == 2) {
      cur->internal_function = std::string(tok[1]);
    } else if (kw == "module" && tok.size() == 2) {
      auto m = parse_module_tag(tok[1]);
      if (!m) throw ParseError(line_no, "unknown module tag '" + std::string(tok[1]) + "'");
      cur->module = *m;
    } else if (kw == "ordinal" && tok.size() == 2) {
      auto n = parse_int<int>(tok[1]);
      if (!n) throw ParseError(line_no, "ordinal must be an integer");
      cur->ordinal = *n;
    } else if (kw == "operation" && tok.size() >= 2) {
      cur->operation = rest_after(sv, 1);
    } else if (kw == "param" && tok.size() >= 2) {
      cur->params.push_back({std::string(tok[1]), rest_after(sv, 2)});
    } else if (kw == "fault" && tok.size() >= 4) {
      auto idx = parse_int<int>(tok[1]);
      if (!idx) throw ParseError(line_no, "fault parameter index must be an integer");
      cur->param_faults.push_back({*idx, std::string(tok[2]), rest_after(sv, 3)});
    } else if (kw == "extra" && tok.size() >= 2) {
      auto t = parse_scenario(tok[1]);
      if (!t) throw ParseError(line_no, "unknown scenario '" + std::string(tok[1]) + "'");
      ExtraScenario e{*t, {}};
      for (std::size_t i = 2; i < tok.size(); ++i) {
        auto eq = tok[i].find('=');
        if (eq == std::string_view::npos || eq == 0) throw ParseError(line_no, "expected key=value override");
        e.overrides[std::string(tok[i].substr(0, eq))] = std::string(tok[i].substr(eq + 1));
      }
      cur->extra_scenarios.push_back(std::move(e));
    } else {
      throw ParseError(line_no, "unrecognized descriptor line '" + std::string(sv) + "'");
    }
  }
  if (cur) throw ParseError(line_no, "descriptor started on line " + std::to_string(cur_line) + " has no 'end'");
  return out;
}

inline std::vector<SyscallDescriptor> load_descriptors_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open descriptor file '" + path.string() + "'");
  try {
    return load_descriptors(in);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path.string() + ": " + e.what());
  }
}

inline void save_descriptor(const SyscallDescriptor& d, std::ostream& out) {
  out << "syscall " << d.name << '\n';
  if (!d.internal_function.empty()) out << "internal " << d.internal_function << '\n';
  out << "module " << module_tag(d.module) << '\n';
  out << "ordinal " << d.ordinal << '\n';
  out << "operation " << d.operation << '\n';
  for (const auto& p : d.params) out << "param " << p.name << (p.role.empty() ? "" : " ") << p.role << '\n';
  for (const auto& f : d.param_faults)
    out << "fault " << f.param_index << ' ' << f.errno_symbol << ' ' << f.description << '\n';
  for (const auto& e : d.extra_scenarios) {
    out << "extra " << scenario_code(e.type);
    for (const auto& [k, v] : e.overrides) out << ' ' << k << '=' << v;
    out << '\n';
  }
  out << "end\n";
}

/// Runs generate_modes over a corpus, in corpus order.
inline std::vector<FaultMode> generate_corpus(std::span<const SyscallDescriptor> corpus) {
  std::vector<FaultMode> out;
  for (const auto& d : corpus) {
    auto modes = generate_modes(d);
    out.insert(out.end(), std::make_move_iterator(modes.begin()), std::make_move_iterator(modes.end()));
  }
  return out;
}

}  // namespace fifml
