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
 *   Synthetic workload scripts.
 *
 *       FIFML-WORK 1
 *       warmup 30000
 *       task files
 *       call open data.txt expect ok
 *       call write data.txt hello expect ok
 *       call read data.txt 5 expect ok
 *
 *   Each task runs as its own simulated process. Only the abstract syscalls
 *   of the simulated facade may appear in `call` lines.
 */

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fifml/core.hpp"

namespace fifml {

enum class ArgKind { Name, Int, Prot, Pid };

struct FacadeSyscall {
  std::string_view name;
  std::vector<ArgKind> args;
};

/// The dispatch table of the simulated syscall facade.
inline const std::array<FacadeSyscall, 12>& facade_syscalls() {
  static const std::array<FacadeSyscall, 12> table = {{
      {"open", {ArgKind::Name}},
      {"read", {ArgKind::Name, ArgKind::Int}},
      {"write", {ArgKind::Name, ArgKind::Name}},
      {"fstat", {ArgKind::Name}},
      {"mmap", {ArgKind::Name, ArgKind::Int}},
      {"munmap", {ArgKind::Name}},
      {"mprotect", {ArgKind::Name, ArgKind::Prot}},
      {"semop", {ArgKind::Int, ArgKind::Int}},
      {"getdents", {}},
      {"fork", {}},
      {"kill", {ArgKind::Pid, ArgKind::Int}},
      {"nanosleep", {ArgKind::Int}},
  }};
  return table;
}

inline const FacadeSyscall* find_facade_syscall(std::string_view name) {
  for (const auto& s : facade_syscalls())
    if (s.name == name) return &s;
  return nullptr;
}

struct SyscallCall {
  std::string syscall;
  std::vector<std::string> args;
  bool expect_ok = true;
  bool operator==(const SyscallCall&) const = default;
};

struct WorkloadTask {
  std::string name;
  std::vector<SyscallCall> calls;
  bool operator==(const WorkloadTask&) const = default;
};

struct WorkloadScript {
  std::vector<WorkloadTask> tasks;
  std::int64_t warmup_ms = 0;
  bool operator==(const WorkloadScript&) const = default;
};

inline constexpr std::string_view kWorkloadHeader = "FIFML-WORK 1";

namespace detail {
inline bool arg_ok(ArgKind kind, std::string_view v) {
  switch (kind) {
    case ArgKind::Name: return !v.empty() && v.find('|') == std::string_view::npos;
    case ArgKind::Int: return parse_int<std::int64_t>(v).has_value() && v[0] != '-';
    case ArgKind::Prot:
      if (v == "none") return true;
      return !v.empty() && v.find_first_not_of("rwx") == std::string_view::npos;
    case ArgKind::Pid: return v == "child" || v == "self" || parse_int<int>(v).has_value();
  }
  return false;
}
}  // namespace detail

inline WorkloadScript parse_workload(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || trim(line) != kWorkloadHeader)
    throw ParseError(1, "expected header '" + std::string(kWorkloadHeader) + "'");
  WorkloadScript w;
  bool saw_warmup = false;
  while (std::getline(in, line)) {
    ++line_no;
    auto sv = trim(line);
    if (sv.empty() || sv[0] == '#') continue;
    auto tok = tokenize(sv);
    if (tok[0] == "warmup") {
      if (saw_warmup) throw ParseError(line_no, "warmup given twice");
      auto ms = tok.size() == 2 ? parse_int<std::int64_t>(tok[1]) : std::nullopt;
      if (!ms || *ms < 0) throw ParseError(line_no, "expected 'warmup <ms>' with ms >= 0");
      w.warmup_ms = *ms;
      saw_warmup = true;
    } else if (tok[0] == "task") {
      if (tok.size() != 2) throw ParseError(line_no, "expected 'task <name>'");
      for (const auto& t : w.tasks)
        if (t.name == tok[1]) throw ParseError(line_no, "task '" + std::string(tok[1]) + "' defined twice");
      w.tasks.push_back({std::string(tok[1]), {}});
    } else if (tok[0] == "call") {
      if (w.tasks.empty()) throw ParseError(line_no, "'call' before any 'task'");
      if (tok.size() < 4 || tok[tok.size() - 2] != "expect" ||
          (tok.back() != "ok" && tok.back() != "err"))
        throw ParseError(line_no, "expected 'call <syscall> <args...> expect <ok|err>'");
      const auto* sc = find_facade_syscall(tok[1]);
      if (!sc) throw ParseError(line_no, "unknown syscall '" + std::string(tok[1]) + "'");
      const std::size_t nargs = tok.size() - 4;
      if (nargs != sc->args.size())
        throw ParseError(line_no, std::string(sc->name) + " takes " + std::to_string(sc->args.size()) + " argument(s)");
      SyscallCall c{std::string(tok[1]), {}, tok.back() == "ok"};
      for (std::size_t i = 0; i < nargs; ++i) {
        if (!detail::arg_ok(sc->args[i], tok[2 + i]))
          throw ParseError(line_no, "bad argument '" + std::string(tok[2 + i]) + "' to " + std::string(sc->name));
        c.args.emplace_back(tok[2 + i]);
      }
      w.tasks.back().calls.push_back(std::move(c));
    } else {
      throw ParseError(line_no, "unrecognized workload line '" + std::string(sv) + "'");
    }
  }
  if (w.tasks.empty()) throw ParseError(line_no, "workload defines no tasks");
  return w;
}

inline WorkloadScript load_workload_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open workload '" + path.string() + "'");
  try {
    return parse_workload(in);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path.string() + ": " + e.what());
  }
}

inline std::string workload_to_string(const WorkloadScript& w) {
  std::ostringstream os;
  os << kWorkloadHeader << '\n' << "warmup " << w.warmup_ms << '\n';
  for (const auto& t : w.tasks) {
    os << "task " << t.name << '\n';
    for (const auto& c : t.calls) {
      os << "call " << c.syscall;
      for (const auto& a : c.args) os << ' ' << a;
      os << " expect " << (c.expect_ok ? "ok" : "err") << '\n';
    }
  }
  return os.str();
}

inline std::uint64_t workload_fingerprint(const WorkloadScript& w) { return fnv1a64(workload_to_string(w)); }

}  // namespace fifml
