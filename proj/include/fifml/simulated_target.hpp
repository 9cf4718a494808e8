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
 *   The injector's target side: the TargetAdapter interface and a
 *   deterministic simulated process target behind it.
 *
 *   The simulated target keeps a virtual clock in milliseconds. Every task
 *   of a workload runs as one process; processes are scheduled round-robin,
 *   one syscall per step. A syscall's latency is a fixed per-call base plus
 *   a uniform +/-10% jitter drawn from a hash of (seed, pid, call index), so
 *   a call has the same latency in every run that executes it, regardless
 *   of what happened before it.
 *
 *   Event log lines: `<virtual_ms>|<pid>|<event_kind>|<payload>`.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fifml/core.hpp"
#include "fifml/errno_table.hpp"
#include "fifml/library.hpp"
#include "fifml/scheme.hpp"
#include "fifml/workload.hpp"

namespace fifml {

enum class ProcessState { Running, Stopped, Terminated, Crashed };
enum class TaskStatus { Completed, CompletedWithErrors, Failed };
enum class TerminalEvent { None, Crash, NoProgress };
enum class EventKind { Syscall, FaultArmed, FaultDisarmed, TaskDone, Crash, Stop, Restart, Killed };

constexpr std::string_view task_status_name(TaskStatus s) {
  switch (s) {
    case TaskStatus::Completed: return "Completed";
    case TaskStatus::CompletedWithErrors: return "CompletedWithErrors";
    case TaskStatus::Failed: return "Failed";
  }
  return "?";
}

inline std::optional<TaskStatus> parse_task_status(std::string_view s) {
  for (auto t : {TaskStatus::Completed, TaskStatus::CompletedWithErrors, TaskStatus::Failed})
    if (s == task_status_name(t)) return t;
  return std::nullopt;
}

constexpr std::string_view terminal_event_name(TerminalEvent t) {
  switch (t) {
    case TerminalEvent::None: return "none";
    case TerminalEvent::Crash: return "crash";
    case TerminalEvent::NoProgress: return "no_progress";
  }
  return "?";
}

inline std::optional<TerminalEvent> parse_terminal_event(std::string_view s) {
  for (auto t : {TerminalEvent::None, TerminalEvent::Crash, TerminalEvent::NoProgress})
    if (s == terminal_event_name(t)) return t;
  return std::nullopt;
}

constexpr std::string_view event_kind_name(EventKind k) {
  switch (k) {
    case EventKind::Syscall: return "syscall";
    case EventKind::FaultArmed: return "fault_armed";
    case EventKind::FaultDisarmed: return "fault_disarmed";
    case EventKind::TaskDone: return "task_done";
    case EventKind::Crash: return "crash";
    case EventKind::Stop: return "stop";
    case EventKind::Restart: return "restart";
    case EventKind::Killed: return "killed";
  }
  return "?";
}

inline std::optional<EventKind> parse_event_kind(std::string_view s) {
  for (auto k : {EventKind::Syscall, EventKind::FaultArmed, EventKind::FaultDisarmed, EventKind::TaskDone,
                 EventKind::Crash, EventKind::Stop, EventKind::Restart, EventKind::Killed})
    if (s == event_kind_name(k)) return k;
  return std::nullopt;
}

struct Event {
  std::int64_t at_ms = 0;
  int pid = 0;  // 0 for system-wide events
  EventKind kind = EventKind::Syscall;
  std::string payload;

  std::string to_line() const {
    return std::to_string(at_ms) + "|" + std::to_string(pid) + "|" + std::string(event_kind_name(kind)) + "|" +
           payload;
  }
  bool operator==(const Event&) const = default;
};

inline Event parse_event_line(std::string_view line, std::size_t line_no) {
  // payload is the last field and may itself contain '|'
  std::array<std::string_view, 3> head;
  for (auto& h : head) {
    auto bar = line.find('|');
    if (bar == std::string_view::npos) throw ParseError(line_no, "malformed event line");
    h = line.substr(0, bar);
    line.remove_prefix(bar + 1);
  }
  auto at = parse_int<std::int64_t>(head[0]);
  auto pid = parse_int<int>(head[1]);
  auto kind = parse_event_kind(head[2]);
  if (!at || !pid || !kind) throw ParseError(line_no, "malformed event line");
  return {*at, *pid, *kind, std::string(line)};
}

struct SyscallSample {
  std::string function;
  int pid = 0;
  std::int64_t start_ms = 0;
  std::int64_t latency_ms = 0;
  bool operator==(const SyscallSample&) const = default;
};

struct TaskReport {
  std::string name;
  std::optional<TaskStatus> status;
  bool operator==(const TaskReport&) const = default;
};

/// Everything the monitor needs to judge one experiment.
struct TargetObservation {
  std::vector<TaskReport> tasks;
  std::vector<SyscallSample> samples;
  TerminalEvent terminal = TerminalEvent::None;
  std::vector<Event> events;
  std::int64_t started_at_ms = 0;  // workload start, after warmup
  std::int64_t finished_at_ms = 0;

  bool operator==(const TargetObservation&) const = default;
};

// ---------------------------------------------------------------------------
// Latency model
// ---------------------------------------------------------------------------

inline std::int64_t base_latency_ms(std::string_view syscall) {
  static const std::map<std::string_view, std::int64_t> kBase = {
      {"open", 40},  {"read", 20},     {"write", 30}, {"fstat", 10},    {"mmap", 50}, {"munmap", 30},
      {"mprotect", 20}, {"semop", 15}, {"getdents", 60}, {"fork", 200}, {"kill", 10},
  };
  auto it = kBase.find(syscall);
  return it == kBase.end() ? 10 : it->second;
}

/// Unfaulted latency of one call: base +/- 10% uniform jitter, never below
/// 1 ms. nanosleep takes exactly its argument and has no jitter.
inline std::int64_t sample_latency_ms(std::uint64_t seed, int pid, std::size_t call_index, const SyscallCall& call) {
  if (call.syscall == "nanosleep") return *parse_int<std::int64_t>(call.args.at(0));
  const double base = static_cast<double>(base_latency_ms(call.syscall));
  std::uint64_t h = splitmix64(seed ^ splitmix64((static_cast<std::uint64_t>(pid) << 32) ^ call_index));
  const double u = static_cast<double>(h >> 11) * 0x1.0p-53;  // [0, 1)
  return std::max<std::int64_t>(1, std::llround(base * (0.9 + 0.2 * u)));
}

// ---------------------------------------------------------------------------
// Facade state and normal syscall semantics
// ---------------------------------------------------------------------------

struct MemoryRegion {
  std::int64_t length = 0;
  std::string prot = "rw";
};

/// Volatile kernel-side state. A restart discards it.
struct FacadeState {
  std::map<std::string, std::string> files;
  std::map<std::string, MemoryRegion> regions;
  std::vector<int> children;
  int next_fd = 3;
  int next_child_pid = 1000;
  std::int64_t next_map = 0;
};

struct Invocation {
  int pid = 0;
  std::string task;
  std::size_t call_index = 0;
  SyscallCall call;
};

struct SyscallResult {
  bool ok = true;
  std::int64_t retval = 0;
  std::string errno_symbol;
  bool has_data = false;
  std::string data;
  std::int64_t latency_ms = 0;

  static SyscallResult failure(std::string_view err) { return {false, -1, std::string(err), false, {}, 0}; }
  bool operator==(const SyscallResult&) const = default;
};

/// Executes a call with no fault in play. Latency is left at 0.
inline SyscallResult execute_syscall(FacadeState& fs, const Invocation& inv) {
  const auto& c = inv.call;
  const auto& a = c.args;
  auto num = [&](std::size_t i) { return *parse_int<std::int64_t>(a.at(i)); };
  SyscallResult r;
  if (c.syscall == "open") {
    fs.files.try_emplace(a[0]);
    r.retval = fs.next_fd++;
  } else if (c.syscall == "read") {
    auto it = fs.files.find(a[0]);
    if (it == fs.files.end()) return SyscallResult::failure("ENOENT");
    r.has_data = true;
    r.data = it->second.substr(0, static_cast<std::size_t>(num(1)));
    r.retval = static_cast<std::int64_t>(r.data.size());
  } else if (c.syscall == "write") {
    auto it = fs.files.find(a[0]);
    if (it == fs.files.end()) return SyscallResult::failure("ENOENT");
    it->second += a[1];
    r.retval = static_cast<std::int64_t>(a[1].size());
  } else if (c.syscall == "fstat") {
    auto it = fs.files.find(a[0]);
    if (it == fs.files.end()) return SyscallResult::failure("ENOENT");
    r.has_data = true;
    r.data = "st_size=" + std::to_string(it->second.size());
  } else if (c.syscall == "mmap") {
    if (num(1) == 0) return SyscallResult::failure("EINVAL");
    if (fs.regions.contains(a[0])) return SyscallResult::failure("EEXIST");
    fs.regions[a[0]] = {num(1), "rw"};
    r.retval = 0x7f0000000000LL + 0x1000LL * fs.next_map++;
  } else if (c.syscall == "munmap") {
    if (fs.regions.erase(a[0]) == 0) return SyscallResult::failure("EINVAL");
  } else if (c.syscall == "mprotect") {
    auto it = fs.regions.find(a[0]);
    if (it == fs.regions.end()) return SyscallResult::failure("ENOMEM");
    it->second.prot = a[1];
  } else if (c.syscall == "semop") {
    if (num(1) == 0) return SyscallResult::failure("EINVAL");
    if (num(1) > 500) return SyscallResult::failure("E2BIG");
  } else if (c.syscall == "getdents") {
    r.has_data = true;
    for (const auto& [name, _] : fs.files) {
      if (!r.data.empty()) r.data.push_back('\n');
      r.data += name;
    }
    r.retval = static_cast<std::int64_t>(fs.files.size());
  } else if (c.syscall == "fork") {
    r.retval = fs.next_child_pid++;
    fs.children.push_back(static_cast<int>(r.retval));
  } else if (c.syscall == "kill") {
    const std::int64_t sig = num(1);
    if (a[0] == "self") return r;
    int pid = 0;
    if (a[0] == "child") {
      if (fs.children.empty()) return SyscallResult::failure("ESRCH");
      pid = fs.children.back();
    } else {
      pid = *parse_int<int>(a[0]);
    }
    auto it = std::find(fs.children.begin(), fs.children.end(), pid);
    if (it == fs.children.end()) return SyscallResult::failure("ESRCH");
    if (sig != 0) fs.children.erase(it);
  } else if (c.syscall == "nanosleep") {
    // latency only
  } else {
    return SyscallResult::failure("ENOSYS");
  }
  return r;
}

inline std::string format_syscall_payload(const Invocation& inv, const SyscallResult& r) {
  std::string s = inv.call.syscall + "#" + std::to_string(inv.call_index);
  for (const auto& a : inv.call.args) s += " " + a;
  if (r.ok) {
    s += " -> ok " + std::to_string(r.retval);
    if (r.has_data) s += " data=" + to_hex_bytes(r.data);
  } else {
    s += " -> err " + r.errno_symbol;
  }
  s += " lat=" + std::to_string(r.latency_ms);
  return s;
}

// ---------------------------------------------------------------------------
// Target state and scenario semantics
// ---------------------------------------------------------------------------

struct Process {
  int pid = 0;
  std::size_t task_index = 0;
  std::size_t next_call = 0;
  ProcessState state = ProcessState::Running;
  bool had_errors = false;
  std::optional<TaskStatus> status;
};

struct TargetState {
  std::int64_t clock_ms = 0;
  FacadeState facade;
  std::vector<Process> processes;
  double cpu_load_factor = 1.0;
  std::vector<Event> events;
  TerminalEvent terminal = TerminalEvent::None;
  int restarts = 0;

  void log(EventKind kind, int pid, std::string payload) {
    events.push_back({clock_ms, pid, kind, std::move(payload)});
  }
  Process* process(int pid) {
    for (auto& p : processes)
      if (p.pid == pid) return &p;
    return nullptr;
  }
};

inline std::int64_t scale_latency(std::int64_t base, double load_factor) {
  return std::max<std::int64_t>(1, std::llround(static_cast<double>(base) * load_factor));
}

struct ScenarioContext {
  std::int64_t base_latency_ms = 0;      // unscaled, unfaulted latency of the call
  std::int64_t restart_latency_ms = 1000;
};

/// Result of applying a fault. `result` is empty when the invocation never
/// completes (the system went down or the caller was signalled).
struct ScenarioOutcome {
  std::optional<SyscallResult> result;
  bool data_tampered = false;
};

/// Applies an active fault to one invocation of its target function.
inline ScenarioOutcome apply_scenario(TargetState& st, const FaultMode& fault, const Invocation& inv,
                                      const ScenarioContext& ctx) {
  const auto& ad = fault.attach_data;
  auto get = [&](const char* key) -> const std::string& {
    auto it = ad.find(key);
    if (it == ad.end()) throw Error("fault " + fault.simulation_method_id + " lacks attach_data key " + key);
    return it->second;
  };

  switch (fault.simulation_method_type) {
    case ScenarioType::KernelFunctionFailure: {
      auto r = SyscallResult::failure(get("errno"));
      r.latency_ms = scale_latency(ctx.base_latency_ms, st.cpu_load_factor);
      return {r, false};
    }
    case ScenarioType::Delay: {
      const auto delay = *parse_int<std::int64_t>(get("delay_ms"));
      auto r = execute_syscall(st.facade, inv);
      r.latency_ms = delay + scale_latency(ctx.base_latency_ms, st.cpu_load_factor);
      return {r, false};
    }
    case ScenarioType::BufferDataError: {
      auto r = execute_syscall(st.facade, inv);
      r.latency_ms = scale_latency(ctx.base_latency_ms, st.cpu_load_factor);
      bool tampered = false;
      if (r.ok && r.has_data) {
        const auto offset = static_cast<std::size_t>(*parse_int<std::int64_t>(get("offset")));
        const auto length = static_cast<std::size_t>(*parse_int<std::int64_t>(get("length")));
        const char pattern = static_cast<char>(*parse_byte_pattern(get("pattern")));
        for (std::size_t i = offset; i < offset + length && i < r.data.size(); ++i) {
          tampered |= r.data[i] != pattern;
          r.data[i] = pattern;
        }
      }
      return {r, tampered};
    }
    case ScenarioType::DowntimeRestart: {
      for (auto& p : st.processes)
        if (p.state == ProcessState::Running) p.state = ProcessState::Stopped;
      st.log(EventKind::Stop, 0, "system down by " + fault.simulation_method_id);
      if (get("restart") == "true") {
        st.clock_ms += ctx.restart_latency_ms;
        ++st.restarts;
        st.facade = FacadeState{};
        for (auto& p : st.processes) {
          p.next_call = 0;
          p.state = ProcessState::Running;
          p.status.reset();
          p.had_errors = true;
        }
        st.log(EventKind::Restart, 0, "attempt=" + std::to_string(st.restarts));
      } else {
        for (auto& p : st.processes)
          if (p.state == ProcessState::Stopped) p.state = ProcessState::Crashed;
        st.terminal = TerminalEvent::Crash;
        st.log(EventKind::Crash, 0, fault.simulation_method_id);
      }
      return {std::nullopt, false};
    }
    case ScenarioType::KernelDenialOfService: {
      const auto& sig = get("signal");
      Process* p = st.process(inv.pid);
      st.log(EventKind::Killed, inv.pid, "signal=" + sig + " by " + fault.simulation_method_id);
      if (p) {
        if (sig == "STOP") {
          p->state = ProcessState::Stopped;
        } else {
          p->state = ProcessState::Terminated;
          p->status = TaskStatus::Failed;
        }
      }
      return {std::nullopt, false};
    }
    case ScenarioType::CpuUsageIncrease: {
      st.cpu_load_factor = *parse_double(get("load_factor"));
      auto r = execute_syscall(st.facade, inv);
      r.latency_ms = scale_latency(ctx.base_latency_ms, st.cpu_load_factor);
      return {r, false};
    }
  }
  throw Error("unknown scenario type");
}

// ---------------------------------------------------------------------------
// Adapter interface
// ---------------------------------------------------------------------------

struct SpawnOptions {
  std::uint64_t seed = 0;
  std::int64_t watchdog_ms = 0;  // 0 disables the watchdog
  std::int64_t restart_latency_ms = 1000;
};

enum class StepKind { Progress, Finished, Halted };

struct StepEvent {
  StepKind kind = StepKind::Progress;
  std::int64_t clock_ms = 0;
};

/// How the injector drives a target. A fault armed for an entry has effect
/// only inside [start_offset, start_offset + duration) of workload time.
class TargetAdapter {
 public:
  virtual ~TargetAdapter() = default;
  virtual void spawn(const WorkloadScript& workload, const SpawnOptions& options) = 0;
  virtual void arm(const SchemeEntry& entry) = 0;
  virtual void disarm(const SchemeEntry& entry) = 0;
  virtual StepEvent step() = 0;
  virtual TargetObservation observe() const = 0;
  virtual void terminate() = 0;
};

inline bool selector_matches(std::string_view selector, const Process& p, const std::string& task) {
  if (selector == "all") return true;
  if (selector.starts_with("task:")) return selector.substr(5) == task;
  if (selector.starts_with("pid:")) return parse_int<int>(selector.substr(4)) == p.pid;
  return false;
}

class SimulatedTarget final : public TargetAdapter {
 public:
  static constexpr int kFirstPid = 100;

  void spawn(const WorkloadScript& workload, const SpawnOptions& options) override {
    workload_ = workload;
    options_ = options;
    st_ = TargetState{};
    faults_.clear();
    samples_.clear();
    finished_ = false;
    rr_cursor_ = 0;
    for (std::size_t i = 0; i < workload_.tasks.size(); ++i) {
      Process p;
      p.pid = kFirstPid + static_cast<int>(i);
      p.task_index = i;
      st_.processes.push_back(p);
    }
    st_.clock_ms = workload_.warmup_ms;
    workload_start_ = st_.clock_ms;
    last_progress_ = st_.clock_ms;
  }

  void arm(const SchemeEntry& entry) override {
    ArmedFault f;
    f.entry = entry;
    f.start_abs = workload_start_ + entry.start_offset_ms;
    f.end_abs = f.start_abs + entry.duration_ms;
    faults_.push_back(std::move(f));
  }

  void disarm(const SchemeEntry& entry) override {
    for (auto& f : faults_) {
      if (f.phase == Phase::Done || !(f.entry == entry)) continue;
      if (f.phase == Phase::Active) deactivate(f);
      f.phase = Phase::Done;
      return;
    }
  }

  StepEvent step() override {
    if (finished_) return {st_.terminal == TerminalEvent::None ? StepKind::Finished : StepKind::Halted, st_.clock_ms};
    update_windows();

    Process* proc = next_runnable();
    if (!proc) {
      bool blocked = std::any_of(st_.processes.begin(), st_.processes.end(),
                                 [](const Process& p) { return p.state == ProcessState::Stopped; });
      if (blocked) return watchdog_expired();
      finish();
      return {StepKind::Finished, st_.clock_ms};
    }

    const auto& task = workload_.tasks[proc->task_index];
    Invocation inv{proc->pid, task.name, proc->next_call, task.calls[proc->next_call]};
    const std::int64_t base = sample_latency_ms(options_.seed, inv.pid, inv.call_index, inv.call);
    const std::int64_t started = st_.clock_ms;

    SyscallResult result;
    bool tampered = false;
    if (ArmedFault* f = matching_fault(*proc, inv)) {
      if (f->entry.fault.simulation_method_type == ScenarioType::CpuUsageIncrease) f->owns_cpu_factor = true;
      auto outcome = apply_scenario(st_, f->entry.fault, inv, {base, options_.restart_latency_ms});
      if (!outcome.result) {
        if (st_.terminal != TerminalEvent::None) {
          finish();
          return {StepKind::Halted, st_.clock_ms};
        }
        last_progress_ = st_.clock_ms;
        return {StepKind::Progress, st_.clock_ms};
      }
      result = std::move(*outcome.result);
      tampered = outcome.data_tampered;
    } else {
      result = execute_syscall(st_.facade, inv);
      result.latency_ms = scale_latency(base, st_.cpu_load_factor);
    }

    if (options_.watchdog_ms > 0 && started + result.latency_ms - last_progress_ > options_.watchdog_ms)
      return watchdog_expired();

    st_.log(EventKind::Syscall, inv.pid, format_syscall_payload(inv, result));
    st_.clock_ms = started + result.latency_ms;
    last_progress_ = st_.clock_ms;
    samples_.push_back({inv.call.syscall, inv.pid, started, result.latency_ms});

    // the calling task reacts to the result
    if (inv.call.expect_ok) {
      if (!result.ok) {
        if (is_transient_errno(result.errno_symbol)) {
          proc->had_errors = true;
        } else {
          proc->state = ProcessState::Terminated;
          proc->status = TaskStatus::Failed;
          st_.log(EventKind::TaskDone, proc->pid, task.name + " Failed");
          return {StepKind::Progress, st_.clock_ms};
        }
      } else if (tampered) {
        proc->had_errors = true;  // integrity check on the returned buffer
      }
    } else if (result.ok) {
      proc->had_errors = true;
    }

    if (++proc->next_call == task.calls.size()) {
      proc->state = ProcessState::Terminated;
      proc->status = proc->had_errors ? TaskStatus::CompletedWithErrors : TaskStatus::Completed;
      st_.log(EventKind::TaskDone, proc->pid, task.name + " " + std::string(task_status_name(*proc->status)));
    }
    return {StepKind::Progress, st_.clock_ms};
  }

  TargetObservation observe() const override {
    TargetObservation o;
    for (const auto& p : st_.processes) o.tasks.push_back({workload_.tasks[p.task_index].name, p.status});
    o.samples = samples_;
    o.terminal = st_.terminal;
    o.events = st_.events;
    o.started_at_ms = workload_start_;
    o.finished_at_ms = st_.clock_ms;
    return o;
  }

  void terminate() override {
    for (auto& p : st_.processes)
      if (p.state == ProcessState::Running || p.state == ProcessState::Stopped) p.state = ProcessState::Terminated;
    finished_ = true;
  }

  const TargetState& state() const noexcept { return st_; }
  std::int64_t workload_start_ms() const noexcept { return workload_start_; }

 private:
  enum class Phase { Pending, Active, Done };
  struct ArmedFault {
    SchemeEntry entry;
    std::int64_t start_abs = 0;
    std::int64_t end_abs = 0;
    Phase phase = Phase::Pending;
    bool owns_cpu_factor = false;
  };

  std::string fault_payload(const ArmedFault& f) const {
    return f.entry.fault.simulation_method_id + " " + std::string(scenario_code(f.entry.fault.simulation_method_type)) +
           " " + f.entry.fault.target_function;
  }

  void deactivate(ArmedFault& f) {
    if (f.owns_cpu_factor) {
      st_.cpu_load_factor = 1.0;
      f.owns_cpu_factor = false;
    }
    st_.log(EventKind::FaultDisarmed, 0, fault_payload(f));
  }

  void update_windows() {
    for (auto& f : faults_) {
      if (f.phase == Phase::Pending && st_.clock_ms >= f.start_abs) {
        f.phase = Phase::Active;
        st_.log(EventKind::FaultArmed, 0, fault_payload(f));
      }
      if (f.phase == Phase::Active && st_.clock_ms >= f.end_abs) {
        deactivate(f);
        f.phase = Phase::Done;
      }
    }
  }

  ArmedFault* matching_fault(const Process& p, const Invocation& inv) {
    for (auto& f : faults_) {
      if (f.phase != Phase::Active) continue;
      if (f.entry.fault.target_function != inv.call.syscall) continue;
      if (!selector_matches(f.entry.process_selector, p, inv.task)) continue;
      if (f.entry.target_file && (inv.call.args.empty() || inv.call.args[0] != *f.entry.target_file)) continue;
      return &f;
    }
    return nullptr;
  }

  Process* next_runnable() {
    const std::size_t n = st_.processes.size();
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t i = (rr_cursor_ + k) % n;
      auto& p = st_.processes[i];
      if (p.state == ProcessState::Running && p.next_call < workload_.tasks[p.task_index].calls.size()) {
        rr_cursor_ = (i + 1) % n;
        return &p;
      }
      // a task with no calls completes immediately
      if (p.state == ProcessState::Running && workload_.tasks[p.task_index].calls.empty() && !p.status) {
        p.state = ProcessState::Terminated;
        p.status = TaskStatus::Completed;
        st_.log(EventKind::TaskDone, p.pid, workload_.tasks[p.task_index].name + " Completed");
      }
    }
    return nullptr;
  }

  StepEvent watchdog_expired() {
    if (options_.watchdog_ms > 0) st_.clock_ms = std::max(st_.clock_ms, last_progress_ + options_.watchdog_ms);
    st_.terminal = TerminalEvent::NoProgress;
    finish();
    return {StepKind::Halted, st_.clock_ms};
  }

  void finish() {
    finished_ = true;
    if (st_.terminal != TerminalEvent::None)
      for (auto& p : st_.processes)
        if (!p.status) p.status = TaskStatus::Failed;
  }

  WorkloadScript workload_;
  SpawnOptions options_;
  TargetState st_;
  std::vector<ArmedFault> faults_;
  std::vector<SyscallSample> samples_;
  std::int64_t workload_start_ = 0;
  std::int64_t last_progress_ = 0;
  std::size_t rr_cursor_ = 0;
  bool finished_ = false;
};

}  // namespace fifml
