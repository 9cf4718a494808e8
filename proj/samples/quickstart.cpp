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

// Derives fault modes for one syscall, injects each into a two-task workload
// and prints the outcome of every experiment.

#include <iostream>
#include <sstream>

#include "fifml.hpp"

int main() {
  using namespace fifml;

  SyscallDescriptor read_desc;
  read_desc.name = "read";
  read_desc.internal_function = "vfs_read";
  read_desc.module = ModuleTag::FileSystem;
  read_desc.ordinal = 1;
  read_desc.operation = "reading files";
  read_desc.params = {{"fd", "descriptor"}, {"buf", "user buffer"}, {"count", "length"}};
  read_desc.param_faults = {{0, "EBADF", "bad file descriptor"}, {0, "EINTR", "interrupted by a signal"}};
  read_desc.extra_scenarios = {{ScenarioType::Delay, {{"delay_ms", "250"}}},
                               {ScenarioType::BufferDataError, {}}};

  const Library library(generate_modes(read_desc));

  std::istringstream script(
      "FIFML-WORK 1\n"
      "warmup 100\n"
      "task reader\n"
      "call open notes.txt expect ok\n"
      "call write notes.txt hello expect ok\n"
      "call read notes.txt 5 expect ok\n"
      "task sleeper\n"
      "call nanosleep 40 expect ok\n");
  const auto workload = parse_workload(script);

  ControlCommand command;
  command.selector.filter.target_function = "read";
  const auto scheme = generate_scheme(command, library);

  for (const auto& entry : scheme.entries) {
    const auto obs = run_experiment(entry, workload, /*seed=*/7);
    std::cout << entry.fault.simulation_method_id << "  " << entry.fault.fault_mode_name << "  -> "
              << outcome_name(classify_outcome(obs)) << '\n';
  }
}
