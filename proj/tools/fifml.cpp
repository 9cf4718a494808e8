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

// fifml: command-line front end.
//
// Exit codes: 0 success, 1 usage or validation, 2 I/O or parse, 3 license.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fifml.hpp"

namespace {

using namespace fifml;
namespace fs = std::filesystem;

enum Exit : int { kOk = 0, kUsage = 1, kIo = 2, kLicense = 3 };

struct SelectorArgs {
  std::string module;
  std::string scenario;
  std::string id;
  std::string function;
  std::vector<std::string> ids;

  void add_to(CLI::App* app) {
    app->add_option("--module", module, "Module tag (fs, int, io, mem, pro)");
    app->add_option("--scenario", scenario, "Scenario type (KFF, DLY, BUF, DWN, DOS, CPU or full name)");
    app->add_option("--id", id, "simulation_method_id");
    app->add_option("--function", function, "Target function");
    app->add_option("--ids", ids, "Explicit simulation_method_id list")->delimiter(',');
  }

  QueryFilter filter() const {
    QueryFilter f;
    if (!module.empty()) {
      f.module = parse_module_tag(module);
      if (!f.module) throw ValidationError("invalid selector", {"unknown module tag '" + module + "'"});
    }
    if (!scenario.empty()) {
      f.scenario = parse_scenario(scenario);
      if (!f.scenario) throw ValidationError("invalid selector", {"unknown scenario '" + scenario + "'"});
    }
    if (!id.empty()) f.id = id;
    if (!function.empty()) f.target_function = function;
    return f;
  }
};

struct CommandArgs {
  SelectorArgs selector;
  std::int64_t start = 0;
  std::int64_t duration = 2000;
  int repeat = 1;
  std::string process = "all";
  std::string file;

  void add_to(CLI::App* app) {
    selector.add_to(app);
    app->add_option("--start", start, "Fault start offset (virtual ms after warmup)");
    app->add_option("--duration", duration, "Fault duration (virtual ms)");
    app->add_option("--repeat", repeat, "Repetitions per selected mode");
    app->add_option("--process", process, "Process selector: all, task:<name> or pid:<n>");
    app->add_option("--file", file, "Restrict the fault to calls on this file");
  }

  ControlCommand command() const {
    ControlCommand c;
    c.selector.filter = selector.filter();
    c.selector.ids = selector.ids;
    c.start_offset_ms = start;
    c.duration_ms = duration;
    c.repeat_count = repeat;
    c.scope.process_selector = process;
    if (!file.empty()) c.scope.file_name = file;
    return c;
  }
};

struct MetricArgs {
  std::string format = "text";
  std::string taf = "mean";
  std::optional<std::uint64_t> n;
  std::vector<double> weights;
  std::string reference;

  void add_to(CLI::App* app, bool with_taf) {
    app->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "kv"}));
    if (with_taf) app->add_option("--taf", taf, "TAF statistic")->check(CLI::IsMember({"mean", "median"}));
    app->add_option("--n", n, "Override N, the fault count the rates divide by");
    app->add_option("--weights", weights, "FID weights: serious,mild,no_response,crash")
        ->delimiter(',')
        ->expected(4);
    app->add_option("--reference", reference, "Reference values (system.metric = value) to compare against");
  }

  ReportOptions options() const {
    ReportOptions o;
    o.taf = *parse_taf_statistic(taf);
    o.n_override = n;
    if (!weights.empty()) o.weights = {weights[0], weights[1], weights[2], weights[3]};
    return o;
  }

  std::string render(std::vector<SystemReport>& reports) const {
    if (!reference.empty()) {
      const auto ref = load_reference_file(reference);
      for (auto& r : reports) compare_with_reference(r, ref);
    }
    return format == "kv" ? report_to_kv(reports) : report_to_text(reports);
  }
};

// Comment lines (without the leading '#') describing a freshly generated library.
std::vector<std::string> library_header_comments(const Library& lib, const std::string& source) {
  std::vector<std::string> lines;
  lines.push_back(" Linux fault mode library, generated by `fifml library generate` from " + source + ".");
  std::string mod = " " + std::to_string(lib.size()) + " modes. Per module:";
  for (const auto& [m, n] : count_by_module(lib)) mod += " " + std::string(module_tag(m)) + "=" + std::to_string(n);
  lines.push_back(mod);
  std::string sc = " Per scenario:";
  for (const auto& [s, n] : count_by_scenario(lib)) sc += " " + std::string(scenario_code(s)) + "=" + std::to_string(n);
  lines.push_back(sc);
  return lines;
}

// ---------------------------------------------------------------------------

int cmd_library_validate(const std::string& path) {
  const auto lib = load_library_file(path);
  const auto findings = validate_library(lib);
  std::cout << lib.size() << " records, " << findings.size() << " findings\n";
  for (const auto& [m, n] : count_by_module(lib)) std::cout << "  " << module_tag(m) << ' ' << n << '\n';
  for (const auto& f : findings) std::cout << f.to_string() << '\n';
  return findings.empty() ? kOk : kUsage;
}

int cmd_library_query(const std::string& path, const SelectorArgs& sel) {
  const auto lib = load_library_file(path);
  for (const auto& m : query_modes(lib, sel.filter())) std::cout << format_mode(m) << '\n';
  return kOk;
}

int cmd_library_generate(const std::string& desc_path, const std::string& lib_path) {
  const auto corpus = load_descriptors_file(desc_path);
  auto generated = generate_corpus(corpus);
  const auto count = generated.size();
  std::error_code ec;
  if (fs::exists(lib_path, ec)) {
    const auto existing = load_library_file(lib_path);
    std::vector<FaultMode> all(existing.modes().begin(), existing.modes().end());
    all.insert(all.end(), std::make_move_iterator(generated.begin()), std::make_move_iterator(generated.end()));
    save_library_file(Library(std::move(all), existing.comments()), lib_path);
  } else {
    Library lib(std::move(generated));
    auto lines = library_header_comments(lib, fs::path(desc_path).filename().string());
    save_library_file(Library(std::vector<FaultMode>(lib.modes().begin(), lib.modes().end()), std::move(lines)),
                      lib_path);
  }
  std::cout << "generated " << count << " modes from " << corpus.size() << " descriptors into " << lib_path << '\n';
  return kOk;
}

int cmd_plan(const std::string& lib_path, const CommandArgs& args, const std::string& out) {
  const auto lib = load_library_file(lib_path);
  CampaignConfig config;
  config.command = args.command();
  const auto scheme = plan_campaign(config, lib);
  if (out.empty()) {
    save_scheme(scheme, std::cout);
  } else {
    std::ofstream f(out, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot write '" + out + "'");
    save_scheme(scheme, f);
    std::cout << scheme.scheme_id << ": " << scheme.entries.size() << " entries -> " << out << '\n';
  }
  return kOk;
}

int cmd_run(CampaignConfig config, const std::string& lib_path, const std::string& work_path,
            const CommandArgs& args) {
  const auto lib = load_library_file(lib_path);
  const auto work = load_workload_file(work_path);
  config.command = args.command();
  const auto m = run_campaign(config, lib, work);
  std::map<OutcomeClass, std::size_t> tally;
  for (const auto& r : RecordStore(config.output_dir).load_records()) tally[r.outcome]++;
  std::cout << m.experiment_ids.size() << " experiments (" << m.scheme_id << ") -> " << config.output_dir.string()
            << '\n';
  for (auto c : kAllOutcomes) std::cout << "  " << outcome_name(c) << ' ' << tally[c] << '\n';
  return kOk;
}

int cmd_analyze(const std::vector<std::string>& stores, const MetricArgs& args, const std::string& lib_path,
                const std::string& work_path) {
  std::optional<Library> lib;
  std::optional<WorkloadScript> work;
  if (!lib_path.empty()) lib = load_library_file(lib_path);
  if (!work_path.empty()) work = load_workload_file(work_path);
  std::vector<SystemReport> reports;
  for (const auto& s : stores) {
    const auto loaded = load_store(s, lib ? &*lib : nullptr, work ? &*work : nullptr);
    reports.push_back(analyze_store(loaded, args.options()));
  }
  std::cout << args.render(reports);
  return kOk;
}

int cmd_report(const std::string& counts, const MetricArgs& args) {
  std::vector<SystemReport> reports;
  for (const auto& [system, stats] : load_counts_file(counts))
    reports.push_back(report_from_statistics(system, stats, args.options()));
  std::cout << args.render(reports);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FIFML: fault-mode library driven fault injection campaigns"};
  app.require_subcommand(1);

  std::string lib_path, work_path, desc_path, out_path, counts_path;
  std::vector<std::string> stores;
  SelectorArgs query_sel;
  CommandArgs plan_args, run_args;
  MetricArgs analyze_args, report_args;
  CampaignConfig config;
  std::string license_path;

  auto* library = app.add_subcommand("library", "Fault mode library management");
  library->require_subcommand(1);
  auto* validate = library->add_subcommand("validate", "Check every record of a library");
  validate->add_option("--library", lib_path, "Library file")->required();
  auto* query = library->add_subcommand("query", "Print matching records");
  query->add_option("--library", lib_path, "Library file")->required();
  query_sel.add_to(query);
  auto* generate = library->add_subcommand("generate", "Generate modes from descriptors into a library file");
  generate->add_option("--descriptors", desc_path, "Descriptor file")->required();
  generate->add_option("--library", lib_path, "Library file to create or append to")->required();

  auto* plan = app.add_subcommand("plan", "Generate and validate an injection scheme");
  plan->add_option("--library", lib_path, "Library file")->required();
  plan->add_option("--out", out_path, "Scheme file to write (default: stdout)");
  plan_args.add_to(plan);

  auto* run = app.add_subcommand("run", "Run a campaign into a record store");
  run->add_option("--library", lib_path, "Library file")->required();
  run->add_option("--workload", work_path, "Workload script")->required();
  run->add_option("--out", out_path, "Output store directory (must be empty or absent)")->required();
  run->add_option("--license", license_path, "License file")->required();
  run->add_option("--seed", config.seed, "Campaign seed");
  run->add_option("--parallel", config.parallelism, "Worker threads")->check(CLI::PositiveNumber);
  run->add_option("--repetitions", config.baseline_repetitions, "Baseline repetitions (>= 2)");
  run->add_option("--system", config.system, "System name used in reports");
  run->add_flag("--combined", config.combined, "Inject all entries in a single experiment");
  run_args.add_to(run);

  auto* analyze = app.add_subcommand("analyze", "Compute metrics from one or more record stores");
  analyze->add_option("stores", stores, "Store directories")->required();
  analyze->add_option("--library", lib_path, "Refuse stores not produced from this library");
  analyze->add_option("--workload", work_path, "Refuse stores not produced from this workload");
  analyze_args.add_to(analyze, true);

  auto* report = app.add_subcommand("report", "Compute metrics from per-system impact counts");
  report->add_option("--counts", counts_path, "Counts file (FIFML-COUNTS 1)")->required();
  report_args.add_to(report, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*validate) return cmd_library_validate(lib_path);
    if (*query) return cmd_library_query(lib_path, query_sel);
    if (*generate) return cmd_library_generate(desc_path, lib_path);
    if (*plan) return cmd_plan(lib_path, plan_args, out_path);
    if (*run) {
      config.output_dir = out_path;
      config.license_path = license_path;
      return cmd_run(config, lib_path, work_path, run_args);
    }
    if (*analyze) return cmd_analyze(stores, analyze_args, lib_path, work_path);
    if (*report) return cmd_report(counts_path, report_args);
  } catch (const LicenseError& e) {
    std::cerr << "fifml: license refused: " << e.what() << '\n';
    return kLicense;
  } catch (const IoError& e) {
    std::cerr << "fifml: " << e.what() << '\n';
    return kIo;
  } catch (const ParseError& e) {
    std::cerr << "fifml: parse error: " << e.what() << '\n';
    return kIo;
  } catch (const DuplicateIdError& e) {
    std::cerr << "fifml: " << e.what() << '\n';
    return kIo;
  } catch (const Error& e) {
    std::cerr << "fifml: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "fifml: internal error: " << e.what() << '\n';
    return kIo;
  }
  return kUsage;
}
