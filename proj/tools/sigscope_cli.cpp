// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Links the C API only; all numerics and report
// formatting live behind it, so equal inputs give byte-identical files.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sigscope/sigscope.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitSoundness = 2;

struct ScenarioDeleter {
  void operator()(sigscope_scenario* s) const { sigscope_scenario_free(s); }
};
using ScenarioPtr = std::unique_ptr<sigscope_scenario, ScenarioDeleter>;

struct StringDeleter {
  void operator()(char* s) const { sigscope_string_free(s); }
};
using CString = std::unique_ptr<char, StringDeleter>;

int status_to_exit(sigscope_status status) {
  if (status == SIGSCOPE_OK) return kExitOk;
  if (status == SIGSCOPE_ERROR_SOUNDNESS) return kExitSoundness;
  return kExitUsage;
}

int report_failure(sigscope_status status) {
  std::cerr << "error (" << sigscope_status_name(status)
            << "): " << sigscope_last_error() << "\n";
  return status_to_exit(status);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

bool parse_double_list(const std::string& text, std::vector<double>& out) {
  for (const auto& tok : split(text, ',')) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(tok, &pos);
      if (pos != tok.size()) return false;
      out.push_back(v);
    } catch (...) {
      return false;
    }
  }
  return !out.empty();
}

// "geometric:start:ratio:count", "list:v1,v2,..." or a bare comma list
bool parse_schedule(const std::string& spec, std::vector<double>& out) {
  out.clear();
  if (spec.rfind("geometric:", 0) == 0) {
    const auto parts = split(spec, ':');
    if (parts.size() != 4) return false;
    try {
      double v = std::stod(parts[1]);
      const double ratio = std::stod(parts[2]);
      const long count = std::stol(parts[3]);
      if (!(v > 0.0) || !(ratio > 0.0) || count < 1) return false;
      for (long i = 0; i < count; ++i) {
        out.push_back(v);
        v *= ratio;
      }
      return true;
    } catch (...) {
      return false;
    }
  }
  if (spec.rfind("list:", 0) == 0) {
    return parse_double_list(spec.substr(5), out);
  }
  return parse_double_list(spec, out);
}

bool parse_seed(const std::string& text, std::uint64_t& out) {
  try {
    out = std::stoull(text, nullptr, 0);  // accepts 0x... and decimal
    return true;
  } catch (...) {
    return false;
  }
}

bool write_file(const std::filesystem::path& path, const char* content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << content;
  return static_cast<bool>(out);
}

struct ScenarioOptions {
  std::string file;
  std::string builtin;
};

void add_scenario_options(CLI::App* cmd, ScenarioOptions& opts) {
  auto* file = cmd->add_option("--scenario", opts.file, "scenario JSON file");
  auto* builtin =
      cmd->add_option("--builtin", opts.builtin, "built-in scenario name");
  file->excludes(builtin);
}

ScenarioPtr open_scenario(const ScenarioOptions& opts, sigscope_status& status) {
  sigscope_scenario* raw = nullptr;
  if (!opts.builtin.empty()) {
    status = sigscope_scenario_builtin(opts.builtin.c_str(), &raw);
  } else if (!opts.file.empty()) {
    status = sigscope_scenario_load(opts.file.c_str(), &raw);
  } else {
    status = SIGSCOPE_ERROR_INVALID_ARGUMENT;
    return nullptr;
  }
  return ScenarioPtr(raw);
}

std::string output_stem(const ScenarioPtr& scenario, const ScenarioOptions& opts) {
  if (!opts.builtin.empty()) return opts.builtin;
  const std::filesystem::path p(opts.file);
  const std::string stem = p.stem().string();
  return stem.empty() ? std::string("scenario") : stem;
}

int emit(const std::filesystem::path& out_dir, const std::string& name,
         const char* content) {
  const auto path = out_dir / name;
  if (!write_file(path, content)) {
    std::cerr << "error: cannot write " << path << "\n";
    return kExitUsage;
  }
  std::cout << "wrote " << path.string() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sigscope: signature and SL2 development laboratory for planar "
               "bounded-variation paths"};
  app.require_subcommand(1);

  // ---- estimate ----
  auto* estimate = app.add_subcommand(
      "estimate", "length-recovery report (signatures + developments)");
  ScenarioOptions est_scenario;
  add_scenario_options(estimate, est_scenario);
  int est_depth = 12;
  std::string est_lambdas = "geometric:1:2:12";
  double est_kappa = 0.0;
  std::string est_offsets = "0.2,0.1,0.05";
  std::string est_out = ".";
  std::string est_format = "both";
  estimate->add_option("--depth", est_depth, "truncation depth (default 12)");
  estimate->add_option("--lambdas", est_lambdas,
                       "schedule: geometric:start:ratio:count or list");
  estimate->add_option("--kappa", est_kappa, "endpoint margin (default 0)");
  estimate->add_option("--t2-offsets", est_offsets,
                       "cusp push-in offsets t2 - L/2 (singular cusps only)");
  estimate->add_option("--out", est_out, "output directory");
  estimate->add_option("--format", est_format, "json|csv|both");

  // ---- develop ----
  auto* develop = app.add_subcommand(
      "develop", "SL2 development lower bounds over a lambda schedule");
  ScenarioOptions dev_scenario;
  add_scenario_options(develop, dev_scenario);
  std::string dev_lambdas = "geometric:1:2:15";
  std::string dev_out = ".";
  std::string dev_format = "both";
  develop->add_option("--lambdas", dev_lambdas, "lambda schedule");
  develop->add_option("--out", dev_out, "output directory");
  develop->add_option("--format", dev_format, "json|csv|both");

  // ---- dynamics ----
  auto* dynamics = app.add_subcommand(
      "dynamics", "angle dynamics trace of the time-reversed path");
  ScenarioOptions dyn_scenario;
  add_scenario_options(dynamics, dyn_scenario);
  double dyn_lambda = 100.0;
  std::string dyn_phi0 = "aligned";
  std::size_t dyn_samples = 0;
  std::string dyn_out = ".";
  dynamics->add_option("--lambda", dyn_lambda, "lambda (default 100)");
  dynamics->add_option("--phi0", dyn_phi0,
                       "aligned | fixed:<value> | endpoint_free:<kappa>");
  dynamics->add_option("--samples", dyn_samples,
                       "uniform trace samples (0 = breakpoints)");
  dynamics->add_option("--out", dyn_out, "output directory");

  // ---- lemmas ----
  auto* lemmas = app.add_subcommand("lemmas", "randomized lemma suites");
  std::string lem_id;
  std::uint32_t lem_count = 1000;
  std::string lem_seed = "0x5EED";
  std::string lem_out = ".";
  lemmas->add_option("--id", lem_id, "lemma id or 'all'")->required();
  lemmas->add_option("--count", lem_count, "instances per lemma (default 1000)");
  lemmas->add_option("--seed", lem_seed, "suite seed (default 0x5EED)");
  lemmas->add_option("--out", lem_out, "output directory");

  // ---- scenarios ----
  auto* scenarios = app.add_subcommand("scenarios", "built-in scenario library");
  bool scen_list = false;
  std::string scen_dump;
  scenarios->add_flag("--list", scen_list, "list built-in scenarios");
  scenarios->add_option("--dump", scen_dump, "write built-ins to a directory");

  CLI11_PARSE(app, argc, argv);

  if (estimate->parsed()) {
    sigscope_status status = SIGSCOPE_OK;
    ScenarioPtr scenario = open_scenario(est_scenario, status);
    if (!scenario) {
      if (status == SIGSCOPE_ERROR_INVALID_ARGUMENT) {
        std::cerr << "error: give --scenario FILE or --builtin NAME\n";
        return kExitUsage;
      }
      return report_failure(status);
    }
    std::vector<double> schedule, offsets;
    if (!parse_schedule(est_lambdas, schedule)) {
      std::cerr << "error: bad --lambdas spec '" << est_lambdas << "'\n";
      return kExitUsage;
    }
    if (!est_offsets.empty() && !parse_double_list(est_offsets, offsets)) {
      std::cerr << "error: bad --t2-offsets list '" << est_offsets << "'\n";
      return kExitUsage;
    }
    char* json = nullptr;
    char* sig_csv = nullptr;
    char* dev_csv = nullptr;
    status = sigscope_estimate(scenario.get(), est_depth, schedule.data(),
                               schedule.size(), est_kappa, offsets.data(),
                               offsets.size(), &json, &sig_csv, &dev_csv);
    if (status != SIGSCOPE_OK) return report_failure(status);
    const CString j(json), s(sig_csv), d(dev_csv);
    const std::string stem = output_stem(scenario, est_scenario);
    const std::filesystem::path out_dir(est_out);
    int rc = kExitOk;
    if (est_format != "csv") rc |= emit(out_dir, stem + "_estimate.json", j.get());
    if (est_format != "json") {
      rc |= emit(out_dir, stem + "_signature.csv", s.get());
      rc |= emit(out_dir, stem + "_development.csv", d.get());
    }
    return rc;
  }

  if (develop->parsed()) {
    sigscope_status status = SIGSCOPE_OK;
    ScenarioPtr scenario = open_scenario(dev_scenario, status);
    if (!scenario) {
      if (status == SIGSCOPE_ERROR_INVALID_ARGUMENT) {
        std::cerr << "error: give --scenario FILE or --builtin NAME\n";
        return kExitUsage;
      }
      return report_failure(status);
    }
    std::vector<double> schedule;
    if (!parse_schedule(dev_lambdas, schedule)) {
      std::cerr << "error: bad --lambdas spec '" << dev_lambdas << "'\n";
      return kExitUsage;
    }
    char* json = nullptr;
    char* csv = nullptr;
    status = sigscope_develop(scenario.get(), schedule.data(), schedule.size(),
                              &json, &csv);
    if (status != SIGSCOPE_OK) return report_failure(status);
    const CString j(json), c(csv);
    const std::string stem = output_stem(scenario, dev_scenario);
    const std::filesystem::path out_dir(dev_out);
    int rc = kExitOk;
    if (dev_format != "csv") rc |= emit(out_dir, stem + "_develop.json", j.get());
    if (dev_format != "json") rc |= emit(out_dir, stem + "_develop.csv", c.get());
    return rc;
  }

  if (dynamics->parsed()) {
    sigscope_status status = SIGSCOPE_OK;
    ScenarioPtr scenario = open_scenario(dyn_scenario, status);
    if (!scenario) {
      if (status == SIGSCOPE_ERROR_INVALID_ARGUMENT) {
        std::cerr << "error: give --scenario FILE or --builtin NAME\n";
        return kExitUsage;
      }
      return report_failure(status);
    }
    std::string policy = dyn_phi0;
    double policy_value = 0.0;
    const auto colon = dyn_phi0.find(':');
    if (colon != std::string::npos) {
      policy = dyn_phi0.substr(0, colon);
      try {
        policy_value = std::stod(dyn_phi0.substr(colon + 1));
      } catch (...) {
        std::cerr << "error: bad --phi0 value in '" << dyn_phi0 << "'\n";
        return kExitUsage;
      }
    }
    char* json = nullptr;
    char* csv = nullptr;
    status = sigscope_dynamics(scenario.get(), dyn_lambda, policy.c_str(),
                               policy_value, dyn_samples, &json, &csv);
    if (status != SIGSCOPE_OK) return report_failure(status);
    const CString j(json), c(csv);
    const std::string stem = output_stem(scenario, dyn_scenario);
    const std::filesystem::path out_dir(dyn_out);
    int rc = kExitOk;
    rc |= emit(out_dir, stem + "_dynamics.json", j.get());
    rc |= emit(out_dir, stem + "_trace.csv", c.get());
    return rc;
  }

  if (lemmas->parsed()) {
    std::uint64_t seed = 0;
    if (!parse_seed(lem_seed, seed)) {
      std::cerr << "error: bad --seed '" << lem_seed << "'\n";
      return kExitUsage;
    }
    std::vector<std::string> ids;
    if (lem_id == "all") {
      ids = split(sigscope_lemma_names(), ',');
    } else {
      ids.push_back(lem_id);
    }
    const std::filesystem::path out_dir(lem_out);
    std::uint64_t total_fail = 0;
    for (const auto& id : ids) {
      char* json = nullptr;
      std::uint32_t counts[4] = {0, 0, 0, 0};
      const sigscope_status status =
          sigscope_lemma_suite(id.c_str(), seed, lem_count, &json, counts);
      if (status != SIGSCOPE_OK) return report_failure(status);
      const CString j(json);
      if (emit(out_dir, "lemmas_" + id + ".json", j.get()) != kExitOk) {
        return kExitUsage;
      }
      std::printf("%s: pass=%u fail=%u skip=%u vacuous=%u\n", id.c_str(),
                  counts[0], counts[1], counts[2], counts[3]);
      total_fail += counts[1];
    }
    return total_fail == 0 ? kExitOk : kExitUsage;
  }

  if (scenarios->parsed()) {
    const auto names = split(sigscope_scenario_builtin_names(), ',');
    if (!scen_dump.empty()) {
      const std::filesystem::path out_dir(scen_dump);
      std::error_code ec;
      std::filesystem::create_directories(out_dir, ec);
      for (const auto& name : names) {
        sigscope_scenario* raw = nullptr;
        sigscope_status status = sigscope_scenario_builtin(name.c_str(), &raw);
        if (status != SIGSCOPE_OK) return report_failure(status);
        const ScenarioPtr scenario(raw);
        char* json = nullptr;
        status = sigscope_scenario_to_json(scenario.get(), &json);
        if (status != SIGSCOPE_OK) return report_failure(status);
        const CString j(json);
        if (emit(out_dir, name + ".json", j.get()) != kExitOk) return kExitUsage;
      }
      return kExitOk;
    }
    for (const auto& name : names) {
      sigscope_scenario* raw = nullptr;
      if (sigscope_scenario_builtin(name.c_str(), &raw) != SIGSCOPE_OK) continue;
      const ScenarioPtr scenario(raw);
      std::printf("%-24s kind=%-13s segments=%-6zu length=%g\n", name.c_str(),
                  sigscope_scenario_kind(scenario.get()),
                  sigscope_scenario_segment_count(scenario.get()),
                  sigscope_scenario_length(scenario.get()));
    }
    return kExitOk;
  }

  return kExitUsage;
}
