// SPDX-License-Identifier: Apache-2.0
#include "sigscope/sigscope.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "sigscope/angle_dynamics.hpp"
#include "sigscope/emit.hpp"
#include "sigscope/errors.hpp"
#include "sigscope/estimator.hpp"
#include "sigscope/lemma_lab.hpp"
#include "sigscope/scenario.hpp"
#include "sigscope/sl2.hpp"

using namespace sigscope;

struct sigscope_scenario {
  Scenario impl;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void assign_out(char** slot, const std::string& text) {
  if (slot != nullptr) *slot = dup_string(text);
}

template <typename Fn>
sigscope_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    g_last_error = e.what();
    return SIGSCOPE_ERROR_PARSE;
  } catch (const SoundnessError& e) {
    g_last_error = e.what();
    return SIGSCOPE_ERROR_SOUNDNESS;
  } catch (const CoverageError& e) {
    g_last_error = e.what();
    return SIGSCOPE_ERROR_INVALID_ARGUMENT;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return SIGSCOPE_ERROR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SIGSCOPE_ERROR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return SIGSCOPE_ERROR_INTERNAL;
  }
}

}  // namespace

extern "C" {

const char* sigscope_version(void) { return "0.1.0"; }

const char* sigscope_status_name(sigscope_status status) {
  switch (status) {
    case SIGSCOPE_OK: return "ok";
    case SIGSCOPE_ERROR_INVALID_ARGUMENT: return "invalid_argument";
    case SIGSCOPE_ERROR_PARSE: return "parse_error";
    case SIGSCOPE_ERROR_IO: return "io_error";
    case SIGSCOPE_ERROR_SOUNDNESS: return "soundness_violation";
    case SIGSCOPE_ERROR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

const char* sigscope_last_error(void) { return g_last_error.c_str(); }

void sigscope_string_free(char* s) { std::free(s); }

sigscope_status sigscope_scenario_parse(const char* json_text,
                                        sigscope_scenario** out) {
  return guarded([&]() -> sigscope_status {
    if (json_text == nullptr || out == nullptr) {
      g_last_error = "null argument";
      return SIGSCOPE_ERROR_INVALID_ARGUMENT;
    }
    *out = new sigscope_scenario{parse_scenario(json_text)};
    return SIGSCOPE_OK;
  });
}

sigscope_status sigscope_scenario_load(const char* filename,
                                       sigscope_scenario** out) {
  return guarded([&]() -> sigscope_status {
    if (filename == nullptr || out == nullptr) {
      g_last_error = "null argument";
      return SIGSCOPE_ERROR_INVALID_ARGUMENT;
    }
    *out = new sigscope_scenario{load_scenario(filename)};
    return SIGSCOPE_OK;
  });
}

sigscope_status sigscope_scenario_builtin(const char* name,
                                          sigscope_scenario** out) {
  return guarded([&]() -> sigscope_status {
    if (name == nullptr || out == nullptr) {
      g_last_error = "null argument";
      return SIGSCOPE_ERROR_INVALID_ARGUMENT;
    }
    *out = new sigscope_scenario{builtin_scenario(name)};
    return SIGSCOPE_OK;
  });
}

const char* sigscope_scenario_builtin_names(void) {
  static const std::string joined = [] {
    std::string s;
    for (const auto& name : builtin_scenario_names()) {
      if (!s.empty()) s += ',';
      s += name;
    }
    return s;
  }();
  return joined.c_str();
}

void sigscope_scenario_free(sigscope_scenario* scenario) { delete scenario; }

double sigscope_scenario_length(const sigscope_scenario* scenario) {
  return scenario == nullptr ? 0.0 : scenario->impl.path.length();
}

size_t sigscope_scenario_segment_count(const sigscope_scenario* scenario) {
  return scenario == nullptr ? 0 : scenario->impl.path.size();
}

const char* sigscope_scenario_kind(const sigscope_scenario* scenario) {
  return scenario == nullptr ? "" : scenario->impl.kind.c_str();
}

sigscope_status sigscope_scenario_to_json(const sigscope_scenario* scenario,
                                          char** json_out) {
  return guarded([&]() -> sigscope_status {
    if (scenario == nullptr || json_out == nullptr) {
      g_last_error = "null argument";
      return SIGSCOPE_ERROR_INVALID_ARGUMENT;
    }
    assign_out(json_out, scenario_to_json(scenario->impl));
    return SIGSCOPE_OK;
  });
}

sigscope_status sigscope_estimate(const sigscope_scenario* scenario, int depth,
                                  const double* lambdas, size_t n_lambdas,
                                  double kappa, const double* t2_offsets,
                                  size_t n_offsets, char** report_json,
                                  char** signature_csv_out,
                                  char** development_csv_out) {
  return guarded([&]() -> sigscope_status {
    if (scenario == nullptr || lambdas == nullptr || n_lambdas == 0) {
      g_last_error = "null scenario or empty lambda schedule";
      return SIGSCOPE_ERROR_INVALID_ARGUMENT;
    }
    const std::span<const double> schedule(lambdas, n_lambdas);
    const Scenario& s = scenario->impl;
    EstimateReport rep =
        (s.cusp && s.cusp->c < 1.0 && t2_offsets != nullptr && n_offsets > 0)
            ? estimate_singular_cusp(*s.cusp, s.resolution, schedule,
                                     std::span<const double>(t2_offsets, n_offsets),
                                     depth)
            : estimate_length(s.path, depth, schedule, kappa);
    assign_out(report_json, estimate_to_json(rep));
    assign_out(signature_csv_out, signature_csv(rep));
    assign_out(development_csv_out, development_csv(rep));
    return SIGSCOPE_OK;
  });
}

sigscope_status sigscope_develop(const sigscope_scenario* scenario,
                                 const double* lambdas, size_t n_lambdas,
                                 char** report_json, char** csv_out) {
  return guarded([&]() -> sigscope_status {
    if (scenario == nullptr || lambdas == nullptr || n_lambdas == 0) {
      g_last_error = "null scenario or empty lambda schedule";
      return SIGSCOPE_ERROR_INVALID_ARGUMENT;
    }
    const DevelopmentBoundReport rep = development_length_bound(
        scenario->impl.path, std::span<const double>(lambdas, n_lambdas));
    JsonWriter w;
    w.begin_object();
    w.key("schedule").begin_array();
    for (double l : rep.lambdas) w.value(l);
    w.end_array();
    w.key("rows").begin_array();
    for (std::size_t i = 0; i < rep.lambdas.size(); ++i) {
      w.begin_object();
      w.key("lambda").value(rep.lambdas[i]);
      w.key("log_norm").value(rep.log_norms[i]);
      w.key("bound").value(rep.bounds[i]);
      w.end_object();
    }
    w.end_array();
    w.key("max_bound").value(rep.max_bound);
    w.key("slope_last3").value(rep.slope_last3);
    w.end_object();
    assign_out(report_json, w.take());
    CsvWriter csv("lambda,log_norm,log_norm_over_lambda");
    for (std::size_t i = 0; i < rep.lambdas.size(); ++i) {
      csv.cell(rep.lambdas[i]).cell(rep.log_norms[i]).cell(rep.bounds[i]).end_row();
    }
    assign_out(csv_out, csv.take());
    return SIGSCOPE_OK;
  });
}

sigscope_status sigscope_dynamics(const sigscope_scenario* scenario,
                                  double lambda, const char* phi0_policy,
                                  double policy_value, size_t samples,
                                  char** report_json, char** trace_csv) {
  return guarded([&]() -> sigscope_status {
    if (scenario == nullptr || phi0_policy == nullptr) {
      g_last_error = "null argument";
      return SIGSCOPE_ERROR_INVALID_ARGUMENT;
    }
    const std::string policy = phi0_policy;
    const AngularPath alpha_path = scenario->impl.path.reversed();
    const double L = alpha_path.length();

    const AngularPath* run_path = &alpha_path;
    AngularPath trimmed = alpha_path;
    double phi0;
    double correction = 0.0;
    if (policy == "aligned") {
      phi0 = alpha_path.segments().front().angle / 2.0;
    } else if (policy == "fixed") {
      phi0 = policy_value;
    } else if (policy == "endpoint_free") {
      if (!(policy_value > 0.0 && policy_value < L / 2)) {
        g_last_error = "endpoint_free kappa must lie in (0, L/2)";
        return SIGSCOPE_ERROR_INVALID_ARGUMENT;
      }
      trimmed = alpha_path.restricted(policy_value, L - policy_value);
      run_path = &trimmed;
      phi0 = trimmed.segments().front().angle / 2.0;
      correction = 2.0 * policy_value;
    } else {
      g_last_error = "unknown phi0 policy '" + policy + "'";
      return SIGSCOPE_ERROR_INVALID_ARGUMENT;
    }

    const AngleTrajectory traj = propagate(*run_path, lambda, phi0);
    JsonWriter w;
    w.begin_object();
    w.key("lambda").value(lambda);
    w.key("phi0_policy").value(std::string_view(policy));
    w.key("phi0").value(phi0);
    w.key("length").value(L);
    w.key("radial_log_integral").value(traj.radial_log_integral);
    w.key("radial_value").value(radial_value(traj));
    w.key("certified_bound").value(traj.radial_log_integral - correction);
    w.key("final_phi").value(traj.final_phi());
    w.key("segments").value(traj.segments.size());
    w.end_object();
    assign_out(report_json, w.take());
    assign_out(trace_csv, trajectory_csv(traj, samples));
    return SIGSCOPE_OK;
  });
}

sigscope_status sigscope_lemma_suite(const char* lemma_id, uint64_t seed,
                                     uint32_t count, char** verdicts_json,
                                     uint32_t counts_out[4]) {
  return guarded([&]() -> sigscope_status {
    if (lemma_id == nullptr) {
      g_last_error = "null lemma id";
      return SIGSCOPE_ERROR_INVALID_ARGUMENT;
    }
    const auto id = lemma_from_name(lemma_id);
    if (!id) {
      g_last_error = std::string("unknown lemma id '") + lemma_id + "'";
      return SIGSCOPE_ERROR_INVALID_ARGUMENT;
    }
    const SuiteResult result = run_suite(*id, seed, count);
    if (counts_out != nullptr) {
      counts_out[0] = result.pass;
      counts_out[1] = result.fail;
      counts_out[2] = result.skip;
      counts_out[3] = result.vacuous;
    }
    assign_out(verdicts_json, suite_to_json(result));
    return SIGSCOPE_OK;
  });
}

const char* sigscope_lemma_names(void) {
  static const std::string joined = [] {
    std::string s;
    for (LemmaId id : all_lemmas()) {
      if (!s.empty()) s += ',';
      s += lemma_name(id);
    }
    return s;
  }();
  return joined.c_str();
}

}  // extern "C"
