// Copyright 2026 The cohj Authors
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

#include "cohj/cohj.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <string>

#include "cohj/geometry.hpp"
#include "cohj/runner.hpp"
#include "cohj/systems.hpp"

using namespace cohj;

struct cohj_system {
  std::string id;
  json params;
  StructureKind kind;
  ScalarField H;
  GeometricStructure structure;
};

struct cohj_section {
  Section gamma;
};

struct cohj_trajectory {
  Trajectory traj;
  ScalarField H;
  StructureKind kind;
};

namespace {

thread_local std::string last_error;

cohj_status fail(cohj_status status, const std::string& msg) {
  last_error = msg;
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <class F>
cohj_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return COHJ_OK;
  } catch (const Error& e) {
    return fail(static_cast<cohj_status>(e.code()), e.what());
  } catch (const json::exception& e) {
    return fail(COHJ_CONFIG_ERROR, e.what());
  } catch (const std::bad_alloc&) {
    return fail(COHJ_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(COHJ_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(COHJ_INTERNAL_ERROR, "unknown error");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

json parse_or_null(const char* text) {
  if (text == nullptr || *text == '\0') return nullptr;
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ConfigError, std::string("invalid JSON: ") + e.what());
  }
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Vec span_of(const double* x, std::size_t len) { return Vec(x, x + len); }

void copy_out(const Vec& v, double* out) { std::copy(v.begin(), v.end(), out); }

PhasePoint point_of(const cohj_system* s, const double* x) {
  const std::size_t n = s->H.dim();
  PhasePoint p = point_from_flat(span_of(x, 2 * n + 1), n);
  validate(p);
  return p;
}

}  // namespace

extern "C" {

const char* cohj_version(void) { return "0.1.0"; }

const char* cohj_status_name(cohj_status status) {
  switch (status) {
    case COHJ_OK:
      return "Ok";
    case COHJ_INTERNAL_ERROR:
      return "InternalError";
    default:
      if (status >= COHJ_INVALID_ARGUMENT && status <= COHJ_IO_ERROR)
        return error_code_name(static_cast<ErrorCode>(status));
      return "Unknown";
  }
}

const char* cohj_last_error(void) { return last_error.c_str(); }

void cohj_string_free(char* s) { std::free(s); }

cohj_status cohj_system_create(const char* id, const char* params_json, cohj_structure structure, cohj_system** out) {
  return guarded([&] {
    require(id != nullptr && out != nullptr, "null argument");
    require(structure == COHJ_COSYMPLECTIC || structure == COHJ_CONTACT, "unknown structure kind");
    *out = nullptr;
    const json params = parse_or_null(params_json);
    ScalarField H = make_system(id, params);
    const StructureKind kind = structure == COHJ_CONTACT ? StructureKind::Contact : StructureKind::Cosymplectic;
    GeometricStructure g = kind == StructureKind::Contact ? GeometricStructure::contact(H.dim())
                                                          : GeometricStructure::cosymplectic(H);
    *out = new cohj_system{id, params, kind, std::move(H), std::move(g)};
  });
}

void cohj_system_free(cohj_system* system) { delete system; }

size_t cohj_system_dim(const cohj_system* system) { return system == nullptr ? 0 : system->H.dim(); }

cohj_status cohj_hamiltonian(const cohj_system* system, const double* x, double* value) {
  return guarded([&] {
    require(system && x && value, "null argument");
    *value = system->H(point_of(system, x));
  });
}

cohj_status cohj_eta(const cohj_system* system, const double* x, double* form) {
  return guarded([&] {
    require(system && x && form, "null argument");
    copy_out(to_flat(eval_eta(system->structure, point_of(system, x))), form);
  });
}

cohj_status cohj_flat(const cohj_system* system, const double* x, const double* vector, double* form) {
  return guarded([&] {
    require(system && x && vector && form, "null argument");
    const std::size_t n = system->H.dim();
    const TangentVector v = vector_from_flat(span_of(vector, 2 * n + 1), n);
    copy_out(to_flat(flat(system->structure, v, point_of(system, x))), form);
  });
}

cohj_status cohj_sharp(const cohj_system* system, const double* x, const double* form, double* vector) {
  return guarded([&] {
    require(system && x && form && vector, "null argument");
    const std::size_t n = system->H.dim();
    const OneForm a = form_from_flat(span_of(form, 2 * n + 1), n);
    copy_out(to_flat(sharp(system->structure, a, point_of(system, x))), vector);
  });
}

cohj_status cohj_reeb(const cohj_system* system, const double* x, double* vector) {
  return guarded([&] {
    require(system && x && vector, "null argument");
    copy_out(to_flat(reeb(system->structure, point_of(system, x))), vector);
  });
}

cohj_status cohj_evolution_field(const cohj_system* system, const double* x, double* vector) {
  return guarded([&] {
    require(system && x && vector, "null argument");
    const PhasePoint p = point_of(system, x);
    copy_out(to_flat(system->kind == StructureKind::Contact ? evolution_field_contact(system->H, p)
                                                            : evolution_field_cosymplectic(system->H, p)),
             vector);
  });
}

cohj_status cohj_coordinate_bracket(const cohj_system* system, size_t i, size_t j, const double* x, double* value) {
  return guarded([&] {
    require(system && x && value, "null argument");
    const std::size_t n = system->H.dim();
    require(i < 2 * n + 1 && j < 2 * n + 1, "coordinate index out of range");
    // The Poisson part of a cosymplectic structure does not depend on H.
    const GeometricStructure& g =
        system->kind == StructureKind::Contact ? system->structure : GeometricStructure::cosymplectic(n);
    *value = bracket(g, coordinate_field(n, i), coordinate_field(n, j), point_of(system, x));
  });
}

cohj_status cohj_integrate(const cohj_system* system, const double* x0, double s0, double s1,
                           const char* integrator_json, cohj_trajectory** out) {
  return guarded([&] {
    require(system && x0 && out, "null argument");
    *out = nullptr;
    const IntegratorConfig cfg = make_integrator(parse_or_null(integrator_json));
    const VectorField field =
        system->kind == StructureKind::Contact ? contact_field(system->H) : cosymplectic_field(system->H);
    Trajectory traj = integrate(field, point_of(system, x0), s0, s1, cfg, &system->H);
    *out = new cohj_trajectory{std::move(traj), system->H, system->kind};
  });
}

void cohj_trajectory_free(cohj_trajectory* trajectory) { delete trajectory; }

size_t cohj_trajectory_size(const cohj_trajectory* trajectory) {
  return trajectory == nullptr ? 0 : trajectory->traj.size();
}

cohj_status cohj_trajectory_sample(const cohj_trajectory* trajectory, size_t k, double* s, double* x) {
  return guarded([&] {
    require(trajectory && s && x, "null argument");
    require(k < trajectory->traj.size(), "sample index out of range");
    *s = trajectory->traj.s[k];
    copy_out(to_flat(trajectory->traj.x[k]), x);
  });
}

cohj_status cohj_trajectory_drift(const cohj_trajectory* trajectory, double* max_abs, double* max_rel) {
  return guarded([&] {
    require(trajectory && max_abs && max_rel, "null argument");
    const DriftMode mode =
        trajectory->kind == StructureKind::Contact ? DriftMode::Dissipation : DriftMode::Conservation;
    const DriftReport r = hamiltonian_drift(trajectory->H, trajectory->traj, mode);
    *max_abs = r.max_abs;
    *max_rel = r.max_rel;
  });
}

cohj_status cohj_trajectory_write_csv(const cohj_trajectory* trajectory, const char* path) {
  return guarded([&] {
    require(trajectory && path, "null argument");
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::IoError, std::string("cannot open '") + path + "'");
    write_trajectory_csv(f, trajectory->traj, trajectory->H);
    if (!f) throw Error(ErrorCode::IoError, std::string("failed writing '") + path + "'");
  });
}

cohj_status cohj_section_create(const cohj_system* system, const char* section_json, cohj_section** out) {
  return guarded([&] {
    require(system && out, "null argument");
    *out = nullptr;
    *out = new cohj_section{make_section(system->id, system->params, parse_or_null(section_json))};
  });
}

void cohj_section_free(cohj_section* section) { delete section; }

cohj_status cohj_section_eval(const cohj_section* section, const double* q, double t, double* p) {
  return guarded([&] {
    require(section && q && p, "null argument");
    copy_out(section->gamma(span_of(q, section->gamma.dim()), t), p);
  });
}

cohj_status cohj_hj_residual(const cohj_system* system, const cohj_section* section, const double* q, double t,
                             cohj_residual_mode mode, double* residual) {
  return guarded([&] {
    require(system && section && q && residual, "null argument");
    const std::size_t n = system->H.dim();
    require(section->gamma.dim() == n, "section dimension does not match the system");
    const Vec qv = span_of(q, n);
    if (mode == COHJ_MODE_AS_PRINTED) {
      if (system->id != "trig" || system->kind != StructureKind::Cosymplectic)
        throw Error(ErrorCode::UnsupportedStructure, "as-printed mode exists only for the cosymplectic trig system");
      const json p = system->params.is_null() ? json::object() : system->params;
      *residual = hj_residual_trig_as_printed(p.value("alpha", 1.0), p.value("w", 1.0), section->gamma, qv[0], t);
      return;
    }
    require(mode == COHJ_MODE_THEOREM, "unknown residual mode");
    copy_out(system->kind == StructureKind::Contact ? hj_residual_contact(system->H, section->gamma, qv, t)
                                                    : hj_residual_cosymplectic(system->H, section->gamma, qv, t),
             residual);
  });
}

cohj_status cohj_relatedness_error(const cohj_system* system, const cohj_section* section, const double* q0,
                                   double t0, double span, const char* integrator_json, double* error) {
  return guarded([&] {
    require(system && section && q0 && error, "null argument");
    const std::size_t n = system->H.dim();
    require(section->gamma.dim() == n, "section dimension does not match the system");
    *error = relatedness_error(system->kind, system->H, section->gamma, span_of(q0, n), t0, span,
                               make_integrator(parse_or_null(integrator_json)));
  });
}

cohj_status cohj_resolve_config(const char* command, const char* config_json, char** resolved_json) {
  return guarded([&] {
    require(command && resolved_json, "null argument");
    *resolved_json = nullptr;
    *resolved_json = duplicate(resolve_config(command, parse_or_null(config_json)).dump(2));
  });
}

cohj_status cohj_run(const char* command, const char* config_json, char** report, int* exit_code) {
  if (report == nullptr || exit_code == nullptr) return fail(COHJ_INVALID_ARGUMENT, "null argument");
  *report = nullptr;
  *exit_code = 2;
  RunResult result;
  const cohj_status status = guarded([&] {
    require(command != nullptr, "null argument");
    result = run_command(command, parse_or_null(config_json));
  });
  try {
    if (status == COHJ_OK) {
      *exit_code = result.exit_code;
      *report = duplicate(result.report.dump(2));
    } else {
      const auto code = static_cast<ErrorCode>(status);
      *exit_code = status == COHJ_INTERNAL_ERROR ? 3 : exit_code_for(code);
      const json err = {{"error", {{"code", cohj_status_name(status)}, {"message", last_error}}}};
      *report = duplicate(err.dump());
    }
  } catch (...) {
    return fail(COHJ_INTERNAL_ERROR, "out of memory");
  }
  return status;
}

}  // extern "C"
