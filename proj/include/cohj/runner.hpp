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

#pragma once

#include <json.hpp>
#include <string>

#include "cohj/characteristics.hpp"
#include "cohj/hamilton_jacobi.hpp"

// Config-driven runs behind the command-line front end. A run config is a
// JSON object; resolve_config fills every default so that the resolved config
// alone reproduces the run.

namespace cohj {

using json = nlohmann::json;

/// Commands: integrate, hj-residual, characteristics, related, involution.
bool is_known_command(const std::string& command) noexcept;

/// Validates `config` for `command` and returns it with all defaults filled.
/// Throws ConfigError on unknown systems, bad grids, degenerate spans, etc.
json resolve_config(const std::string& command, const json& config);

/// Built-in system by id with `params` merged over its defaults.
ScalarField make_system(const std::string& id, const json& params);

/// Section for system `id`. `section` may omit fields; the kind defaults to
/// the system's default section.
Section make_section(const std::string& id, const json& params, const json& section);

/// Integrator settings from `{method, step, rel_tol, abs_tol, max_steps}`;
/// missing fields take the defaults (RK45, rel 1e-10, abs 1e-12).
IntegratorConfig make_integrator(const json& integrator);

/// Exit code for a failed run: 2 for configuration errors, 3 for numeric failures.
int exit_code_for(ErrorCode code) noexcept;

struct RunResult {
  int exit_code = 0;  // 0 thresholds met, 1 thresholds violated
  json report;
};

/// Resolves and runs. Data artifacts (trajectory or curve CSV, full residual
/// report) are written to config["out"] when it is set.
RunResult run_command(const std::string& command, const json& config);

struct SweepGrid {
  Vec q_min;
  Vec q_max;
  std::size_t nq = 2;
  double t_min = 0.0;
  double t_max = 1.0;
  std::size_t nt = 2;
};

using ResidualFn = std::function<Vec(const Vec& q, double t)>;

/// Residual report `{system, mode, grid, max_residual, skipped, points:[{q, t, residual}]}`.
/// Points where the residual throws a DomainError or SingularityError are
/// counted in `skipped`.
json residual_sweep(const std::string& system, ResidualMode mode, const SweepGrid& grid, const ResidualFn& residual);

}  // namespace cohj
