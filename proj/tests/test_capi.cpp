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

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>

#include "cohj/cohj.h"

namespace {

struct SystemHandle {
  cohj_system* p = nullptr;
  ~SystemHandle() { cohj_system_free(p); }
};

std::string take(char* s) {
  std::string out = s ? s : "";
  cohj_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("status names and version") {
  CHECK(std::strlen(cohj_version()) > 0);
  CHECK(std::string(cohj_status_name(COHJ_OK)) == "Ok");
  CHECK(std::string(cohj_status_name(COHJ_CONFIG_ERROR)) == "ConfigError");
  CHECK(std::string(cohj_status_name(COHJ_INTERNAL_ERROR)) == "InternalError");
}

TEST_CASE("system handles and evaluation") {
  SystemHandle s;
  REQUIRE(cohj_system_create("trig", "{\"alpha\": 1.0}", COHJ_COSYMPLECTIC, &s.p) == COHJ_OK);
  CHECK(cohj_system_dim(s.p) == 1);
  const double x[3] = {1.0, 1.0, 1.5707963267948966};
  double h = 0.0;
  REQUIRE(cohj_hamiltonian(s.p, x, &h) == COHJ_OK);
  CHECK(h == doctest::Approx(1.5));

  double eta[3], reeb[3], field[3], flat[3], back[3];
  REQUIRE(cohj_eta(s.p, x, eta) == COHJ_OK);
  CHECK(eta[2] == 1.0);
  REQUIRE(cohj_reeb(s.p, x, reeb) == COHJ_OK);
  REQUIRE(cohj_evolution_field(s.p, x, field) == COHJ_OK);
  for (int i = 0; i < 3; ++i) CHECK(reeb[i] == doctest::Approx(field[i]));
  CHECK(reeb[2] == doctest::Approx(1.0));
  const double v[3] = {0.3, -0.7, 0.2};
  REQUIRE(cohj_flat(s.p, x, v, flat) == COHJ_OK);
  REQUIRE(cohj_sharp(s.p, x, flat, back) == COHJ_OK);
  for (int i = 0; i < 3; ++i) CHECK(back[i] == doctest::Approx(v[i]).epsilon(1e-12));
  double b = 0.0;
  REQUIRE(cohj_coordinate_bracket(s.p, 0, 1, x, &b) == COHJ_OK);
  CHECK(std::abs(b) == doctest::Approx(1.0));
  double b2 = 0.0;
  REQUIRE(cohj_coordinate_bracket(s.p, 1, 0, x, &b2) == COHJ_OK);
  CHECK(b2 == -b);
}

TEST_CASE("contact systems") {
  SystemHandle s;
  REQUIRE(cohj_system_create("damped", nullptr, COHJ_CONTACT, &s.p) == COHJ_OK);
  const double x[3] = {0.0, 1.0, 0.0};
  double v[3];
  REQUIRE(cohj_evolution_field(s.p, x, v) == COHJ_OK);
  CHECK(v[0] == doctest::Approx(1.0));
  CHECK(v[1] == doctest::Approx(-0.1));
  CHECK(v[2] == doctest::Approx(0.5));
  double eta[3];
  REQUIRE(cohj_eta(s.p, x, eta) == COHJ_OK);
  CHECK(eta[0] == -1.0);
  CHECK(eta[2] == 1.0);
}

TEST_CASE("integration through handles") {
  SystemHandle s;
  REQUIRE(cohj_system_create("trig", "{\"alpha\": 0.0}", COHJ_COSYMPLECTIC, &s.p) == COHJ_OK);
  const double x0[3] = {1.0, 0.0, 0.0};
  cohj_trajectory* tr = nullptr;
  REQUIRE(cohj_integrate(s.p, x0, 0.0, 2 * std::numbers::pi, nullptr, &tr) == COHJ_OK);
  const size_t n = cohj_trajectory_size(tr);
  REQUIRE(n > 2);
  double sl = 0.0, xl[3];
  REQUIRE(cohj_trajectory_sample(tr, n - 1, &sl, xl) == COHJ_OK);
  CHECK(sl == doctest::Approx(2 * std::numbers::pi));
  CHECK(xl[0] == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(cohj_trajectory_sample(tr, n, &sl, xl) == COHJ_INVALID_ARGUMENT);
  double max_abs = 1.0, max_rel = 1.0;
  REQUIRE(cohj_trajectory_drift(tr, &max_abs, &max_rel) == COHJ_OK);
  CHECK(max_abs < 1e-8);
  const auto path = std::filesystem::temp_directory_path() / "cohj_capi_traj.csv";
  REQUIRE(cohj_trajectory_write_csv(tr, path.string().c_str()) == COHJ_OK);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header.rfind("s,t", 0) == 0);
  std::filesystem::remove(path);
  CHECK(cohj_trajectory_write_csv(tr, "/nonexistent-dir/t.csv") == COHJ_IO_ERROR);
  cohj_trajectory_free(tr);

  cohj_trajectory* rk4 = nullptr;
  REQUIRE(cohj_integrate(s.p, x0, 0.0, 1.0, "{\"method\": \"rk4\", \"step\": 0.25}", &rk4) == COHJ_OK);
  CHECK(cohj_trajectory_size(rk4) == 5);
  cohj_trajectory_free(rk4);
  CHECK(cohj_integrate(s.p, x0, 1.0, 1.0, nullptr, &tr) != COHJ_OK);
  CHECK(cohj_integrate(s.p, x0, 0.0, 1.0, "{\"method\": 3}", &tr) == COHJ_CONFIG_ERROR);
}

TEST_CASE("sections, residuals and relatedness") {
  SystemHandle s;
  REQUIRE(cohj_system_create("trig", nullptr, COHJ_COSYMPLECTIC, &s.p) == COHJ_OK);
  cohj_section* g = nullptr;
  REQUIRE(cohj_section_create(s.p, nullptr, &g) == COHJ_OK);
  const double q[1] = {1.0};
  double p = 0.0;
  REQUIRE(cohj_section_eval(g, q, 0.0, &p) == COHJ_OK);
  CHECK(p == doctest::Approx(1.31303529).epsilon(1e-8));
  double r = 1.0;
  REQUIRE(cohj_hj_residual(s.p, g, q, 0.3, COHJ_MODE_AS_PRINTED, &r) == COHJ_OK);
  CHECK(std::abs(r) < 1e-9);
  REQUIRE(cohj_hj_residual(s.p, g, q, 0.3, COHJ_MODE_THEOREM, &r) == COHJ_OK);
  CHECK(std::abs(r) > 0.1);
  CHECK(cohj_section_eval(g, q, -1.0, &p) == COHJ_SINGULARITY_ERROR);
  cohj_section_free(g);

  SystemHandle ws;
  REQUIRE(cohj_system_create("ws", nullptr, COHJ_COSYMPLECTIC, &ws.p) == COHJ_OK);
  cohj_section* gw = nullptr;
  REQUIRE(cohj_section_create(ws.p, "{\"kind\": \"ws\", \"C\": 10, \"K\": 10}", &gw) == COHJ_OK);
  const double q2[2] = {1.0, 1.0};
  double r2[2] = {1.0, 1.0};
  REQUIRE(cohj_hj_residual(ws.p, gw, q2, 0.0, COHJ_MODE_THEOREM, r2) == COHJ_OK);
  CHECK(std::abs(r2[0]) < 1e-10);
  CHECK(std::abs(r2[1]) < 1e-10);
  CHECK(cohj_hj_residual(ws.p, gw, q2, 0.0, COHJ_MODE_AS_PRINTED, r2) == COHJ_UNSUPPORTED_STRUCTURE);
  double err = 1.0;
  REQUIRE(cohj_relatedness_error(ws.p, gw, q2, 0.0, 0.5, nullptr, &err) == COHJ_OK);
  CHECK(err < 1e-6);
  cohj_section_free(gw);
  CHECK(cohj_section_create(ws.p, "{\"kind\": \"parabola\"}", &gw) == COHJ_CONFIG_ERROR);
  CHECK(cohj_section_create(ws.p, "not json", &gw) == COHJ_CONFIG_ERROR);
}

TEST_CASE("config runs") {
  char* resolved = nullptr;
  REQUIRE(cohj_resolve_config("related", "{\"system\": \"ws\"}", &resolved) == COHJ_OK);
  const std::string cfg = take(resolved);
  CHECK(cfg.find("\"threshold\"") != std::string::npos);

  char* report = nullptr;
  int code = -1;
  REQUIRE(cohj_run("related", cfg.c_str(), &report, &code) == COHJ_OK);
  CHECK(code == 0);
  CHECK(take(report).find("\"passed\": true") != std::string::npos);

  REQUIRE(cohj_run("integrate", "{\"span\": [1, 1]}", &report, &code) == COHJ_CONFIG_ERROR);
  CHECK(code == 2);
  const std::string err = take(report);
  CHECK(err.find("\"code\":\"ConfigError\"") != std::string::npos);
  CHECK(err.find("empty span") != std::string::npos);
  CHECK(std::string(cohj_last_error()).find("empty span") != std::string::npos);

  REQUIRE(cohj_run("integrate", "{\"integrator\": {\"method\": \"rk45\", \"max_steps\": 2}}", &report, &code) ==
          COHJ_STEP_LIMIT_EXCEEDED);
  CHECK(code == 3);
  cohj_string_free(report);
}

TEST_CASE("null arguments") {
  cohj_system* s = nullptr;
  CHECK(cohj_system_create(nullptr, nullptr, COHJ_COSYMPLECTIC, &s) == COHJ_INVALID_ARGUMENT);
  CHECK(cohj_system_create("trig", nullptr, COHJ_COSYMPLECTIC, nullptr) == COHJ_INVALID_ARGUMENT);
  CHECK(cohj_system_create("kepler", nullptr, COHJ_COSYMPLECTIC, &s) == COHJ_CONFIG_ERROR);
  CHECK(cohj_system_create("trig", nullptr, static_cast<cohj_structure>(7), &s) != COHJ_OK);
  double h = 0.0;
  CHECK(cohj_hamiltonian(nullptr, nullptr, &h) == COHJ_INVALID_ARGUMENT);
  CHECK(cohj_system_dim(nullptr) == 0);
  CHECK(cohj_trajectory_size(nullptr) == 0);
  cohj_system_free(nullptr);
  cohj_section_free(nullptr);
  cohj_trajectory_free(nullptr);
  cohj_string_free(nullptr);
}
