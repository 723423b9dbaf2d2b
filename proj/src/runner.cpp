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

#include "cohj/runner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>

#include "cohj/systems.hpp"

namespace cohj {

namespace {

[[noreturn]] void config_error(const std::string& msg) { throw Error(ErrorCode::ConfigError, msg); }

// Objects merge key by key; anything else in `user` replaces the default.
json merged(const json& defaults, const json& user) {
  if (!defaults.is_object() || !user.is_object()) return user;
  json out = defaults;
  for (auto it = user.begin(); it != user.end(); ++it)
    out[it.key()] = out.contains(it.key()) ? merged(out[it.key()], it.value()) : it.value();
  return out;
}

double number(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) config_error(std::string("'") + key + "' must be a number");
  const double v = j.at(key).get<double>();
  if (!std::isfinite(v)) config_error(std::string("'") + key + "' must be finite");
  return v;
}

std::size_t count(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer() || j.at(key).get<long long>() < 0)
    config_error(std::string("'") + key + "' must be a non-negative integer");
  return j.at(key).get<std::size_t>();
}

Vec vector_of(const json& j, const char* key, std::size_t n) {
  if (!j.contains(key) || !j.at(key).is_array()) config_error(std::string("'") + key + "' must be an array");
  Vec v;
  for (const auto& e : j.at(key)) {
    if (!e.is_number()) config_error(std::string("'") + key + "' must contain numbers");
    v.push_back(e.get<double>());
  }
  if (v.size() != n) config_error(std::string("'") + key + "' must have " + std::to_string(n) + " entries");
  if (!all_finite(v)) config_error(std::string("'") + key + "' must be finite");
  return v;
}

std::string text(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string()) config_error(std::string("'") + key + "' must be a string");
  return j.at(key).get<std::string>();
}

std::size_t system_dim(const std::string& system) { return (system == "ws" || system == "anis") ? 2 : 1; }

json default_params(const std::string& system) {
  if (system == "trig") return {{"alpha", 1.0}, {"w", 1.0}};
  if (system == "damped") return {{"m", 1.0}, {"alpha", 0.1}};
  return {{"m", 1.0}, {"omega0", 1.0}, {"k2", 0.1}, {"k3", 0.1}};
}

json default_section(const std::string& system) {
  if (system == "trig") return {{"kind", "trig"}, {"C", 1.0}};
  if (system == "ws") return {{"kind", "ws"}, {"C", 10.0}, {"K", 10.0}};
  if (system == "anis") return {{"kind", "anis"}, {"C", 10.0}, {"K", 10.0}};
  return {{"kind", "damped"}, {"S", 0.0}, {"C", 0.0}};
}

json section_kind_defaults(const std::string& kind) {
  if (kind == "trig" || kind == "cot") return {{"C", 1.0}};
  if (kind == "linear") return {{"a", 1.0}};
  if (kind == "ws" || kind == "anis") return {{"C", 10.0}, {"K", 10.0}};
  if (kind == "damped")
    return {{"S", 0.0}, {"C", 0.0}, {"gamma_lo", 1e-6}, {"gamma_hi", 1e3}, {"tol", 1e-12}, {"arctan_form", "integrated"}};
  config_error("unknown section kind '" + kind + "' (expected trig|cot|linear|ws|anis|damped)");
}

json default_x0(const std::string& system) {
  if (system == "ws" || system == "anis") return {{"q", {1.0, 1.0}}, {"p", {0.0, 0.0}}, {"t", 0.0}};
  if (system == "damped") return {{"q", {0.0}}, {"p", {1.0}}, {"t", 0.0}};
  return {{"q", {1.0}}, {"p", {0.0}}, {"t", 0.0}};
}

json default_grid(const std::string& system) {
  if (system == "ws" || system == "anis")
    return {{"q_min", {0.5, 0.5}}, {"q_max", {2.0, 2.0}}, {"nq", 11}, {"t_min", 0.0}, {"t_max", 1.0}, {"nt", 3}};
  if (system == "damped")
    return {{"q_min", {-1.0}}, {"q_max", {1.0}}, {"nq", 21}, {"t_min", 0.0}, {"t_max", 0.0}, {"nt", 1}};
  return {{"q_min", {-2.0}}, {"q_max", {2.0}}, {"nq", 41}, {"t_min", 0.0}, {"t_max", 1.0}, {"nt", 41}};
}

json default_integrator() {
  return {{"method", "rk45"}, {"step", 0.01}, {"rel_tol", 1e-10}, {"abs_tol", 1e-12}, {"max_steps", 1000000}};
}

std::string default_structure(const std::string& system) { return system == "damped" ? "contact" : "cosymplectic"; }

void check_threshold(const json& cfg) {
  const json& t = cfg.at("threshold");
  if (!t.is_null() && (!t.is_number() || !(t.get<double>() > 0.0)))
    config_error("'threshold' must be a positive number or null");
}

IntegratorConfig integrator_from(const json& j) {
  IntegratorConfig c;
  const std::string method = text(j, "method");
  if (method == "rk4") c.method = IntegratorMethod::RK4;
  else if (method == "rk45") c.method = IntegratorMethod::RK45;
  else config_error("integrator method must be rk4 or rk45");
  c.step = number(j, "step");
  c.rel_tol = number(j, "rel_tol");
  c.abs_tol = number(j, "abs_tol");
  c.max_steps = count(j, "max_steps");
  try {
    validate(c);
  } catch (const Error& e) {
    config_error(e.what());
  }
  return c;
}

StructureKind structure_from(const json& cfg) {
  const std::string s = text(cfg, "structure");
  if (s == "cosymplectic") return StructureKind::Cosymplectic;
  if (s == "contact") return StructureKind::Contact;
  config_error("structure must be cosymplectic or contact");
}

ScalarField system_from(const json& cfg) {
  const std::string system = text(cfg, "system");
  const json& p = cfg.at("params");
  if (system == "trig") return trig_system({number(p, "alpha"), number(p, "w")});
  if (system == "damped") {
    if (!(number(p, "m") > 0.0)) config_error("mass must be positive");
    return damped_system({number(p, "m"), number(p, "alpha")});
  }
  const OscillatorParams op{number(p, "m"), number(p, "omega0"), number(p, "k2"), number(p, "k3")};
  if (!(op.m > 0.0)) config_error("mass must be positive");
  return system == "ws" ? ws_system(op) : anis_system(op);
}

OscillatorParams oscillator_from(const json& cfg) {
  const json& p = cfg.at("params");
  return {number(p, "m"), number(p, "omega0"), number(p, "k2"), number(p, "k3")};
}

Section section_from(const json& cfg) {
  const json& s = cfg.at("section");
  const std::string kind = text(s, "kind");
  const std::size_t n = system_dim(text(cfg, "system"));
  const std::size_t want = (kind == "ws" || kind == "anis") ? 2 : (kind == "linear" ? n : 1);
  if (want != n) config_error("section kind '" + kind + "' does not match the system dimension");
  if (kind == "trig") return trig_section(number(s, "C"));
  if (kind == "cot") return cot_section(number(s, "C"));
  if (kind == "linear") return linear_section(n, number(s, "a"));
  if (kind == "ws" || kind == "anis") {
    if (text(cfg, "system") != kind) config_error("section kind '" + kind + "' requires system '" + kind + "'");
    const OscillatorParams op = oscillator_from(cfg);
    return kind == "ws" ? ws_sections(op, number(s, "C"), number(s, "K")) : anis_sections(op, number(s, "C"), number(s, "K"));
  }
  // damped
  if (text(cfg, "system") != "damped") config_error("section kind 'damped' requires system 'damped'");
  const json& p = cfg.at("params");
  DampedSectionOptions opt;
  opt.gamma_lo = number(s, "gamma_lo");
  opt.gamma_hi = number(s, "gamma_hi");
  opt.tol = number(s, "tol");
  const std::string form = text(s, "arctan_form");
  if (form == "integrated") opt.arctan_form = ArctanForm::Integrated;
  else if (form == "printed") opt.arctan_form = ArctanForm::Printed;
  else config_error("arctan_form must be integrated or printed");
  return DampedSolution({number(p, "m"), number(p, "alpha")}, number(s, "S"), number(s, "C"), opt).section();
}

void write_text(const json& cfg, const std::function<void(std::ostream&)>& writer) {
  const json& out = cfg.at("out");
  if (out.is_null()) return;
  std::ofstream f(out.get<std::string>(), std::ios::binary);
  if (!f) throw Error(ErrorCode::IoError, "cannot open output file '" + out.get<std::string>() + "'");
  writer(f);
  if (!f) throw Error(ErrorCode::IoError, "failed writing '" + out.get<std::string>() + "'");
}

bool within(const json& cfg, double value) {
  const json& t = cfg.at("threshold");
  return t.is_null() || value < t.get<double>();
}

SweepGrid grid_from(const json& g, std::size_t n) {
  SweepGrid grid;
  grid.q_min = vector_of(g, "q_min", n);
  grid.q_max = vector_of(g, "q_max", n);
  grid.nq = count(g, "nq");
  grid.t_min = number(g, "t_min");
  grid.t_max = number(g, "t_max");
  grid.nt = count(g, "nt");
  if (grid.nq < 2) config_error("grid count nq must be >= 2");
  for (std::size_t i = 0; i < n; ++i)
    if (!(grid.q_max[i] > grid.q_min[i])) config_error("grid q range is empty");
  if (grid.t_max < grid.t_min) config_error("grid t range is reversed");
  if (grid.t_max == grid.t_min ? grid.nt != 1 : grid.nt < 2)
    config_error("grid count nt must be >= 2 (or 1 for a single time slice)");
  return grid;
}

// --- commands ---------------------------------------------------------------

RunResult run_integrate(const json& cfg) {
  const ScalarField H = system_from(cfg);
  const StructureKind kind = structure_from(cfg);
  const std::size_t n = H.dim();
  const json& x0j = cfg.at("x0");
  const PhasePoint x0{vector_of(x0j, "q", n), vector_of(x0j, "p", n), number(x0j, "t")};
  const Vec span = vector_of(cfg, "span", 2);
  const Trajectory traj = integrate(kind == StructureKind::Contact ? contact_field(H) : cosymplectic_field(H), x0,
                                    span[0], span[1], integrator_from(cfg.at("integrator")), &H);
  write_text(cfg, [&](std::ostream& os) { write_trajectory_csv(os, traj, H); });

  const DriftMode mode = kind == StructureKind::Contact ? DriftMode::Dissipation : DriftMode::Conservation;
  const DriftReport drift = hamiltonian_drift(H, traj, mode);
  const PhasePoint& last = traj.x.back();
  double ret = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    ret = std::max({ret, std::abs(last.q[i] - x0.q[i]), std::abs(last.p[i] - x0.p[i])});
  const double metric = mode == DriftMode::Dissipation ? drift.max_rel : drift.max_abs;
  RunResult r;
  r.report = {{"command", "integrate"},
              {"system", cfg.at("system")},
              {"structure", cfg.at("structure")},
              {"samples", traj.size()},
              {"final", {{"s", traj.s.back()}, {"t", last.t}, {"q", last.q}, {"p", last.p}}},
              {"drift",
               {{"mode", mode == DriftMode::Dissipation ? "dissipation" : "conservation"},
                {"max_abs", drift.max_abs},
                {"max_rel", drift.max_rel}}},
              {"return_error", ret},
              {"threshold", cfg.at("threshold")},
              {"passed", within(cfg, metric)}};
  r.exit_code = within(cfg, metric) ? 0 : 1;
  return r;
}

RunResult run_hj_residual(const json& cfg) {
  const ScalarField H = system_from(cfg);
  const StructureKind kind = structure_from(cfg);
  const Section g = section_from(cfg);
  const ResidualMode mode = parse_mode(text(cfg, "mode"));
  const SweepGrid grid = grid_from(cfg.at("grid"), H.dim());
  ResidualFn residual;
  if (mode == ResidualMode::AsPrinted) {
    if (text(cfg, "system") != "trig" || kind != StructureKind::Cosymplectic)
      config_error("as-printed mode exists only for the cosymplectic trig system");
    const json& p = cfg.at("params");
    const double alpha = number(p, "alpha"), w = number(p, "w");
    residual = [=](const Vec& q, double t) { return Vec{hj_residual_trig_as_printed(alpha, w, g, q[0], t)}; };
  } else if (kind == StructureKind::Contact) {
    residual = [=](const Vec& q, double t) { return hj_residual_contact(H, g, q, t); };
  } else {
    residual = [=](const Vec& q, double t) { return hj_residual_cosymplectic(H, g, q, t); };
  }
  json report = residual_sweep(text(cfg, "system"), mode, grid, residual);
  const double max_res = report.at("max_residual").get<double>();
  report["threshold"] = cfg.at("threshold");
  report["passed"] = within(cfg, max_res);
  write_text(cfg, [&](std::ostream& os) { os << report.dump(2) << '\n'; });

  RunResult r;
  r.report = {{"command", "hj-residual"}, {"system", report["system"]}, {"mode", report["mode"]},
              {"grid", report["grid"]},   {"max_residual", max_res},     {"skipped", report["skipped"]},
              {"threshold", cfg.at("threshold")}, {"passed", report["passed"]}};
  r.exit_code = within(cfg, max_res) ? 0 : 1;
  return r;
}

RunResult run_characteristics(const json& cfg) {
  const ScalarField H = system_from(cfg);
  if (H.dim() != 1 || structure_from(cfg) != StructureKind::Cosymplectic)
    config_error("characteristics need a one-dimensional cosymplectic system");
  const Section g = section_from(cfg);
  const ResidualMode mode = parse_mode(text(cfg, "mode"));
  const json& lab = cfg.at("labels");
  const double q_min = number(lab, "q_min"), q_max = number(lab, "q_max");
  const std::size_t nl = count(lab, "count");
  if (nl < 2 || !(q_max > q_min)) config_error("labels need count >= 2 and q_max > q_min");
  const double t0 = number(cfg, "t0"), t1 = number(cfg, "t1");
  if (!(t1 > t0)) config_error("empty span");
  const std::size_t outputs = count(cfg, "outputs");
  const std::size_t eval = count(cfg, "eval_points");
  if (outputs < 2 || eval < 2) config_error("outputs and eval_points must be >= 2");
  Vec labels(nl);
  for (std::size_t i = 0; i < nl; ++i) labels[i] = q_min + (q_max - q_min) * static_cast<double>(i) / static_cast<double>(nl - 1);
  const CharacteristicSolution sol = solve_characteristics_cosymplectic(
      H, labels, [&](double q) { return g(Vec{q}, t0)[0]; }, t0, t1, outputs, integrator_from(cfg.at("integrator")),
      mode);
  write_text(cfg, [&](std::ostream& os) { sol.write_csv(os); });

  // Reconstruction against the section used for the initial data.
  double err = 0.0, final_err = 0.0;
  for (std::size_t k = 0; k < outputs; ++k) {
    const auto [lo, hi] = sol.q_range(k);
    for (std::size_t i = 0; i < eval; ++i) {
      const double q = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(eval - 1);
      const double e = std::abs(sol.gamma(q, sol.times()[k]) - g(Vec{q}, sol.times()[k])[0]);
      err = std::max(err, e);
      if (k + 1 == outputs) final_err = std::max(final_err, e);
    }
  }
  RunResult r;
  r.report = {{"command", "characteristics"},
              {"system", cfg.at("system")},
              {"mode", mode_name(mode)},
              {"curves", nl},
              {"outputs", outputs},
              {"t1", t1},
              {"final_q_range", {sol.q_range(outputs - 1).first, sol.q_range(outputs - 1).second}},
              {"reconstruction_error", err},
              {"final_reconstruction_error", final_err},
              {"threshold", cfg.at("threshold")},
              {"passed", within(cfg, err)}};
  r.exit_code = within(cfg, err) ? 0 : 1;
  return r;
}

RunResult run_related(const json& cfg) {
  const ScalarField H = system_from(cfg);
  const Section g = section_from(cfg);
  const StructureKind kind = structure_from(cfg);
  const Vec q0 = vector_of(cfg, "q0", H.dim());
  const double t0 = number(cfg, "t0"), span = number(cfg, "span");
  if (!(span > 0.0)) config_error("empty span");
  const double err = relatedness_error(kind, H, g, q0, t0, span, integrator_from(cfg.at("integrator")));
  RunResult r;
  r.report = {{"command", "related"},   {"system", cfg.at("system")},     {"structure", cfg.at("structure")},
              {"q0", q0},               {"t0", t0},                        {"span", span},
              {"relatedness_error", err}, {"threshold", cfg.at("threshold")}, {"passed", within(cfg, err)}};
  r.exit_code = within(cfg, err) ? 0 : 1;
  return r;
}

RunResult run_involution(const json& cfg) {
  const std::string system = text(cfg, "system");
  if (system != "ws" && system != "anis") config_error("involution needs a two-parameter family: ws or anis");
  const OscillatorParams op = oscillator_from(cfg);
  if (!(op.m > 0.0)) config_error("mass must be positive");
  const CompleteSolution cs = system == "ws" ? ws_complete_solution(op) : anis_complete_solution(op);
  const std::size_t samples = count(cfg, "samples");
  if (samples < 1) config_error("samples must be >= 1");
  const json& rg = cfg.at("ranges");
  const Vec rc = vector_of(rg, "C", 2), rk = vector_of(rg, "K", 2), rx = vector_of(rg, "x", 2), ry = vector_of(rg, "y", 2);
  for (const Vec* r : {&rc, &rk, &rx, &ry})
    if (!((*r)[1] > (*r)[0])) config_error("sampling ranges must be increasing");

  std::mt19937_64 rng(cfg.at("seed").get<std::uint64_t>());
  auto uniform = [&rng](const Vec& r) { return std::uniform_real_distribution<double>(r[0], r[1])(rng); };
  std::vector<PhasePoint> points;
  std::size_t attempts = 0;
  while (points.size() < samples) {
    if (++attempts > 1000 * samples) throw Error(ErrorCode::DomainError, "could not sample valid points in the given ranges");
    const double C = uniform(rc), K = uniform(rk);
    const Vec q{uniform(rx), uniform(ry)};
    const double t = 0.0;
    try {
      const Section s = cs.family({C, K});
      // Keep away from the square-root boundary where derivatives blow up.
      s.d_q(q, t);
      points.push_back(PhasePoint{q, s(q, t), t});
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DomainError) throw;
    }
  }
  const double defect = involution_defect(cs, points);
  const double consistency = complete_solution_consistency(cs, points);
  RunResult r;
  r.report = {{"command", "involution"},
              {"system", system},
              {"samples", samples},
              {"seed", cfg.at("seed")},
              {"defect", defect},
              {"consistency", consistency},
              {"threshold", cfg.at("threshold")},
              {"passed", within(cfg, defect)}};
  if (cfg.at("negative_control").get<bool>()) {
    CompleteSolution control = cs;
    control.inverse = [inv = cs.inverse](const PhasePoint& x) { return Vec{inv(x)[0], x.q[0] * x.p[1]}; };
    r.report["negative_control_defect"] = involution_defect(control, points);
  }
  r.exit_code = within(cfg, defect) ? 0 : 1;
  return r;
}

}  // namespace

ScalarField make_system(const std::string& id, const json& params) {
  if (!is_known_system(id)) config_error("unknown system '" + id + "' (expected trig|ws|anis|damped)");
  if (!params.is_null() && !params.is_object()) config_error("'params' must be an object");
  const json cfg = {{"system", id}, {"params", merged(default_params(id), params.is_null() ? json::object() : params)}};
  return system_from(cfg);
}

Section make_section(const std::string& id, const json& params, const json& section) {
  if (!is_known_system(id)) config_error("unknown system '" + id + "' (expected trig|ws|anis|damped)");
  if (!params.is_null() && !params.is_object()) config_error("'params' must be an object");
  if (!section.is_null() && !section.is_object()) config_error("'section' must be an object");
  const json user = section.is_null() ? json::object() : section;
  const std::string kind = user.contains("kind") ? text(user, "kind") : default_section(id)["kind"].get<std::string>();
  json sec = merged(section_kind_defaults(kind), kind == default_section(id)["kind"] ? merged(default_section(id), user) : user);
  sec["kind"] = kind;
  const json cfg = {{"system", id},
                    {"params", merged(default_params(id), params.is_null() ? json::object() : params)},
                    {"section", sec}};
  return section_from(cfg);
}

IntegratorConfig make_integrator(const json& integrator) {
  if (!integrator.is_null() && !integrator.is_object()) config_error("'integrator' must be an object");
  return integrator_from(merged(default_integrator(), integrator.is_null() ? json::object() : integrator));
}

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::UnsupportedStructure:
    case ErrorCode::ConfigError:
    case ErrorCode::IoError:
      return 2;
    default:
      return 3;
  }
}

bool is_known_command(const std::string& command) noexcept {
  return command == "integrate" || command == "hj-residual" || command == "characteristics" || command == "related" ||
         command == "involution";
}

json resolve_config(const std::string& command, const json& config) {
  if (!is_known_command(command)) config_error("unknown command '" + command + "'");
  if (!config.is_null() && !config.is_object()) config_error("config must be a JSON object");
  const json user = config.is_null() ? json::object() : config;
  if (user.contains("command") && user.at("command") != command)
    config_error("config was written for command '" + user.at("command").get<std::string>() + "'");

  std::string system = command == "involution" ? "ws" : "trig";
  if (user.contains("system")) system = text(user, "system");
  if (!is_known_system(system)) config_error("unknown system '" + system + "' (expected trig|ws|anis|damped)");

  json d = {{"command", command},
            {"system", system},
            {"params", default_params(system)},
            {"threshold", nullptr}};
  if (command != "involution") {
    d["structure"] = default_structure(system);
    d["integrator"] = default_integrator();
  }
  if (command == "integrate") {
    d["x0"] = default_x0(system);
    d["span"] = {0.0, system == "damped" ? 5.0 : 10.0};
    d["out"] = nullptr;
  } else if (command == "hj-residual") {
    d["section"] = default_section(system);
    d["mode"] = "theorem";
    d["grid"] = default_grid(system);
    d["threshold"] = 1e-9;
    d["out"] = nullptr;
  } else if (command == "characteristics") {
    d["section"] = default_section(system);
    d["mode"] = "theorem";
    d["labels"] = {{"q_min", -1.0}, {"q_max", 1.0}, {"count", 41}};
    d["t0"] = 0.0;
    d["t1"] = 0.5;
    d["outputs"] = 11;
    d["eval_points"] = 101;
    d["threshold"] = 1e-6;
    d["out"] = nullptr;
  } else if (command == "related") {
    d["section"] = default_section(system);
    // The anisotropic x-factor turns back near x = 1.56; start where the flow stays inside.
    d["q0"] = system == "anis" ? json{0.3, 1.0} : default_x0(system)["q"];
    d["t0"] = 0.0;
    d["span"] = 0.5;
    d["threshold"] = 1e-6;
  } else {  // involution
    d["samples"] = 100;
    d["seed"] = 1;
    d["ranges"] = {{"C", {8.0, 12.0}}, {"K", {8.0, 12.0}}, {"x", {0.5, 2.0}}, {"y", {0.5, 2.0}}};
    d["negative_control"] = false;
    d["threshold"] = 1e-8;
  }

  json cfg = merged(d, user);
  // A section kind switch brings that kind's defaults instead of the system's.
  if (cfg.contains("section")) {
    const std::string kind = text(cfg.at("section"), "kind");
    const json base = kind == default_section(system)["kind"] ? default_section(system) : json::object();
    json sec = merged(merged(section_kind_defaults(kind), base), user.value("section", json::object()));
    sec["kind"] = kind;
    cfg["section"] = sec;
  }

  // Validate everything that does not need a run.
  check_threshold(cfg);
  if (cfg.contains("integrator")) integrator_from(cfg.at("integrator"));
  if (cfg.contains("structure")) structure_from(cfg);
  if (cfg.contains("out") && !cfg.at("out").is_null() && !cfg.at("out").is_string())
    config_error("'out' must be a path or null");
  if (command == "integrate") {
    const Vec span = vector_of(cfg, "span", 2);
    if (!(span[1] > span[0])) config_error("empty span");
  }
  if (command == "hj-residual") {
    parse_mode(text(cfg, "mode"));
    grid_from(cfg.at("grid"), system_dim(system));
  }
  if (command == "characteristics") {
    parse_mode(text(cfg, "mode"));
    if (!(number(cfg, "t1") > number(cfg, "t0"))) config_error("empty span");
  }
  if (command == "related" && !(number(cfg, "span") > 0.0)) config_error("empty span");
  if (command == "involution") {
    if (!cfg.at("seed").is_number_integer() || cfg.at("seed").get<long long>() < 0) config_error("'seed' must be a non-negative integer");
    if (!cfg.at("negative_control").is_boolean()) config_error("'negative_control' must be true or false");
  }
  return cfg;
}

RunResult run_command(const std::string& command, const json& config) {
  const json cfg = resolve_config(command, config);
  if (command == "integrate") return run_integrate(cfg);
  if (command == "hj-residual") return run_hj_residual(cfg);
  if (command == "characteristics") return run_characteristics(cfg);
  if (command == "related") return run_related(cfg);
  return run_involution(cfg);
}

json residual_sweep(const std::string& system, ResidualMode mode, const SweepGrid& grid, const ResidualFn& residual) {
  const std::size_t n = grid.q_min.size();
  json points = json::array();
  double max_res = 0.0;
  std::size_t skipped = 0;
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= grid.nq;
  for (std::size_t it = 0; it < grid.nt; ++it) {
    const double t = grid.nt == 1 ? grid.t_min
                                  : grid.t_min + (grid.t_max - grid.t_min) * static_cast<double>(it) /
                                                     static_cast<double>(grid.nt - 1);
    for (std::size_t flat = 0; flat < total; ++flat) {
      Vec q(n);
      std::size_t rest = flat;
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t k = rest % grid.nq;
        rest /= grid.nq;
        q[i] = grid.q_min[i] + (grid.q_max[i] - grid.q_min[i]) * static_cast<double>(k) / static_cast<double>(grid.nq - 1);
      }
      try {
        const Vec r = residual(q, t);
        for (double c : r) max_res = std::max(max_res, std::abs(c));
        points.push_back({{"q", q}, {"t", t}, {"residual", r}});
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DomainError && e.code() != ErrorCode::SingularityError) throw;
        ++skipped;
      }
    }
  }
  return {{"system", system},
          {"mode", mode_name(mode)},
          {"grid",
           {{"q_min", grid.q_min}, {"q_max", grid.q_max}, {"nq", grid.nq}, {"t_min", grid.t_min}, {"t_max", grid.t_max}, {"nt", grid.nt}}},
          {"max_residual", max_res},
          {"skipped", skipped},
          {"points", std::move(points)}};
}

}  // namespace cohj
