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

// cohj command-line front end. Flat flags override fields of the JSON config.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cohj/cohj.h"

using json = nlohmann::json;

namespace {

struct Flags {
  std::string config_path;
  std::optional<std::string> system, out, mode, section, span, q0, p0;
  std::optional<double> tol, alpha, w, m, omega0, k2, k3, C, K, S, t0;
  std::optional<unsigned long long> seed, samples;
  bool negative_control = false;
  bool dump_config = false;
};

void add_flags(CLI::App& cmd, Flags& f) {
  cmd.add_option("--config", f.config_path, "JSON run config");
  cmd.add_option("--system", f.system, "trig | ws | anis | damped");
  cmd.add_option("--out", f.out, "output path for CSV or JSON data");
  cmd.add_option("--mode", f.mode, "theorem | as-printed");
  cmd.add_option("--tol,--threshold", f.tol, "pass threshold");
  cmd.add_option("--alpha", f.alpha);
  cmd.add_option("--w", f.w);
  cmd.add_option("--m", f.m);
  cmd.add_option("--omega0", f.omega0);
  cmd.add_option("--k2", f.k2);
  cmd.add_option("--k3", f.k3);
  cmd.add_option("--section", f.section, "section kind: trig | cot | linear | ws | anis | damped");
  cmd.add_option("--C", f.C, "section parameter C");
  cmd.add_option("--K", f.K, "section parameter K");
  cmd.add_option("--S", f.S, "damped section S");
  cmd.add_option("--q0", f.q0, "initial q, comma separated");
  cmd.add_option("--p0", f.p0, "initial p, comma separated");
  cmd.add_option("--t0", f.t0, "initial time");
  cmd.add_option("--span", f.span, "a:b");
  cmd.add_flag("--dump-config", f.dump_config, "print the resolved config and exit");
}

std::vector<double> parse_list(const std::string& s, const char* flag) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw std::invalid_argument(std::string(flag) + " expects numbers");
    v.push_back(x);
  }
  if (v.empty()) throw std::invalid_argument(std::string(flag) + " expects numbers");
  return v;
}

std::pair<double, double> parse_span(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("--span expects a:b");
  const auto a = parse_list(s.substr(0, colon), "--span");
  const auto b = parse_list(s.substr(colon + 1), "--span");
  if (a.size() != 1 || b.size() != 1) throw std::invalid_argument("--span expects a:b");
  return {a[0], b[0]};
}

json build_config(const std::string& command, const Flags& f) {
  json cfg = json::object();
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) throw std::invalid_argument("cannot read config '" + f.config_path + "'");
    cfg = json::parse(in);
    if (!cfg.is_object()) throw std::invalid_argument("config must be a JSON object");
  }
  const bool has_section = command == "hj-residual" || command == "characteristics" || command == "related";
  if (f.system) cfg["system"] = *f.system;
  if (f.out) cfg["out"] = *f.out;
  if (f.mode) cfg["mode"] = *f.mode;
  if (f.tol) cfg["threshold"] = *f.tol;
  if (f.seed) cfg["seed"] = *f.seed;
  if (f.samples) cfg["samples"] = *f.samples;
  if (f.negative_control) cfg["negative_control"] = true;
  const std::pair<const char*, const std::optional<double>*> params[] = {
      {"alpha", &f.alpha}, {"w", &f.w}, {"m", &f.m}, {"omega0", &f.omega0}, {"k2", &f.k2}, {"k3", &f.k3}};
  for (const auto& [key, value] : params)
    if (*value) cfg["params"][key] = **value;
  if (f.section || f.C || f.K || f.S) {
    if (!has_section) throw std::invalid_argument("command '" + command + "' takes no section");
    if (f.section) cfg["section"]["kind"] = *f.section;
    if (f.C) cfg["section"]["C"] = *f.C;
    if (f.K) cfg["section"]["K"] = *f.K;
    if (f.S) cfg["section"]["S"] = *f.S;
  }
  if (command == "integrate") {
    if (f.q0) cfg["x0"]["q"] = parse_list(*f.q0, "--q0");
    if (f.p0) cfg["x0"]["p"] = parse_list(*f.p0, "--p0");
    if (f.t0) cfg["x0"]["t"] = *f.t0;
    if (f.span) {
      const auto [a, b] = parse_span(*f.span);
      cfg["span"] = {a, b};
    }
  } else if (command == "related") {
    if (f.q0) cfg["q0"] = parse_list(*f.q0, "--q0");
    if (f.t0) cfg["t0"] = *f.t0;
    if (f.span) {
      const auto [a, b] = parse_span(*f.span);
      cfg["t0"] = a;
      cfg["span"] = b - a;
    }
  } else if (command == "characteristics") {
    if (f.t0) cfg["t0"] = *f.t0;
    if (f.span) {
      const auto [a, b] = parse_span(*f.span);
      cfg["t0"] = a;
      cfg["t1"] = b;
    }
  }
  if ((f.q0 || f.p0) && command != "integrate" && command != "related")
    throw std::invalid_argument("command '" + command + "' takes no initial point");
  return cfg;
}

void print_error(const char* code, const std::string& message) {
  std::cerr << json{{"error", {{"code", code}, {"message", message}}}}.dump() << '\n';
}

int run(const std::string& command, const Flags& f) {
  json cfg;
  try {
    cfg = build_config(command, f);
  } catch (const std::exception& e) {
    print_error("config_error", e.what());
    return 2;
  }
  const std::string text = cfg.dump();
  char* out = nullptr;
  if (f.dump_config) {
    const cohj_status st = cohj_resolve_config(command.c_str(), text.c_str(), &out);
    if (st != COHJ_OK) {
      print_error(cohj_status_name(st), cohj_last_error());
      return st == COHJ_CONFIG_ERROR || st == COHJ_INVALID_ARGUMENT ? 2 : 3;
    }
    std::cout << out << '\n';
    cohj_string_free(out);
    return 0;
  }
  int exit_code = 2;
  const cohj_status st = cohj_run(command.c_str(), text.c_str(), &out, &exit_code);
  if (out != nullptr) {
    (st == COHJ_OK ? std::cout : std::cerr) << out << '\n';
    cohj_string_free(out);
  } else if (st != COHJ_OK) {
    print_error(cohj_status_name(st), cohj_last_error());
  }
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hamilton-Jacobi theory on cosymplectic and contact manifolds"};
  app.require_subcommand(1);
  const char* commands[] = {"integrate", "hj-residual", "characteristics", "related", "involution"};
  const char* help[] = {"integrate the Hamiltonian flow", "Hamilton-Jacobi residual over a grid",
                        "solve by characteristics and compare with a section", "check gamma-relatedness",
                        "check the involution of a complete solution"};
  Flags flags;
  for (int i = 0; i < 5; ++i) {
    CLI::App* cmd = app.add_subcommand(commands[i], help[i]);
    add_flags(*cmd, flags);
    if (std::string(commands[i]) == "involution") {
      cmd->add_option("--seed", flags.seed, "seed for random sample points");
      cmd->add_option("--samples", flags.samples, "number of sample points");
      cmd->add_flag("--negative-control", flags.negative_control, "also report a non-involutive pair");
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    print_error("config_error", e.what());
    return 2;
  }
  return run(app.get_subcommands().front()->get_name(), flags);
}
