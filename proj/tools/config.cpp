// Copyright 2026 The ThermoQFI Authors
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

#include "cli.hpp"

#include "thermoqfi/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

namespace thermoqfi::cli {

namespace {

const std::set<std::string> kSweepKeys{
    "name",    "model",    "omega_p", "omega_k",          "g_k",           "t_min",  "t_max",
    "n_points", "grid",    "outputs", "validate_numeric", "approximation", "figure", "notes"};

const std::set<std::string> kOutputs{"qfi", "coherence", "rel_error", "peaks"};

template <typename T>
T get_as(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
  }
}

std::string label(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

SweepConfig base(const std::string& name, const std::string& figure) {
  SweepConfig c;
  c.name = name;
  c.figure = figure;
  c.t_min = 1e-3;
  c.t_max = 3.0;
  c.n_points = 400;
  return c;
}

}  // namespace

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::kAsymmetricLocal:
      return "asymmetric-local";
    case ModelKind::kGlobalGibbs:
      return "global-gibbs";
    case ModelKind::kDipoleDipole:
      return "dipole-dipole";
    case ModelKind::kDm:
      return "dm";
  }
  return "?";
}

ModelKind model_from_string(const std::string& name) {
  for (ModelKind k : {ModelKind::kAsymmetricLocal, ModelKind::kGlobalGibbs, ModelKind::kDipoleDipole,
                      ModelKind::kDm}) {
    if (to_string(k) == name) return k;
  }
  throw ConfigError("unknown model '" + name + "'");
}

bool SweepConfig::wants(const std::string& output) const {
  return std::find(outputs.begin(), outputs.end(), output) != outputs.end();
}

void SweepConfig::check() const {
  if (name.empty() || name.find('/') != std::string::npos) throw ConfigError("sweep name must be a plain file stem");
  try {
    params.validate();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  if (!(t_min > 0.0) || !std::isfinite(t_min) || !std::isfinite(t_max)) throw ConfigError("t_min must be positive");
  if (!(t_min < t_max)) throw ConfigError("t_min must be below t_max");
  if (n_points < 3) throw ConfigError("n_points must be at least 3");
  for (const auto& o : outputs) {
    if (!kOutputs.count(o)) throw ConfigError("unknown output '" + o + "'");
  }
  const int n = params.n_ancilla();
  switch (model) {
    case ModelKind::kAsymmetricLocal:
      if (n > 2) throw ConfigError("asymmetric-local has closed forms for at most two ancillas");
      if (n == 2) {
        const double s = params.g_k[0] + params.g_k[1];
        if (params.omega_p * params.omega_p < 4.0 * s * s) {
          throw ConfigError("two-ancilla probe frequency undefined: wp^2 < 4 (g1 + g2)^2");
        }
      }
      if (approximation == Approximation::kWeakCoupling && n != 1) {
        throw ConfigError("weak-coupling approximation needs one ancilla");
      }
      break;
    case ModelKind::kGlobalGibbs: {
      const bool identical = has_identical_ancillas(params);
      if (!identical && params.n_qubits() > 11) throw ConfigError("dense global state limited to 11 qubits");
      if (approximation == Approximation::kWeakCoupling && n != 1) {
        throw ConfigError("weak-coupling approximation needs one ancilla");
      }
      break;
    }
    case ModelKind::kDipoleDipole:
    case ModelKind::kDm:
      if (n != 1) throw ConfigError(to_string(model) + " model needs exactly one ancilla");
      if (approximation != Approximation::kNone) throw ConfigError("no approximation for " + to_string(model));
      break;
  }
}

SweepConfig sweep_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("sweep config must be a JSON object");
  for (const auto& item : j.items()) {
    if (!kSweepKeys.count(item.key())) throw ConfigError("unknown config key '" + item.key() + "'");
  }
  SweepConfig c;
  if (j.contains("name")) c.name = get_as<std::string>(j, "name");
  if (j.contains("model")) c.model = model_from_string(get_as<std::string>(j, "model"));
  if (j.contains("omega_p")) c.params.omega_p = get_as<double>(j, "omega_p");
  if (j.contains("omega_k")) c.params.omega_k = get_as<std::vector<double>>(j, "omega_k");
  if (j.contains("g_k")) c.params.g_k = get_as<std::vector<double>>(j, "g_k");
  if (j.contains("t_min")) c.t_min = get_as<double>(j, "t_min");
  if (j.contains("t_max")) c.t_max = get_as<double>(j, "t_max");
  if (j.contains("n_points")) c.n_points = get_as<int>(j, "n_points");
  if (j.contains("grid")) {
    const auto g = get_as<std::string>(j, "grid");
    if (g == "log") c.grid = GridKind::kLog;
    else if (g == "linear") c.grid = GridKind::kLinear;
    else throw ConfigError("grid must be 'log' or 'linear'");
  }
  if (j.contains("outputs")) c.outputs = get_as<std::vector<std::string>>(j, "outputs");
  if (j.contains("validate_numeric")) c.validate_numeric = get_as<bool>(j, "validate_numeric");
  if (j.contains("approximation")) {
    const auto a = get_as<std::string>(j, "approximation");
    if (a == "none") c.approximation = Approximation::kNone;
    else if (a == "weak-coupling") c.approximation = Approximation::kWeakCoupling;
    else throw ConfigError("approximation must be 'none' or 'weak-coupling'");
  }
  if (j.contains("figure")) c.figure = get_as<std::string>(j, "figure");
  if (j.contains("notes")) c.notes = get_as<std::string>(j, "notes");
  return c;
}

json to_json(const SweepConfig& c) {
  json j{{"name", c.name},
         {"model", to_string(c.model)},
         {"omega_p", c.params.omega_p},
         {"omega_k", c.params.omega_k},
         {"g_k", c.params.g_k},
         {"t_min", c.t_min},
         {"t_max", c.t_max},
         {"n_points", c.n_points},
         {"grid", c.grid == GridKind::kLog ? "log" : "linear"},
         {"outputs", c.outputs},
         {"validate_numeric", c.validate_numeric},
         {"approximation", c.approximation == Approximation::kNone ? "none" : "weak-coupling"}};
  if (!c.figure.empty()) j["figure"] = c.figure;
  if (!c.notes.empty()) j["notes"] = c.notes;
  return j;
}

std::vector<SweepConfig> sweeps_from_json(const json& j) {
  std::vector<SweepConfig> out;
  if (j.is_object() && j.contains("sweeps")) {
    if (j.size() != 1 || !j.at("sweeps").is_array()) throw ConfigError("'sweeps' must be the only key and an array");
    for (const auto& s : j.at("sweeps")) out.push_back(sweep_from_json(s));
  } else {
    out.push_back(sweep_from_json(j));
  }
  if (out.empty()) throw ConfigError("config holds no sweeps");
  return out;
}

std::vector<std::string> preset_names() { return {"fig2", "fig3", "fig4", "fig5", "fig6", "relerr"}; }

std::vector<SweepConfig> preset_sweeps(const std::string& name) {
  std::vector<SweepConfig> out;
  if (name == "fig2") {
    for (double g : {0.01, 0.02, 0.03, 0.04}) {
      SweepConfig c = base("fig2_g" + label(g), "Fig. 2: wp = 1, w1 = 0.04, g1 in {0.01, 0.02, 0.03, 0.04}");
      c.params = {1.0, {0.04}, {g}};
      out.push_back(c);
    }
  } else if (name == "fig3") {
    SweepConfig exact = base("fig3_exact", "Fig. 3: wp = 1, w1 = 0.04, g = 0.01");
    exact.params = {1.0, {0.04}, {0.01}};
    SweepConfig approx = exact;
    approx.name = "fig3_approx";
    approx.approximation = Approximation::kWeakCoupling;
    out = {exact, approx};
  } else if (name == "fig4") {
    for (double wp : {0.26, 0.3, 0.4}) {
      SweepConfig c = base("fig4_wp" + label(wp),
                           "Fig. 4: w1 = 0.09, w2 = 0.17, g1 = 0.003, g2 = 0.05, wp in {0.26, 0.3, 0.4}");
      c.params = {wp, {0.09, 0.17}, {0.003, 0.05}};
      out.push_back(c);
    }
  } else if (name == "fig5") {
    SweepConfig a = base("fig5a_exact", "Fig. 5(a): wp = 1, w1 = 0.02, g = 0.02");
    a.model = ModelKind::kGlobalGibbs;
    a.params = {1.0, {0.02}, {0.02}};
    SweepConfig a2 = a;
    a2.name = "fig5a_approx";
    a2.approximation = Approximation::kWeakCoupling;
    out = {a, a2};
    for (int n = 1; n <= 10; ++n) {
      SweepConfig b = base("fig5b_N" + std::to_string(n), "Fig. 5(b): wp = 1, w = 0.03, g = 0.01, N = 1..10");
      b.model = ModelKind::kGlobalGibbs;
      b.params = {1.0, std::vector<double>(static_cast<std::size_t>(n), 0.03),
                  std::vector<double>(static_cast<std::size_t>(n), 0.01)};
      out.push_back(b);
    }
  } else if (name == "fig6") {
    const std::string note =
        "caption lists g2 = 0.15, 0.2, 0.3 and 0.3 with w1 = 0.85 next to w1 = 0.09; the fourth curve "
        "uses w1 = 0.85, the others w1 = 0.09. N = 4 counts the probe: three ancilla frequencies are given";
    const std::vector<std::pair<double, double>> curves{{0.15, 0.09}, {0.2, 0.09}, {0.3, 0.09}, {0.3, 0.85}};
    int i = 0;
    for (const auto& [g2, w1] : curves) {
      SweepConfig c = base("fig6_curve" + std::to_string(++i),
                           "Fig. 6: N = 4, wp = 1, w = (w1, 0.2, 0.5), g1 = 0.003, g3 = 0.008");
      c.model = ModelKind::kGlobalGibbs;
      c.params = {1.0, {w1, 0.2, 0.5}, {0.003, g2, 0.008}};
      c.notes = note;
      out.push_back(c);
    }
  } else if (name == "relerr") {
    for (double g : {0.2, 0.1, 0.01}) {
      SweepConfig c = base("relerr_g" + label(g), "Relative error bound: wp = 1, w1 = 0.04, g in {0.2, 0.1, 0.01}");
      c.params = {1.0, {0.04}, {g}};
      out.push_back(c);
    }
    SweepConfig tls = base("relerr_tls", "Relative error bound: thermal two-level reference");
    tls.params = {1.0, {}, {}};
    out.push_back(tls);
  } else {
    throw ConfigError("unknown preset '" + name + "'");
  }
  return out;
}

void ScalingConfig::check() const {
  if (!(omega_p > 0.0) || !(omega > 0.0) || !std::isfinite(g)) throw ConfigError("scaling frequencies must be positive");
  if (n_max < 2) throw ConfigError("N_max must be at least 2");
  if (n_min < 1 || n_min > n_max) throw ConfigError("need 1 <= N_min <= N_max");
  if (!(t_min > 0.0) || !(t_min < t_max)) throw ConfigError("bad temperature range");
  if (n_points < 3) throw ConfigError("n_points must be at least 3");
}

json to_json(const ScalingConfig& c) {
  json j{{"omega_p", c.omega_p}, {"omega", c.omega},       {"g", c.g},
         {"n_min", c.n_min},     {"n_max", c.n_max},       {"t_min", c.t_min},
         {"t_max", c.t_max},     {"n_points", c.n_points}, {"dense_check_n", c.dense_check_n}};
  if (!c.figure.empty()) j["figure"] = c.figure;
  return j;
}

}  // namespace thermoqfi::cli
