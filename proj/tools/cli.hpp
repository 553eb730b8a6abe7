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

#pragma once

// Command-line front end: sweep, scaling and validate commands.

#include "thermoqfi/metrology.hpp"
#include "thermoqfi/model.hpp"

#include <json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace thermoqfi::cli {

using nlohmann::json;

enum ExitCode : int {
  kExitOk = 0,
  kExitValidationFailed = 1,
  kExitBadConfig = 2,
  kExitNumericFailure = 3,
};

/// Raised for anything wrong with the user's request; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class ModelKind { kAsymmetricLocal, kGlobalGibbs, kDipoleDipole, kDm };

std::string to_string(ModelKind kind);
ModelKind model_from_string(const std::string& name);

enum class Approximation { kNone, kWeakCoupling };

struct SweepConfig {
  std::string name = "sweep";
  ModelKind model = ModelKind::kAsymmetricLocal;
  ThermometerParams params{1.0, {0.04}, {0.01}};
  double t_min = 1e-3;
  double t_max = 10.0;
  int n_points = 400;
  GridKind grid = GridKind::kLog;
  std::vector<std::string> outputs{"qfi", "coherence", "rel_error", "peaks"};
  bool validate_numeric = false;
  Approximation approximation = Approximation::kNone;
  std::string figure;  // figure reference echoed by presets
  std::string notes;

  bool wants(const std::string& output) const;
  /// Throws ConfigError when the request cannot be served.
  void check() const;
};

SweepConfig sweep_from_json(const json& j);
json to_json(const SweepConfig& cfg);

/// A config file holds one sweep object or {"sweeps": [...]}.
std::vector<SweepConfig> sweeps_from_json(const json& j);

std::vector<std::string> preset_names();
/// Sweeps of a named preset; throws ConfigError for unknown names.
std::vector<SweepConfig> preset_sweeps(const std::string& name);

struct SweepResult {
  QfiCurve curve;
  json validation;  // null unless validate_numeric
  bool validation_passed = true;
};

ProbeFamily probe_family(const SweepConfig& cfg);
SweepResult run_sweep(const SweepConfig& cfg, int threads);

/// CSV with header T,qfi,coherence,rel_error; 17 significant digits, LF.
std::string curve_csv(const QfiCurve& curve);

struct ScalingConfig {
  double omega_p = 1.0;
  double omega = 0.03;
  double g = 0.01;
  int n_min = 2;
  int n_max = 10;
  double t_min = 1e-3;
  double t_max = 3.0;
  int n_points = 400;
  int dense_check_n = 8;
  std::string figure;

  void check() const;
};

struct ScalingRow {
  int n = 0;
  double t_peak = 0.0;
  double qfi_peak = 0.0;
  double coherence = 0.0;
};

struct ScalingResult {
  std::vector<ScalingRow> rows;
  bool fitted = false;
  ScalingFit qfi_fit;
  ScalingFit coherence_fit;
  std::string warning;
  json dense_check;  // null when dense_check_n is outside [n_min, n_max]
};

ScalingResult run_scaling(const ScalingConfig& cfg, int threads);
std::string scaling_csv(const ScalingResult& result);
json to_json(const ScalingConfig& cfg);
json to_json(const ScalingResult& result);

/// Writes `text` to `path`, creating parent directories.
void write_text(const std::filesystem::path& path, const std::string& text);

/// Entry point shared by the binary and the tests.
int run(int argc, const char* const* argv);

}  // namespace thermoqfi::cli
