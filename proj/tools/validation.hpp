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

// Oracle-equivalence suites and the report of closed forms that disagree
// with their numerical references.

#include <json.hpp>

#include <string>
#include <vector>

namespace thermoqfi::cli {

struct SuiteResult {
  std::string name;
  std::string description;
  double measured = 0.0;   // worst deviation observed
  double tolerance = 0.0;
  bool passed = false;
};

/// A closed form compared with its oracle. Informational: it never fails
/// the run, but it is always reported.
struct Discrepancy {
  std::string name;
  std::string description;
  double closed_form = 0.0;
  double oracle = 0.0;
  double deviation = 0.0;  // relative unless stated in the description
};

struct ValidationOptions {
  /// Flip the sign of every Boltzmann exponent in the master equation.
  bool inject_boltzmann_sign_error = false;
};

struct ValidationReport {
  std::vector<SuiteResult> suites;
  std::vector<Discrepancy> discrepancies;
  bool passed() const;
  nlohmann::json to_json() const;
  std::string to_text() const;
};

ValidationReport run_validation(const ValidationOptions& options = {});

}  // namespace thermoqfi::cli
