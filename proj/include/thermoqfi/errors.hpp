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

#include <stdexcept>
#include <string>

namespace thermoqfi {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class IndexError : public Error {
 public:
  explicit IndexError(const std::string& msg) : Error("index error: " + msg) {}
};

class ShapeError : public Error {
 public:
  explicit ShapeError(const std::string& msg) : Error("shape error: " + msg) {}
};

class ArgumentError : public Error {
 public:
  explicit ArgumentError(const std::string& msg) : Error("argument error: " + msg) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& msg) : Error("domain error: " + msg) {}
};

/// Requested model has no closed form (e.g. more than two ancillas).
class UnsupportedModelError : public Error {
 public:
  explicit UnsupportedModelError(const std::string& msg)
      : Error("unsupported model: " + msg) {}
};

/// Raised by the time integrator when the state leaves the positive cone.
class StiffnessError : public Error {
 public:
  explicit StiffnessError(const std::string& msg) : Error("stiffness: " + msg) {}
};

class NonUniqueSteadyStateError : public Error {
 public:
  explicit NonUniqueSteadyStateError(const std::string& msg)
      : Error("non-unique steady state: " + msg) {}
};

class NumericalFailure : public Error {
 public:
  explicit NumericalFailure(const std::string& msg)
      : Error("numerical failure: " + msg) {}
};

class DerivativeFailure : public NumericalFailure {
 public:
  explicit DerivativeFailure(const std::string& msg)
      : NumericalFailure("derivative: " + msg) {}
};

}  // namespace thermoqfi
