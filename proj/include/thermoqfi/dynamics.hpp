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

// Global Lindblad master equation in the dressed frame.

#include "thermoqfi/model.hpp"
#include "thermoqfi/qcore.hpp"

#include <span>
#include <vector>

namespace thermoqfi {

enum class SpectrumKind { kFlat, kOhmic };

/// Bath spectral response G(w), evaluated at |w|.
struct SpectralResponse {
  SpectrumKind kind = SpectrumKind::kFlat;
  double base_rate = 1e-3;
  double ohmic_cutoff = 1.0;

  static SpectralResponse flat(double base_rate = 1e-3);
  static SpectralResponse ohmic(double base_rate, double cutoff);

  double operator()(double omega) const;
};

enum class ChannelDirection { kEmission, kAbsorption };

/// Local ancilla flip, ancilla-probe exchange (w_k - W) or pair process (w_k + W).
enum class ChannelFamily { kLocal, kExchange, kPair };

/// One dissipator D[op]. Emission and absorption members of a pair share
/// freq, prefactor and boltzmann; the absorption rate carries the Boltzmann
/// weight exp(-freq/T).
struct JumpChannel {
  Operator op;
  double freq = 0.0;
  double prefactor = 0.0;
  double boltzmann = 0.0;
  ChannelDirection direction = ChannelDirection::kEmission;
  ChannelFamily family = ChannelFamily::kLocal;
  int ancilla = 0;

  double rate() const {
    return direction == ChannelDirection::kEmission ? prefactor : prefactor * boltzmann;
  }
};

struct ChannelOptions {
  /// Debug hook: use exp(+freq/T) instead of exp(-freq/T). Only meant to
  /// demonstrate that the validation suites detect a broken weight.
  bool invert_boltzmann_exponent = false;
};

/// Six dissipators per ancilla. Pairs whose transition frequency is negative
/// are re-expressed with the conjugate operator as the emission member at
/// |freq|, which keeps the detailed-balance ratio and bounds the rates.
std::vector<JumpChannel> build_channels(const ThermometerParams& p, const DressedFrame& frame,
                                        double temperature, const SpectralResponse& response,
                                        const ChannelOptions& options = {});

/// -i[H, rho] + sum_c rate_c D[c](rho).
Operator lindblad_rhs(const Operator& rho, const Operator& hamiltonian,
                      std::span<const JumpChannel> channels);
Operator lindblad_rhs(const DensityMatrix& rho, const Operator& hamiltonian,
                      std::span<const JumpChannel> channels);

/// Generator acting on column-stacked density matrices.
struct Liouvillian {
  Operator matrix;
  Eigen::Index d = 0;
};

Liouvillian liouvillian(const Operator& hamiltonian, std::span<const JumpChannel> channels);

/// Trace-one null vector of the Liouvillian, reshaped and Hermitized.
/// Throws NonUniqueSteadyStateError when a second eigenvalue also lies
/// within 1e-12 of zero.
DensityMatrix steady_state(const Liouvillian& generator);

/// 0.01 divided by the fastest channel rate (or by the Hamiltonian's
/// spectral span if that is larger).
double recommended_time_step(const Operator& hamiltonian, std::span<const JumpChannel> channels);

/// Fixed-step RK4 with re-Hermitization after each step.
DensityMatrix evolve(const DensityMatrix& rho0, const Operator& hamiltonian,
                     std::span<const JumpChannel> channels, double t_final, double dt);

/// Convenience: master-equation Hamiltonian, channels and null-space steady
/// state for the asymmetric model (dressed frame).
DensityMatrix numerical_dressed_steady_state(const ThermometerParams& p, double temperature,
                                             const SpectralResponse& response = {},
                                             const ChannelOptions& options = {});

}  // namespace thermoqfi
