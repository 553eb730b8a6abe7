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

// Closed-form steady states of the thermometer models and their reduced
// probe states.

#include "thermoqfi/model.hpp"
#include "thermoqfi/qcore.hpp"

namespace thermoqfi {

/// Real qubit state (1/2) [[1 - chi, c], [c, 1 + chi]] in the local probe
/// basis (excited state first). Its Bloch vector is (c, 0, -chi).
struct ProbeState2x2 {
  double chi = 0.0;
  double c = 0.0;

  Operator matrix() const;
  DensityMatrix density() const { return DensityMatrix(matrix()); }
  double bloch_norm() const;
  /// |rho_01| = |c| / 2.
  double coherence() const;

  /// Reads chi and c off a 2x2 density matrix; throws ArgumentError when the
  /// off-diagonal element has an imaginary part above the equality tolerance.
  static ProbeState2x2 from_density(const DensityMatrix& rho);
};

/// Thermal qubit of frequency omega: chi = tanh(omega / 2T), c = 0.
ProbeState2x2 thermal_tls(double omega, double temperature);

/// Gibbs state of (omega/2) sz written with tanh so it survives T -> 0.
Operator qubit_gibbs_matrix(double omega, double temperature);

/// Tensor product of single-qubit Gibbs states at w_k (ancillas) and the
/// frame's probe frequency, in the dressed basis.
DensityMatrix dressed_product_state(const ThermometerParams& p, const DressedFrame& frame,
                                    double temperature);

/// chi = cos(theta) tanh(W/2T), c = sin(theta) tanh(W/2T) tanh(w1/2T).
ProbeState2x2 probe_state_n1(const ThermometerParams& p, double temperature);

/// chi = alpha beta with alpha = tanh(W~/2T); c is twice the closed-form
/// off-diagonal element, evaluated with every exponential scaled by its
/// largest term.
ProbeState2x2 probe_state_n2(const ThermometerParams& p, double temperature);

/// Dispatches to probe_state_n1 / probe_state_n2 (thermal TLS for N = 0).
ProbeState2x2 asymmetric_probe_state(const ThermometerParams& p, double temperature);

/// Tr_ancillas[U rho~ U^dagger] built from the dressed product state.
DensityMatrix probe_state_by_transformation(const ThermometerParams& p, double temperature);

/// Probe marginal of exp(-H/T)/Z with the full register diagonalized.
DensityMatrix global_gibbs_probe_dense(const ThermometerParams& p, double temperature);

/// Probe marginal of the global Gibbs state for n identical ancillas (w, g).
/// H splits into sectors of ancilla magnetization 2m - n, each a 2x2 probe
/// problem (wp/2) sz + g (2m - n) sx with degeneracy C(n, m).
ProbeState2x2 global_gibbs_probe_identical(double omega_p, double omega, double g, int n,
                                           double temperature);

/// True when every ancilla shares the same frequency and coupling.
bool has_identical_ancillas(const ThermometerParams& p);

/// Fast path for identical ancillas, dense otherwise.
ProbeState2x2 global_gibbs_probe(const ThermometerParams& p, double temperature);

/// Prefactor of the population term in the one-ancilla global closed form.
enum class GlobalPopulationForm {
  kNormalized,  // chi' = (wp / W') tanh(W'/2T)
  kLiteral,     // chi' = W' tanh(W'/2T)
};

/// One-ancilla global closed form; c' (the matrix element) is returned as c = 2 c'.
ProbeState2x2 global_gibbs_probe_n1_closed_form(const ThermometerParams& p, double temperature,
                                                GlobalPopulationForm form);

/// Dipole-dipole coupled probe: the maximally mixed state.
ProbeState2x2 dd_probe_state(double omega_p, double omega_1, double g, double temperature);

/// Probe marginal of the dipole-dipole dressed product state mapped back to
/// the local basis (equivalently Tr_1 exp(-H_dd/T)/Z). Used to quantify how
/// far the populations sit from 1/2.
DensityMatrix dd_probe_state_by_transformation(double omega_p, double omega_1, double g,
                                               double temperature);

/// Diagonal DM probe state; c = 0 identically.
ProbeState2x2 dm_probe_state(const DmModelParams& dm, double temperature);

}  // namespace thermoqfi
