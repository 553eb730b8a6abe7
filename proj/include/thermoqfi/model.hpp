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

// Ancilla-probe Hamiltonians and the dressing transformation that
// diagonalizes them.

#include "thermoqfi/qcore.hpp"

#include <array>
#include <vector>

namespace thermoqfi {

/// Probe frequency, ancilla frequencies and ancilla-probe couplings
/// (units of the probe frequency by convention, hbar = k_B = 1).
struct ThermometerParams {
  double omega_p = 1.0;
  std::vector<double> omega_k;
  std::vector<double> g_k;

  int n_ancilla() const { return static_cast<int>(omega_k.size()); }
  int n_qubits() const { return n_ancilla() + 1; }
  QubitIndex probe_site() const { return {n_ancilla()}; }

  /// Throws ArgumentError when frequencies are non-positive or the
  /// ancilla lists have different lengths.
  void validate() const;
};

/// Diagonalization data of the asymmetric model.
struct DressedFrame {
  std::vector<double> theta;  // mixing angles, radians
  /// Probe frequency entering the master equation and the dressed product
  /// state: sqrt(wp^2 + 4 g^2) for one ancilla, Omega_+ + Omega_- with
  /// Omega_+- = sqrt(wp^2 +- 4 (g1 + g2)^2) for two.
  double omega = 0.0;
  /// Exact probe splitting in each ancilla sector, indexed by the ancilla
  /// computational basis index (bit 1 = ancilla in |->).
  std::vector<double> probe_gaps;
  /// Spectrum of dressed_hamiltonian() in computational-basis order; for one
  /// ancilla this is (w1 + W)/2, (w1 - W)/2, (-w1 + W)/2, (-w1 - W)/2.
  std::vector<double> eigvals;
};

/// How dressed-frame objects map to the local basis. The dressing unitary
/// U = exp[-(i/2) sum_k theta_k sz_k sy_p] satisfies U^dagger H U = diagonal,
/// so a dressed-frame operator X corresponds to U X U^dagger in the local basis.
enum class DressingDirection { kLocalIsUXUdagger };
inline constexpr DressingDirection kDressingDirection = DressingDirection::kLocalIsUXUdagger;

Operator to_local_frame(const Operator& unitary, const Operator& dressed);
Operator to_dressed_frame(const Operator& unitary, const Operator& local);

/// H = (wp/2) sz_p + sum_k (w_k/2) sz_k + sum_k g_k sz_k sx_p.
Operator build_hamiltonian(const ThermometerParams& p);

/// Closed-form mixing angles; only one or two ancillas have them.
std::vector<double> mixing_angles(const ThermometerParams& p);

/// Sector-resolved probe splitting sqrt(wp^2 + 4 (sum_k s_k g_k)^2).
std::vector<double> exact_probe_gaps(const ThermometerParams& p);

/// Literal two-ancilla probe frequency Omega_+ + Omega_-. Throws DomainError
/// when wp^2 < 4 (g1 + g2)^2.
double two_ancilla_probe_frequency(const ThermometerParams& p);

DressedFrame dressed_frame(const ThermometerParams& p);

Operator dressing_unitary(const ThermometerParams& p);

/// U^dagger H U written in closed form: sum_k (w_k/2) sz_k plus the
/// sector-resolved probe term. Diagonal in the computational basis.
Operator dressed_hamiltonian(const ThermometerParams& p);

/// sum_k (w_k/2) sz_k + (frame.omega/2) sz_p, the generator used by the
/// master equation. Coincides with dressed_hamiltonian() for one ancilla.
Operator master_equation_hamiltonian(const ThermometerParams& p);

/// Local-basis eigenvectors of H for one ancilla, in the order of
/// DressedFrame::eigvals. Each is U applied to a computational basis state.
std::array<StateVector, 4> dressed_eigenstates_n1(const ThermometerParams& p);

// Two-qubit comparison models (ancilla on site 0, probe on site 1).

/// (wp/2) sz_p + (w1/2) sz_1 + g (s+_1 s-_p + s-_1 s+_p).
Operator build_dd_hamiltonian(double omega_p, double omega_1, double g);

struct DipoleDipoleFrequencies {
  double omega_plus = 0.0;
  double omega_minus = 0.0;
};
/// w_+- = (w1 + wp)/2 +- sqrt(((w1 - wp)/2)^2 + g^2).
DipoleDipoleFrequencies dd_frequencies(double omega_p, double omega_1, double g);

/// (w1/2) sz_1 + (wp/2) sz_p + g (sx_1 sy_p - sy_1 sx_p).
Operator build_dm_hamiltonian(double omega_p, double omega_1, double g);

/// Derived quantities of the Dzyaloshinskii-Moriya model.
struct DmModelParams {
  double omega_1 = 0.0;
  double omega_p = 0.0;
  double g = 0.0;
  double omega_s = 0.0;   // (w1 + wp)/2
  double omega_d = 0.0;   // (w1 - wp)/2
  double omega_dm = 0.0;  // sqrt(omega_d^2 + 4 g^2)
  double cos_theta = 1.0;
  double sin_theta = 0.0;

  /// sqrt(omega_d + 4 g^2) with omega_d unsquared; NaN when the radicand
  /// is negative. Kept for comparison only.
  double omega_dm_unsquared() const;
};

DmModelParams make_dm_params(double omega_1, double omega_p, double g);

}  // namespace thermoqfi
