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

// Quantum Fisher information of temperature, error bounds, peak search and
// power-law fits.

#include "thermoqfi/model.hpp"
#include "thermoqfi/qcore.hpp"
#include "thermoqfi/steady.hpp"

#include <functional>
#include <span>
#include <vector>

namespace thermoqfi {

using StateFamily = std::function<DensityMatrix(double)>;
using ProbeFamily = std::function<ProbeState2x2(double)>;

/// Below this determinant the qubit formula hands over to the SLD sum.
inline constexpr double kNearPureDeterminant = 1e-12;
/// Eigenvalue-pair cutoff of the SLD sum.
inline constexpr double kSldCutoff = 1e-14;

/// F = Tr[(d rho)^2] + Tr[(rho d rho)^2] / Det(rho) for a qubit.
double qfi_qubit(const DensityMatrix& rho, const Operator& drho);

/// F = sum_{jk} 2 |<j|d rho|k>|^2 / (l_j + l_k) over pairs with l_j + l_k > cutoff.
double qfi_sld(const DensityMatrix& rho, const Operator& drho, double cutoff = kSldCutoff);

/// h = max(1e-7, 1e-4 T), capped at T/2.
double derivative_step(double temperature);

/// Central difference of a state family, optionally refined by one
/// Richardson step (h and h/2).
Operator d_rho_dT(const StateFamily& family, double temperature, bool richardson = true);

/// w0^2 sech^2(w0/2T) / (4 T^4).
double qfi_thermal_tls(double omega0, double temperature);

/// argmax_T of qfi_thermal_tls(1, T).
double gamma_constant();

/// Root of 2 g = tanh(1/g).
double gamma_literal();

/// Weak-coupling two-term approximation for one ancilla.
double qfi_approx_n1(const ThermometerParams& p, double temperature);

struct GlobalApproxTerms {
  double low = 0.0;
  double high = 0.0;
  double total() const { return low + high; }
};

/// Weak-coupling approximation for the one-ancilla global Gibbs probe,
/// with the low-temperature term as 8 g^2 w1^2 sinh^6(x) / (T^4 sinh^4(x)).
GlobalApproxTerms qfi_approx_global_terms(double omega_p, double omega_1, double g,
                                          double temperature);
double qfi_approx_global(double omega_p, double omega_1, double g, double temperature);

struct QfiPoint {
  double qfi = 0.0;
  double coherence = 0.0;  // |rho_01|
  double rel_error = 0.0;  // 1/(T sqrt(F)); DBL_MAX when F == 0
  /// Rounding floor of qfi: (3 eps / h)^2 / lambda_min for the Richardson
  /// difference with step h. Near-pure states push it far above F.
  double noise = 0.0;
};

/// 1/(T sqrt(F)), or DBL_MAX for F == 0 so the value stays finite.
double relative_error_bound(double temperature, double qfi);

QfiPoint qfi_at(const StateFamily& family, double temperature);
QfiPoint qfi_at(const ProbeFamily& family, double temperature);

StateFamily as_state_family(ProbeFamily family);

struct Peak {
  double temperature = 0.0;
  double qfi = 0.0;
};

struct QfiCurve {
  std::vector<double> temps;
  std::vector<double> qfi;
  std::vector<double> coherence;
  std::vector<double> rel_error;
  std::vector<double> qfi_noise;  // optional; empty when unknown
  std::vector<Peak> peaks;

  /// Throws ShapeError / ArgumentError if the invariants do not hold.
  void check() const;
};

enum class GridKind { kLog, kLinear };

std::vector<double> temperature_grid(double t_min, double t_max, int n_points,
                                     GridKind kind = GridKind::kLog);

/// Worker count: explicit value if positive, else THERMOQFI_THREADS, else
/// the hardware concurrency.
int resolve_thread_count(int requested);

/// Evaluates qfi_at on every grid point; points are split across threads.
QfiCurve qfi_curve(const StateFamily& family, std::span<const double> temps, int threads = 0);
QfiCurve qfi_curve(const ProbeFamily& family, std::span<const double> temps, int threads = 0);

struct PeakOptions {
  /// A maximum must exceed the lowest point on either side (down to the
  /// neighbouring maxima) by this relative margin.
  double prominence = 0.01;
  /// Maxima below floor * max(F) are ignored.
  double floor = 0.0;
  /// Maxima must exceed noise_factor times the curve's qfi_noise, which
  /// removes difference ripple on the near-pure low-T tail.
  double noise_factor = 10.0;
  /// Relative tolerance in T of the refinement.
  double refine_tolerance = 1e-6;
};

/// Interior local maxima of the sampled curve. When `qfi_fn` is given each
/// peak is refined on log T between its grid neighbours; otherwise a
/// parabola through the three samples is used.
std::vector<Peak> find_peaks(const QfiCurve& curve,
                             const std::function<double(double)>& qfi_fn = {},
                             const PeakOptions& options = {});

struct ScalingFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  double r_squared = 0.0;
};

/// Least squares of log y against log x. Needs at least four points.
ScalingFit scaling_fit(std::span<const double> xs, std::span<const double> ys);

}  // namespace thermoqfi
