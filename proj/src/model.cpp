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

#include "thermoqfi/model.hpp"

#include "thermoqfi/errors.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace thermoqfi {

namespace {

// +1 for |+> (bit 0), -1 for |-> (bit 1) of ancilla k inside sector index a.
double ancilla_sign(int sector, int k, int n_ancilla) {
  return ((sector >> (n_ancilla - 1 - k)) & 1) != 0 ? -1.0 : 1.0;
}

void require_closed_form(const ThermometerParams& p) {
  p.validate();
  if (p.n_ancilla() < 1 || p.n_ancilla() > 2) {
    std::ostringstream os;
    os << "closed-form dressing exists only for 1 or 2 ancillas, got " << p.n_ancilla();
    throw UnsupportedModelError(os.str());
  }
}

}  // namespace

void ThermometerParams::validate() const {
  if (!(omega_p > 0.0) || !std::isfinite(omega_p)) {
    throw ArgumentError("probe frequency must be positive");
  }
  if (omega_k.size() != g_k.size()) {
    throw ArgumentError("ancilla frequency and coupling lists differ in length");
  }
  for (double w : omega_k) {
    if (!(w > 0.0) || !std::isfinite(w)) throw ArgumentError("ancilla frequencies must be positive");
  }
  for (double g : g_k) {
    if (!std::isfinite(g)) throw ArgumentError("couplings must be finite");
  }
}

Operator to_local_frame(const Operator& unitary, const Operator& dressed) {
  return unitary * dressed * unitary.adjoint();
}

Operator to_dressed_frame(const Operator& unitary, const Operator& local) {
  return unitary.adjoint() * local * unitary;
}

Operator build_hamiltonian(const ThermometerParams& p) {
  p.validate();
  const int n = p.n_qubits();
  const QubitIndex probe = p.probe_site();
  Operator h = 0.5 * p.omega_p * pauli(PauliAxis::kZ, probe, n);
  const Operator sx_p = pauli(PauliAxis::kX, probe, n);
  for (int k = 0; k < p.n_ancilla(); ++k) {
    const Operator sz_k = pauli(PauliAxis::kZ, {k}, n);
    h += 0.5 * p.omega_k[static_cast<std::size_t>(k)] * sz_k;
    h += p.g_k[static_cast<std::size_t>(k)] * sz_k * sx_p;
  }
  return h;
}

std::vector<double> mixing_angles(const ThermometerParams& p) {
  require_closed_form(p);
  if (p.n_ancilla() == 1) {
    return {std::atan(2.0 * p.g_k[0] / p.omega_p)};
  }
  const double sum = std::atan(2.0 * (p.g_k[0] + p.g_k[1]) / p.omega_p);
  const double diff = std::atan(2.0 * (p.g_k[0] - p.g_k[1]) / p.omega_p);
  return {0.5 * (sum + diff), 0.5 * (sum - diff)};
}

std::vector<double> exact_probe_gaps(const ThermometerParams& p) {
  p.validate();
  const int n = p.n_ancilla();
  std::vector<double> gaps(std::size_t{1} << n);
  for (int a = 0; a < (1 << n); ++a) {
    double field = 0.0;
    for (int k = 0; k < n; ++k) field += ancilla_sign(a, k, n) * p.g_k[static_cast<std::size_t>(k)];
    gaps[static_cast<std::size_t>(a)] = std::sqrt(p.omega_p * p.omega_p + 4.0 * field * field);
  }
  return gaps;
}

double two_ancilla_probe_frequency(const ThermometerParams& p) {
  if (p.n_ancilla() != 2) throw UnsupportedModelError("two-ancilla frequency needs N = 2");
  const double s = p.g_k[0] + p.g_k[1];
  const double radicand_minus = p.omega_p * p.omega_p - 4.0 * s * s;
  if (radicand_minus < 0.0) {
    throw DomainError("wp^2 - 4 (g1 + g2)^2 is negative; two-ancilla frequency undefined");
  }
  return std::sqrt(p.omega_p * p.omega_p + 4.0 * s * s) + std::sqrt(radicand_minus);
}

DressedFrame dressed_frame(const ThermometerParams& p) {
  require_closed_form(p);
  DressedFrame frame;
  frame.theta = mixing_angles(p);
  frame.probe_gaps = exact_probe_gaps(p);
  frame.omega = p.n_ancilla() == 1 ? frame.probe_gaps[0] : two_ancilla_probe_frequency(p);
  const Operator hd = dressed_hamiltonian(p);
  frame.eigvals.resize(static_cast<std::size_t>(hd.rows()));
  for (Eigen::Index i = 0; i < hd.rows(); ++i) {
    frame.eigvals[static_cast<std::size_t>(i)] = hd(i, i).real();
  }
  return frame;
}

Operator dressing_unitary(const ThermometerParams& p) {
  const std::vector<double> theta = mixing_angles(p);
  const int n = p.n_qubits();
  const Operator sy_p = pauli(PauliAxis::kY, p.probe_site(), n);
  Operator generator = Operator::Zero(1 << n, 1 << n);
  for (int k = 0; k < p.n_ancilla(); ++k) {
    generator += 0.5 * theta[static_cast<std::size_t>(k)] * pauli(PauliAxis::kZ, {k}, n) * sy_p;
  }
  return expm_minus_i(generator);
}

Operator dressed_hamiltonian(const ThermometerParams& p) {
  require_closed_form(p);
  const int n = p.n_ancilla();
  const std::vector<double> gaps = exact_probe_gaps(p);
  Operator h = Operator::Zero(1 << (n + 1), 1 << (n + 1));
  for (int a = 0; a < (1 << n); ++a) {
    double ancilla_energy = 0.0;
    for (int k = 0; k < n; ++k) {
      ancilla_energy += 0.5 * ancilla_sign(a, k, n) * p.omega_k[static_cast<std::size_t>(k)];
    }
    h(2 * a, 2 * a) = ancilla_energy + 0.5 * gaps[static_cast<std::size_t>(a)];
    h(2 * a + 1, 2 * a + 1) = ancilla_energy - 0.5 * gaps[static_cast<std::size_t>(a)];
  }
  return h;
}

Operator master_equation_hamiltonian(const ThermometerParams& p) {
  require_closed_form(p);
  const double omega = p.n_ancilla() == 1 ? exact_probe_gaps(p)[0] : two_ancilla_probe_frequency(p);
  const int n = p.n_qubits();
  Operator h = 0.5 * omega * pauli(PauliAxis::kZ, p.probe_site(), n);
  for (int k = 0; k < p.n_ancilla(); ++k) {
    h += 0.5 * p.omega_k[static_cast<std::size_t>(k)] * pauli(PauliAxis::kZ, {k}, n);
  }
  return h;
}

std::array<StateVector, 4> dressed_eigenstates_n1(const ThermometerParams& p) {
  p.validate();
  if (p.n_ancilla() != 1) {
    throw UnsupportedModelError("dressed eigenstates are tabulated for one ancilla only");
  }
  const Operator u = dressing_unitary(p);
  return {u.col(0), u.col(1), u.col(2), u.col(3)};
}

Operator build_dd_hamiltonian(double omega_p, double omega_1, double g) {
  const Operator sp1 = pauli(PauliAxis::kPlus, {0}, 2);
  const Operator sm1 = pauli(PauliAxis::kMinus, {0}, 2);
  const Operator spp = pauli(PauliAxis::kPlus, {1}, 2);
  const Operator smp = pauli(PauliAxis::kMinus, {1}, 2);
  return 0.5 * omega_p * pauli(PauliAxis::kZ, {1}, 2) + 0.5 * omega_1 * pauli(PauliAxis::kZ, {0}, 2) +
         g * (sp1 * smp + sm1 * spp);
}

DipoleDipoleFrequencies dd_frequencies(double omega_p, double omega_1, double g) {
  const double half_sum = 0.5 * (omega_1 + omega_p);
  const double half_diff = 0.5 * (omega_1 - omega_p);
  const double root = std::sqrt(half_diff * half_diff + g * g);
  return {half_sum + root, half_sum - root};
}

Operator build_dm_hamiltonian(double omega_p, double omega_1, double g) {
  const Operator sx1 = pauli(PauliAxis::kX, {0}, 2);
  const Operator sy1 = pauli(PauliAxis::kY, {0}, 2);
  const Operator sxp = pauli(PauliAxis::kX, {1}, 2);
  const Operator syp = pauli(PauliAxis::kY, {1}, 2);
  return 0.5 * omega_1 * pauli(PauliAxis::kZ, {0}, 2) + 0.5 * omega_p * pauli(PauliAxis::kZ, {1}, 2) +
         g * (sx1 * syp - sy1 * sxp);
}

double DmModelParams::omega_dm_unsquared() const {
  const double radicand = omega_d + 4.0 * g * g;
  return radicand < 0.0 ? std::numeric_limits<double>::quiet_NaN() : std::sqrt(radicand);
}

DmModelParams make_dm_params(double omega_1, double omega_p, double g) {
  if (!(omega_1 > 0.0) || !(omega_p > 0.0)) {
    throw ArgumentError("DM model frequencies must be positive");
  }
  DmModelParams dm;
  dm.omega_1 = omega_1;
  dm.omega_p = omega_p;
  dm.g = g;
  dm.omega_s = 0.5 * (omega_1 + omega_p);
  dm.omega_d = 0.5 * (omega_1 - omega_p);
  dm.omega_dm = std::sqrt(dm.omega_d * dm.omega_d + 4.0 * g * g);
  const double a = 2.0 * g;
  const double b = dm.omega_d - dm.omega_dm;
  const double norm = std::hypot(a, b);
  if (norm > 0.0) {
    dm.cos_theta = a / norm;
    dm.sin_theta = b / norm;
  } else {
    // g = 0 with omega_d >= 0: the g -> 0+ limit of the angle.
    dm.cos_theta = 1.0;
    dm.sin_theta = 0.0;
  }
  return dm;
}

}  // namespace thermoqfi
