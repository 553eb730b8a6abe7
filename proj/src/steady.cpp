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

#include "thermoqfi/steady.hpp"

#include "thermoqfi/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace thermoqfi {

namespace {

void require_temperature(double temperature) {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw DomainError("temperature must be positive and finite");
  }
}

// log(2 cosh x) without overflow.
double log_two_cosh(double x) {
  const double a = std::abs(x);
  return a + std::log1p(std::exp(-2.0 * a));
}

std::vector<int> qubit_dims(int n_qubits) { return std::vector<int>(static_cast<std::size_t>(n_qubits), 2); }

}  // namespace

Operator ProbeState2x2::matrix() const {
  Operator m(2, 2);
  m << 0.5 * (1.0 - chi), 0.5 * c, 0.5 * c, 0.5 * (1.0 + chi);
  return m;
}

double ProbeState2x2::bloch_norm() const { return std::hypot(chi, c); }

double ProbeState2x2::coherence() const { return 0.5 * std::abs(c); }

ProbeState2x2 ProbeState2x2::from_density(const DensityMatrix& rho) {
  if (rho.dim() != 2) throw ShapeError("probe state must be 2x2");
  if (std::abs(rho(0, 1).imag()) > kDefaultPolicy.equality) {
    throw ArgumentError("probe coherence is not real");
  }
  return {(rho(1, 1) - rho(0, 0)).real(), 2.0 * rho(0, 1).real()};
}

ProbeState2x2 thermal_tls(double omega, double temperature) {
  require_temperature(temperature);
  return {std::tanh(omega / (2.0 * temperature)), 0.0};
}

Operator qubit_gibbs_matrix(double omega, double temperature) {
  require_temperature(temperature);
  const double t = std::tanh(omega / (2.0 * temperature));
  Operator m = Operator::Zero(2, 2);
  m(0, 0) = 0.5 * (1.0 - t);
  m(1, 1) = 0.5 * (1.0 + t);
  return m;
}

DensityMatrix dressed_product_state(const ThermometerParams& p, const DressedFrame& frame,
                                    double temperature) {
  require_temperature(temperature);
  p.validate();
  std::vector<Operator> factors;
  for (double w : p.omega_k) factors.push_back(qubit_gibbs_matrix(w, temperature));
  factors.push_back(qubit_gibbs_matrix(frame.omega, temperature));
  return DensityMatrix(tensor(factors));
}

ProbeState2x2 probe_state_n1(const ThermometerParams& p, double temperature) {
  require_temperature(temperature);
  p.validate();
  if (p.n_ancilla() != 1) throw UnsupportedModelError("probe_state_n1 needs one ancilla");
  const double theta = mixing_angles(p)[0];
  const double omega = exact_probe_gaps(p)[0];
  const double alpha = std::tanh(omega / (2.0 * temperature));
  const double t1 = std::tanh(p.omega_k[0] / (2.0 * temperature));
  return {std::cos(theta) * alpha, std::sin(theta) * alpha * t1};
}

ProbeState2x2 probe_state_n2(const ThermometerParams& p, double temperature) {
  require_temperature(temperature);
  p.validate();
  if (p.n_ancilla() != 2) throw UnsupportedModelError("probe_state_n2 needs two ancillas");
  const std::vector<double> theta = mixing_angles(p);
  const double omega = two_ancilla_probe_frequency(p);
  const double th1 = theta[0];
  const double th2 = theta[1];
  const double a = p.omega_k[0] / temperature;
  const double b = p.omega_k[1] / temperature;

  const double alpha = std::tanh(omega / (2.0 * temperature));
  const double beta = std::cos(th1) * std::cos(th2) -
                      std::sin(th1) * std::sin(th2) * std::tanh(0.5 * a) * std::tanh(0.5 * b);

  // (e^{W/T} - 1)/(e^{W/T} + 1) is alpha; the bracket over
  // (e^a + 1)(e^b + 1) is divided through by e^{a + b}.
  const double ea = std::exp(-a);
  const double eb = std::exp(-b);
  const double bracket = std::sin(th1 - th2) * (eb - ea) + std::sin(th1 + th2) * (1.0 - ea * eb);
  const double element = alpha * bracket / (2.0 * (1.0 + ea) * (1.0 + eb));
  return {alpha * beta, 2.0 * element};
}

ProbeState2x2 asymmetric_probe_state(const ThermometerParams& p, double temperature) {
  switch (p.n_ancilla()) {
    case 0:
      return thermal_tls(p.omega_p, temperature);
    case 1:
      return probe_state_n1(p, temperature);
    case 2:
      return probe_state_n2(p, temperature);
    default:
      throw UnsupportedModelError("asymmetric closed form covers at most two ancillas");
  }
}

DensityMatrix probe_state_by_transformation(const ThermometerParams& p, double temperature) {
  const DressedFrame frame = dressed_frame(p);
  const Operator u = dressing_unitary(p);
  const DensityMatrix dressed = dressed_product_state(p, frame, temperature);
  const Operator local = to_local_frame(u, dressed.matrix());
  const std::vector<int> dims = qubit_dims(p.n_qubits());
  return DensityMatrix(hermitize(partial_trace(local, dims, {p.n_ancilla()})));
}

DensityMatrix global_gibbs_probe_dense(const ThermometerParams& p, double temperature) {
  const DensityMatrix rho = gibbs_state(build_hamiltonian(p), temperature);
  const std::vector<int> dims = qubit_dims(p.n_qubits());
  return partial_trace(rho, dims, {p.n_ancilla()});
}

ProbeState2x2 global_gibbs_probe_identical(double omega_p, double omega, double g, int n,
                                           double temperature) {
  require_temperature(temperature);
  if (n < 0) throw ArgumentError("ancilla count must be non-negative");
  if (!(omega_p > 0.0) || !(omega > 0.0)) throw ArgumentError("frequencies must be positive");

  std::vector<double> log_weight(static_cast<std::size_t>(n) + 1);
  std::vector<double> chi(log_weight.size());
  std::vector<double> coh(log_weight.size());
  for (int m = 0; m <= n; ++m) {
    const double s = 2.0 * m - n;
    const double field = g * s;
    const double gap = std::sqrt(omega_p * omega_p + 4.0 * field * field);
    const double log_binom = std::lgamma(n + 1.0) - std::lgamma(m + 1.0) - std::lgamma(n - m + 1.0);
    const auto i = static_cast<std::size_t>(m);
    log_weight[i] = log_binom - s * omega / (2.0 * temperature) + log_two_cosh(gap / (2.0 * temperature));
    const double t = std::tanh(gap / (2.0 * temperature));
    chi[i] = t * omega_p / gap;
    coh[i] = -t * 2.0 * field / gap;
  }
  const double top = *std::max_element(log_weight.begin(), log_weight.end());
  double z = 0.0;
  ProbeState2x2 out;
  for (std::size_t i = 0; i < log_weight.size(); ++i) {
    const double w = std::exp(log_weight[i] - top);
    z += w;
    out.chi += w * chi[i];
    out.c += w * coh[i];
  }
  out.chi /= z;
  out.c /= z;
  return out;
}

bool has_identical_ancillas(const ThermometerParams& p) {
  if (p.n_ancilla() == 0) return true;
  return std::all_of(p.omega_k.begin(), p.omega_k.end(), [&](double w) { return w == p.omega_k[0]; }) &&
         std::all_of(p.g_k.begin(), p.g_k.end(), [&](double g) { return g == p.g_k[0]; });
}

ProbeState2x2 global_gibbs_probe(const ThermometerParams& p, double temperature) {
  p.validate();
  if (p.n_ancilla() == 0) return thermal_tls(p.omega_p, temperature);
  if (has_identical_ancillas(p)) {
    return global_gibbs_probe_identical(p.omega_p, p.omega_k[0], p.g_k[0], p.n_ancilla(), temperature);
  }
  return ProbeState2x2::from_density(global_gibbs_probe_dense(p, temperature));
}

ProbeState2x2 global_gibbs_probe_n1_closed_form(const ThermometerParams& p, double temperature,
                                                GlobalPopulationForm form) {
  require_temperature(temperature);
  p.validate();
  if (p.n_ancilla() != 1) throw UnsupportedModelError("closed global form needs one ancilla");
  const double g = p.g_k[0];
  const double omega = std::sqrt(p.omega_p * p.omega_p + 4.0 * g * g);
  const double t = std::tanh(omega / (2.0 * temperature));
  const double prefactor = form == GlobalPopulationForm::kLiteral ? omega : p.omega_p / omega;
  const double element = (g / omega) * t * std::tanh(p.omega_k[0] / (2.0 * temperature));
  return {prefactor * t, 2.0 * element};
}

ProbeState2x2 dd_probe_state(double omega_p, double omega_1, double g, double temperature) {
  require_temperature(temperature);
  if (!(omega_p > 0.0) || !(omega_1 > 0.0) || !std::isfinite(g)) {
    throw ArgumentError("dipole-dipole parameters out of range");
  }
  return {0.0, 0.0};
}

DensityMatrix dd_probe_state_by_transformation(double omega_p, double omega_1, double g,
                                               double temperature) {
  require_temperature(temperature);
  const Operator h = build_dd_hamiltonian(omega_p, omega_1, g);
  const DipoleDipoleFrequencies f = dd_frequencies(omega_p, omega_1, g);

  // Eigenvectors of H_dd labelled by their dressed energy; each receives the
  // weight of the matching entry of rho_p(w_+) (x) rho_1(w_-).
  Eigen::SelfAdjointEigenSolver<Operator> es(h);
  const Operator rp = qubit_gibbs_matrix(f.omega_plus, temperature);
  const Operator r1 = qubit_gibbs_matrix(f.omega_minus, temperature);
  const std::array<double, 2> sz{1.0, -1.0};
  Operator local = Operator::Zero(4, 4);
  for (Eigen::Index k = 0; k < 4; ++k) {
    const double e = es.eigenvalues()(k);
    double best = 1e300;
    double weight = 0.0;
    for (int ip = 0; ip < 2; ++ip) {
      for (int i1 = 0; i1 < 2; ++i1) {
        const double dressed = 0.5 * (f.omega_plus * sz[static_cast<std::size_t>(ip)] +
                                      f.omega_minus * sz[static_cast<std::size_t>(i1)]);
        if (std::abs(dressed - e) < best) {
          best = std::abs(dressed - e);
          weight = rp(ip, ip).real() * r1(i1, i1).real();
        }
      }
    }
    local += weight * es.eigenvectors().col(k) * es.eigenvectors().col(k).adjoint();
  }
  const std::vector<int> dims{2, 2};
  return DensityMatrix(hermitize(partial_trace(local, dims, {1})));
}

ProbeState2x2 dm_probe_state(const DmModelParams& dm, double temperature) {
  require_temperature(temperature);
  const double big = dm.omega_dm;
  const double ws = dm.omega_s;
  const double c2 = dm.cos_theta * dm.cos_theta;
  const double s2 = dm.sin_theta * dm.sin_theta;
  // Exponents of the four terms making up the normalization.
  const double e1 = big / temperature;
  const double e2 = (ws + 2.0 * big) / temperature;
  const double e3 = ws / temperature;
  const double e4 = (2.0 * ws + big) / temperature;
  const double top_exp = std::max({e1, e2, e3, e4});
  const double x1 = std::exp(e1 - top_exp);
  const double x2 = std::exp(e2 - top_exp);
  const double x3 = std::exp(e3 - top_exp);
  const double x4 = std::exp(e4 - top_exp);
  const double norm = x1 + x2 + x3 + x4;
  const double excited = (x1 + c2 * x2 + s2 * x3) / norm;
  const double ground = (x4 + c2 * x3 + s2 * x2) / norm;
  return {ground - excited, 0.0};
}

}  // namespace thermoqfi
