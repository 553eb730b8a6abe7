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

#include "thermoqfi/dynamics.hpp"

#include "thermoqfi/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace thermoqfi {

SpectralResponse SpectralResponse::flat(double base_rate) {
  return {SpectrumKind::kFlat, base_rate, 1.0};
}

SpectralResponse SpectralResponse::ohmic(double base_rate, double cutoff) {
  return {SpectrumKind::kOhmic, base_rate, cutoff};
}

double SpectralResponse::operator()(double omega) const {
  if (!(base_rate > 0.0)) throw ArgumentError("spectral response needs a positive base rate");
  const double w = std::abs(omega);
  switch (kind) {
    case SpectrumKind::kFlat:
      return base_rate;
    case SpectrumKind::kOhmic:
      if (!(ohmic_cutoff > 0.0)) throw ArgumentError("ohmic cutoff must be positive");
      return base_rate * (w / ohmic_cutoff) * std::exp(-w / ohmic_cutoff);
  }
  return base_rate;
}

std::vector<JumpChannel> build_channels(const ThermometerParams& p, const DressedFrame& frame,
                                        double temperature, const SpectralResponse& response,
                                        const ChannelOptions& options) {
  if (!(temperature > 0.0)) throw DomainError("temperature must be positive");
  p.validate();
  if (frame.theta.size() != static_cast<std::size_t>(p.n_ancilla())) {
    throw ShapeError("dressed frame does not match the parameter set");
  }
  const int n = p.n_qubits();
  const QubitIndex probe = p.probe_site();
  const Operator sp_p = pauli(PauliAxis::kPlus, probe, n);
  const Operator sm_p = pauli(PauliAxis::kMinus, probe, n);
  const double sign = options.invert_boltzmann_exponent ? 1.0 : -1.0;

  std::vector<JumpChannel> channels;
  auto add_pair = [&](Operator lowering, double freq, double angle_weight, ChannelFamily family,
                      int k) {
    if (freq < 0.0) {
      lowering = lowering.adjoint().eval();
      freq = -freq;
    }
    const double prefactor = angle_weight * response(freq);
    const double boltzmann = std::exp(sign * freq / temperature);
    JumpChannel emission{lowering, freq, prefactor, boltzmann, ChannelDirection::kEmission, family, k};
    JumpChannel absorption{lowering.adjoint(), freq, prefactor, boltzmann,
                           ChannelDirection::kAbsorption, family, k};
    channels.push_back(std::move(emission));
    channels.push_back(std::move(absorption));
  };

  for (int k = 0; k < p.n_ancilla(); ++k) {
    const double theta = frame.theta[static_cast<std::size_t>(k)];
    const double wk = p.omega_k[static_cast<std::size_t>(k)];
    const double c2 = std::cos(theta) * std::cos(theta);
    const double s2 = std::sin(theta) * std::sin(theta);
    const Operator sm_k = pauli(PauliAxis::kMinus, {k}, n);
    add_pair(sm_k, wk, c2, ChannelFamily::kLocal, k);
    add_pair(sm_k * sp_p, wk - frame.omega, s2, ChannelFamily::kExchange, k);
    add_pair(sm_k * sm_p, wk + frame.omega, s2, ChannelFamily::kPair, k);
  }
  return channels;
}

Operator lindblad_rhs(const Operator& rho, const Operator& hamiltonian,
                      std::span<const JumpChannel> channels) {
  if (rho.rows() != hamiltonian.rows() || rho.cols() != hamiltonian.cols()) {
    throw ShapeError("state and Hamiltonian dims differ");
  }
  Operator out = Complex(0.0, -1.0) * commutator(hamiltonian, rho);
  for (const JumpChannel& ch : channels) {
    if (ch.op.rows() != rho.rows()) throw ShapeError("jump operator dim mismatch");
    const double r = ch.rate();
    if (r == 0.0) continue;
    const Operator cdc = ch.op.adjoint() * ch.op;
    out += r * (ch.op * rho * ch.op.adjoint() - 0.5 * (cdc * rho + rho * cdc));
  }
  return out;
}

Operator lindblad_rhs(const DensityMatrix& rho, const Operator& hamiltonian,
                      std::span<const JumpChannel> channels) {
  return lindblad_rhs(rho.matrix(), hamiltonian, channels);
}

Liouvillian liouvillian(const Operator& hamiltonian, std::span<const JumpChannel> channels) {
  const Eigen::Index d = hamiltonian.rows();
  const Operator id = identity(d);
  // vec(A X B) = (B^T kron A) vec(X) for column stacking.
  Operator l = Complex(0.0, -1.0) * (tensor({id, hamiltonian}) - tensor({Operator(hamiltonian.transpose()), id}));
  for (const JumpChannel& ch : channels) {
    if (ch.op.rows() != d) throw ShapeError("jump operator dim mismatch");
    const double r = ch.rate();
    if (r == 0.0) continue;
    const Operator cdc = ch.op.adjoint() * ch.op;
    l += r * (tensor({Operator(ch.op.conjugate()), ch.op}) - 0.5 * tensor({id, cdc}) -
              0.5 * tensor({Operator(cdc.transpose()), id}));
  }
  return {l, d};
}

DensityMatrix steady_state(const Liouvillian& generator) {
  const Eigen::Index d = generator.d;
  if (generator.matrix.rows() != d * d) throw ShapeError("Liouvillian dims inconsistent");
  Eigen::ComplexEigenSolver<Operator> es(generator.matrix);
  if (es.info() != Eigen::Success) throw NumericalFailure("Liouvillian eigensolver failed");
  const Eigen::VectorXcd& lambda = es.eigenvalues();

  std::vector<Eigen::Index> order(static_cast<std::size_t>(lambda.size()));
  for (Eigen::Index i = 0; i < lambda.size(); ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return std::abs(lambda(a)) < std::abs(lambda(b));
  });
  if (order.size() > 1 && std::abs(lambda(order[1])) < 1e-12) {
    std::ostringstream os;
    os << "second-smallest |eigenvalue| " << std::abs(lambda(order[1])) << " below 1e-12";
    throw NonUniqueSteadyStateError(os.str());
  }

  // The null vector itself comes from a bordered linear solve: one balance
  // equation is replaced by Tr rho = 1. This keeps tiny populations of cold,
  // stiff generators accurate, where the eigenvector loses ~1e-11 absolute.
  Operator bordered = generator.matrix;
  bordered.row(0).setZero();
  for (Eigen::Index i = 0; i < d; ++i) bordered(0, i + i * d) = 1.0;
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(d * d);
  rhs(0) = 1.0;
  const Eigen::FullPivLU<Operator> lu(bordered);
  if (!lu.isInvertible()) throw NonUniqueSteadyStateError("bordered generator is singular");
  const Eigen::VectorXcd v = lu.solve(rhs);
  const Operator rho = hermitize(Eigen::Map<const Operator>(v.data(), d, d));

  const Eigen::VectorXcd vec_rho = Eigen::Map<const Eigen::VectorXcd>(rho.data(), d * d);
  const double residual = (generator.matrix * vec_rho).cwiseAbs().maxCoeff();
  if (residual > 1e-9) {
    std::ostringstream os;
    os << "steady-state residual " << residual << " exceeds 1e-9";
    throw NumericalFailure(os.str());
  }
  return DensityMatrix(rho);
}

double recommended_time_step(const Operator& hamiltonian, std::span<const JumpChannel> channels) {
  double fastest = 0.0;
  for (const JumpChannel& ch : channels) fastest = std::max(fastest, ch.rate());
  const Eigen::VectorXd e = hermitian_eigenvalues(hamiltonian);
  fastest = std::max(fastest, e.maxCoeff() - e.minCoeff());
  if (fastest <= 0.0) throw ArgumentError("no dynamics: zero Hamiltonian and no channels");
  return 0.01 / fastest;
}

DensityMatrix evolve(const DensityMatrix& rho0, const Operator& hamiltonian,
                     std::span<const JumpChannel> channels, double t_final, double dt) {
  if (!(dt > 0.0)) throw ArgumentError("time step must be positive");
  if (!(t_final >= 0.0)) throw ArgumentError("final time must be non-negative");
  Operator rho = rho0.matrix();
  const auto steps = static_cast<long>(std::ceil(t_final / dt - 1e-12));
  if (steps == 0) return rho0;
  const double h = t_final / static_cast<double>(steps);

  auto f = [&](const Operator& x) { return lindblad_rhs(x, hamiltonian, channels); };
  for (long s = 1; s <= steps; ++s) {
    const Operator k1 = f(rho);
    const Operator k2 = f(rho + 0.5 * h * k1);
    const Operator k3 = f(rho + 0.5 * h * k2);
    const Operator k4 = f(rho + h * k3);
    rho = hermitize(rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));

    if (!all_finite(rho)) throw StiffnessError("state diverged; reduce dt");
    const double lowest = hermitian_eigenvalues(rho).minCoeff();
    if (lowest < -1e-6) {
      std::ostringstream os;
      os << "eigenvalue " << lowest << " at step " << s << "; reduce dt below " << h;
      throw StiffnessError(os.str());
    }
    if (s % 10 == 0 || s == steps) {
      const double drift = std::abs(rho.trace() - Complex(1.0, 0.0));
      if (drift > 1e-8) throw NumericalFailure("trace drifted during integration");
      rho /= rho.trace().real();
    }
  }
  NumericPolicy relaxed;
  relaxed.positivity = 1e-6;
  return DensityMatrix(rho, relaxed);
}

DensityMatrix numerical_dressed_steady_state(const ThermometerParams& p, double temperature,
                                             const SpectralResponse& response,
                                             const ChannelOptions& options) {
  const DressedFrame frame = dressed_frame(p);
  const std::vector<JumpChannel> channels = build_channels(p, frame, temperature, response, options);
  return steady_state(liouvillian(master_equation_hamiltonian(p), channels));
}

}  // namespace thermoqfi
