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

#include "thermoqfi/qcore.hpp"

#include "thermoqfi/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace thermoqfi {

namespace {

// Positivity via Cholesky of rho + tol*I for large matrices, eigenvalues for
// small ones (where the explicit spectrum gives a better error message).
bool is_positive(const Operator& op, double tol) {
  if (op.rows() <= 64) {
    return hermitian_eigenvalues(op).minCoeff() >= -tol;
  }
  const Operator shifted =
      op + Operator::Identity(op.rows(), op.cols()) * Complex(2.0 * tol, 0.0);
  Eigen::LLT<Operator> llt(shifted);
  return llt.info() == Eigen::Success;
}

}  // namespace

DensityMatrix::DensityMatrix(Operator op, const NumericPolicy& policy)
    : op_(std::move(op)) {
  if (op_.rows() != op_.cols() || op_.rows() == 0) {
    throw ShapeError("density matrix must be square and non-empty");
  }
  if (!all_finite(op_)) {
    throw NumericalFailure("density matrix has non-finite entries");
  }
  if (!is_hermitian(op_, policy.hermiticity)) {
    throw ArgumentError("density matrix is not Hermitian");
  }
  const Complex tr = op_.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > policy.trace) {
    std::ostringstream os;
    os << "density matrix trace " << tr.real() << " differs from 1";
    throw ArgumentError(os.str());
  }
  if (!is_positive(op_, policy.positivity)) {
    throw ArgumentError("density matrix has a negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim) {
  return DensityMatrix(identity(dim) / static_cast<double>(dim));
}

Operator identity(Eigen::Index dim) { return Operator::Identity(dim, dim); }

Operator pauli2(PauliAxis axis) {
  Operator s = Operator::Zero(2, 2);
  switch (axis) {
    case PauliAxis::kX:
      s(0, 1) = 1.0;
      s(1, 0) = 1.0;
      break;
    case PauliAxis::kY:
      s(0, 1) = Complex(0.0, -1.0);
      s(1, 0) = Complex(0.0, 1.0);
      break;
    case PauliAxis::kZ:
      s(0, 0) = 1.0;
      s(1, 1) = -1.0;
      break;
    case PauliAxis::kPlus:  // |+><-|
      s(0, 1) = 1.0;
      break;
    case PauliAxis::kMinus:
      s(1, 0) = 1.0;
      break;
  }
  return s;
}

Operator pauli(PauliAxis axis, QubitIndex site, int n_qubits) {
  if (n_qubits < 1) {
    throw ArgumentError("register needs at least one qubit");
  }
  if (site.site < 0 || site.site >= n_qubits) {
    std::ostringstream os;
    os << "site " << site.site << " outside register of " << n_qubits << " qubits";
    throw IndexError(os.str());
  }
  std::vector<Operator> factors(static_cast<std::size_t>(n_qubits), identity(2));
  factors[static_cast<std::size_t>(site.site)] = pauli2(axis);
  return tensor(factors);
}

Operator tensor(std::span<const Operator> factors) {
  if (factors.empty()) {
    throw ArgumentError("tensor product of an empty list");
  }
  Operator out = factors.front();
  for (std::size_t f = 1; f < factors.size(); ++f) {
    const Operator& b = factors[f];
    Operator next(out.rows() * b.rows(), out.cols() * b.cols());
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
      for (Eigen::Index j = 0; j < out.cols(); ++j) {
        next.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = out(i, j) * b;
      }
    }
    out = std::move(next);
  }
  return out;
}

Operator tensor(std::initializer_list<Operator> factors) {
  return tensor(std::span<const Operator>(factors.begin(), factors.size()));
}

Operator partial_trace(const Operator& op, std::span<const int> dims,
                       const std::set<int>& keep) {
  const int n = static_cast<int>(dims.size());
  if (n == 0 || keep.empty()) {
    throw ShapeError("partial trace needs subsystem dims and a non-empty keep set");
  }
  long total = 1;
  for (int d : dims) {
    if (d < 1) throw ShapeError("subsystem dimension must be positive");
    total *= d;
  }
  if (op.rows() != total || op.cols() != total) {
    std::ostringstream os;
    os << "operator of dim " << op.rows() << " does not match subsystem product " << total;
    throw ShapeError(os.str());
  }
  for (int k : keep) {
    if (k < 0 || k >= n) throw IndexError("keep index out of range");
  }

  std::vector<long> stride(static_cast<std::size_t>(n), 1);
  for (int k = n - 2; k >= 0; --k) {
    stride[static_cast<std::size_t>(k)] =
        stride[static_cast<std::size_t>(k + 1)] * dims[static_cast<std::size_t>(k + 1)];
  }

  // Full-register offsets of every multi-index over a subset of sites.
  auto offsets = [&](const std::vector<int>& sites) {
    std::vector<long> off{0};
    for (int s : sites) {
      std::vector<long> next;
      next.reserve(off.size() * static_cast<std::size_t>(dims[static_cast<std::size_t>(s)]));
      for (long base : off) {
        for (int v = 0; v < dims[static_cast<std::size_t>(s)]; ++v) {
          next.push_back(base + v * stride[static_cast<std::size_t>(s)]);
        }
      }
      off = std::move(next);
    }
    return off;
  };

  std::vector<int> kept(keep.begin(), keep.end());
  std::vector<int> traced;
  for (int k = 0; k < n; ++k) {
    if (!keep.contains(k)) traced.push_back(k);
  }
  const std::vector<long> off_keep = offsets(kept);
  const std::vector<long> off_trace = offsets(traced);

  const auto dk = static_cast<Eigen::Index>(off_keep.size());
  Operator out = Operator::Zero(dk, dk);
  for (Eigen::Index a = 0; a < dk; ++a) {
    for (Eigen::Index b = 0; b < dk; ++b) {
      Complex acc = 0.0;
      for (long t : off_trace) {
        acc += op(off_keep[static_cast<std::size_t>(a)] + t,
                  off_keep[static_cast<std::size_t>(b)] + t);
      }
      out(a, b) = acc;
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> dims,
                            const std::set<int>& keep) {
  return DensityMatrix(hermitize(partial_trace(rho.matrix(), dims, keep)));
}

DensityMatrix gibbs_state(const Operator& hamiltonian, double temperature,
                          const NumericPolicy& policy) {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw DomainError("temperature must be positive and finite");
  }
  if (hamiltonian.rows() != hamiltonian.cols()) {
    throw ShapeError("Hamiltonian must be square");
  }
  if (!all_finite(hamiltonian) || !is_hermitian(hamiltonian, policy.hermiticity)) {
    throw ArgumentError("Hamiltonian must be finite and Hermitian");
  }

  Eigen::VectorXd energies;
  Operator vectors;
  if (hamiltonian.imag().cwiseAbs().maxCoeff() == 0.0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hamiltonian.real());
    energies = es.eigenvalues();
    vectors = es.eigenvectors().cast<Complex>();
  } else {
    Eigen::SelfAdjointEigenSolver<Operator> es(hermitize(hamiltonian));
    energies = es.eigenvalues();
    vectors = es.eigenvectors();
  }
  const double ground = energies.minCoeff();
  Eigen::VectorXd weights =
      (-(energies.array() - ground) / temperature).exp().matrix();
  weights /= weights.sum();
  Operator rho = vectors * weights.cast<Complex>().asDiagonal() * vectors.adjoint();
  return DensityMatrix(hermitize(rho), policy);
}

double trace_distance(const Operator& rho, const Operator& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
    throw ShapeError("trace distance between operators of different dims");
  }
  return 0.5 * hermitian_eigenvalues(rho - sigma).cwiseAbs().sum();
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return trace_distance(rho.matrix(), sigma.matrix());
}

bool is_hermitian(const Operator& op, double tol) {
  if (op.rows() != op.cols()) return false;
  return (op - op.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool all_finite(const Operator& op) {
  return op.real().allFinite() && op.imag().allFinite();
}

double max_abs(const Operator& op) {
  return op.size() == 0 ? 0.0 : op.cwiseAbs().maxCoeff();
}

Operator hermitize(const Operator& op) { return 0.5 * (op + op.adjoint()); }

Operator commutator(const Operator& a, const Operator& b) { return a * b - b * a; }

Eigen::VectorXd hermitian_eigenvalues(const Operator& op) {
  Eigen::SelfAdjointEigenSolver<Operator> es(hermitize(op), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

Operator expm_minus_i(const Operator& generator) {
  if (!is_hermitian(generator, kDefaultPolicy.hermiticity)) {
    throw ArgumentError("exponent generator must be Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Operator> es(hermitize(generator));
  const Eigen::VectorXcd phases =
      (es.eigenvalues().cast<Complex>() * Complex(0.0, -1.0)).array().exp().matrix();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

StateVector basis_state(Eigen::Index dim, Eigen::Index index) {
  if (index < 0 || index >= dim) throw IndexError("basis index out of range");
  StateVector v = StateVector::Zero(dim);
  v(index) = 1.0;
  return v;
}

}  // namespace thermoqfi
