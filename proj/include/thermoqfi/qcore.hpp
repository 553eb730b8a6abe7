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

// Dense complex operator algebra for small qubit registers.
//
// Conventions used throughout the library:
//   * sigma^z = diag(1, -1); the excited state |+> = (1, 0)^T comes first.
//   * Multi-qubit operators are Kronecker products with site 0 as the most
//     significant (leftmost) factor. Ancillas occupy sites 0..N-1 and the
//     probe sits on site N, so "trace out the ancillas" keeps the last site.

#include <Eigen/Dense>

#include <complex>
#include <initializer_list>
#include <set>
#include <span>
#include <vector>

namespace thermoqfi {

using Complex = std::complex<double>;
using Operator = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

/// Tolerances shared by every validity check. Pass a modified copy to
/// loosen or tighten a single call.
struct NumericPolicy {
  double hermiticity = 1e-10;  // max |A - A^dagger| entrywise
  double trace = 1e-10;        // |Tr rho - 1|
  double positivity = 1e-10;   // smallest admissible eigenvalue is -positivity
  double equality = 1e-8;
};

inline constexpr NumericPolicy kDefaultPolicy{};

enum class PauliAxis { kX, kY, kZ, kPlus, kMinus };

/// Site label inside a register; ancillas first, probe last.
struct QubitIndex {
  int site = 0;
};

/// A validated density matrix: Hermitian, unit trace, positive semidefinite
/// and finite, all to the tolerances of the policy it was built with.
class DensityMatrix {
 public:
  explicit DensityMatrix(Operator op, const NumericPolicy& policy = kDefaultPolicy);

  static DensityMatrix maximally_mixed(Eigen::Index dim);

  const Operator& matrix() const { return op_; }
  Eigen::Index dim() const { return op_.rows(); }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return op_(i, j); }

 private:
  Operator op_;
};

Operator identity(Eigen::Index dim);

/// Single-qubit Pauli operator (sigma^+- = (sigma^x +- i sigma^y)/2) embedded
/// at `site` of an n-qubit register.
Operator pauli(PauliAxis axis, QubitIndex site, int n_qubits);

/// 2x2 Pauli matrix for one axis.
Operator pauli2(PauliAxis axis);

/// Kronecker product in list order.
Operator tensor(std::span<const Operator> factors);
Operator tensor(std::initializer_list<Operator> factors);

/// Reduced operator over the subsystems listed in `keep`.
Operator partial_trace(const Operator& op, std::span<const int> dims,
                       const std::set<int>& keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> dims,
                            const std::set<int>& keep);

/// exp(-H/T)/Z through a Hermitian eigendecomposition with the ground energy
/// shifted to zero before exponentiation.
DensityMatrix gibbs_state(const Operator& hamiltonian, double temperature,
                          const NumericPolicy& policy = kDefaultPolicy);

/// Half the trace norm of rho - sigma.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);
double trace_distance(const Operator& rho, const Operator& sigma);

// Small helpers used across modules.
bool is_hermitian(const Operator& op, double tol);
bool all_finite(const Operator& op);
double max_abs(const Operator& op);
Operator hermitize(const Operator& op);
Operator commutator(const Operator& a, const Operator& b);
Eigen::VectorXd hermitian_eigenvalues(const Operator& op);

/// exp(-i G) for Hermitian G via its eigendecomposition.
Operator expm_minus_i(const Operator& generator);

/// Computational basis state |index> of dimension dim.
StateVector basis_state(Eigen::Index dim, Eigen::Index index);

}  // namespace thermoqfi
