// Copyright 2026 The sqip Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SQIP_QCORE_HPP_
#define SQIP_QCORE_HPP_

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "sqip/errors.hpp"

namespace sqip {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Absolute eigenvalue tolerance used for Hermiticity and positivity checks.
inline constexpr double kDefaultTolerance = 1e-9;

/// Local dimensions of the registers a square matrix acts on. Register 0 is
/// the leftmost tensor factor, i.e. the most significant digit of a row index.
class SubsystemShape {
 public:
  SubsystemShape() = default;
  explicit SubsystemShape(std::vector<std::size_t> dims);
  SubsystemShape(std::initializer_list<std::size_t> dims)
      : SubsystemShape(std::vector<std::size_t>(dims)) {}

  /// One register per entry, each of the given number of qubits.
  static SubsystemShape FromQubits(std::span<const int> qubits);
  /// `count` single-qubit registers.
  static SubsystemShape Qubits(int count);

  std::size_t size() const { return dims_.size(); }
  std::size_t dim(std::size_t i) const { return dims_.at(i); }
  const std::vector<std::size_t>& dims() const { return dims_; }
  /// Product of all local dimensions (1 for the empty shape).
  std::size_t total_dim() const;

  SubsystemShape concat(const SubsystemShape& other) const;
  SubsystemShape select(std::span<const std::size_t> registers) const;

  bool operator==(const SubsystemShape&) const = default;

 private:
  std::vector<std::size_t> dims_;
};

ComplexMatrix identity(std::size_t dim);

/// Kronecker product with `a` as the leading factor.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix tensor(std::span<const ComplexMatrix> factors);

/// Trace over every register not listed in `keep`. The result acts on the kept
/// registers in their original relative order.
ComplexMatrix partial_trace(const ComplexMatrix& x, const SubsystemShape& shape,
                            std::span<const std::size_t> keep);

/// Reorders registers: register i of the result is register perm[i] of `x`.
/// Equivalent to conjugating by the corresponding permutation unitary.
ComplexMatrix permute_subsystems(const ComplexMatrix& x,
                                 const SubsystemShape& shape,
                                 std::span<const std::size_t> perm);

/// Same reordering applied to a column vector.
ComplexVector permute_subsystems(const ComplexVector& v,
                                 const SubsystemShape& shape,
                                 std::span<const std::size_t> perm);

std::vector<std::size_t> inverse_permutation(std::span<const std::size_t> perm);

enum class NormKind { kTrace, kSpectral };

double norm(const ComplexMatrix& x, NormKind kind);
double trace_norm(const ComplexMatrix& x);
double spectral_norm(const ComplexMatrix& x);

bool is_hermitian(const ComplexMatrix& x, double tol = kDefaultTolerance);
bool is_psd(const ComplexMatrix& x, double tol = kDefaultTolerance);
ComplexMatrix hermitian_part(const ComplexMatrix& x);

/// Ascending eigenvalues of a Hermitian matrix (deterministic dense solver).
RealVector hermitian_eigenvalues(const ComplexMatrix& x,
                                 double tol = kDefaultTolerance);
double max_eigenvalue(const ComplexMatrix& x, double tol = kDefaultTolerance);

/// Principal square root of a positive semidefinite matrix. Negative
/// eigenvalues within round-off are clipped to zero.
ComplexMatrix psd_sqrt(const ComplexMatrix& x);

/// Positive part of a Hermitian matrix rescaled to unit trace.
ComplexMatrix positive_part_normalized(const ComplexMatrix& x);

/// Real part of Tr(a* b).
double inner_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Computational basis ket |index> in dimension `dim`.
ComplexVector basis_ket(std::size_t dim, std::size_t index);
ComplexMatrix basis_projector(std::size_t dim, std::size_t index);
ComplexMatrix maximally_mixed(std::size_t dim);
/// |phi+>^{(x) qubits} as a density matrix, with the pairs grouped as
/// (A_1..A_k, B_1..B_k), i.e. sum_y |y>|y> / sqrt(2^k).
ComplexMatrix max_entangled_projector(int qubits);

/// Quantum state with register metadata. Construction validates Hermiticity,
/// positivity and unit trace.
class DensityOperator {
 public:
  DensityOperator(ComplexMatrix matrix, SubsystemShape shape,
                  double tol = kDefaultTolerance);
  /// Single register of the matrix's full dimension.
  explicit DensityOperator(ComplexMatrix matrix, double tol = kDefaultTolerance);

  const ComplexMatrix& matrix() const { return matrix_; }
  const SubsystemShape& shape() const { return shape_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }

 private:
  ComplexMatrix matrix_;
  SubsystemShape shape_;
};

/// Root fidelity ||sqrt(rho) sqrt(sigma)||_1.
double fidelity(const DensityOperator& rho, const DensityOperator& sigma);
double fidelity(const ComplexMatrix& rho, const ComplexMatrix& sigma);

/// Number of qubits for a power-of-two dimension; throws otherwise.
int qubit_count(std::size_t dim);

}  // namespace sqip

#endif  // SQIP_QCORE_HPP_
