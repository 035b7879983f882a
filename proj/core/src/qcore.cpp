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

#include "sqip/qcore.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace sqip {
namespace {

void require_square(const ComplexMatrix& x, const char* op) {
  if (x.rows() != x.cols()) {
    std::ostringstream os;
    os << op << ": expected a square matrix, got " << x.rows() << "x"
       << x.cols();
    throw ArgumentError(os.str());
  }
}

void require_shape(const ComplexMatrix& x, const SubsystemShape& shape,
                   const char* op) {
  require_square(x, op);
  if (static_cast<std::size_t>(x.rows()) != shape.total_dim()) {
    std::ostringstream os;
    os << op << ": matrix dimension " << x.rows()
       << " does not match register shape of total dimension "
       << shape.total_dim();
    throw ArgumentError(os.str());
  }
}

// Row-major strides: register 0 is the most significant digit.
std::vector<std::size_t> strides_of(const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> strides(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) {
    strides[i - 1] = strides[i] * dims[i];
  }
  return strides;
}

// Linear indices of the full space, enumerated in the order given by the
// register list `order` (first entry most significant). Entry `n` is the full
// index whose digits along `order` spell out `n`.
std::vector<std::size_t> enumerate_indices(
    const std::vector<std::size_t>& dims,
    const std::vector<std::size_t>& order) {
  const auto strides = strides_of(dims);
  std::size_t count = 1;
  for (auto r : order) count *= dims[r];
  std::vector<std::size_t> out(count, 0);
  std::vector<std::size_t> digit(order.size(), 0);
  for (std::size_t n = 0; n < count; ++n) {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
      idx += digit[k] * strides[order[k]];
    }
    out[n] = idx;
    for (std::size_t k = order.size(); k-- > 0;) {
      if (++digit[k] < dims[order[k]]) break;
      digit[k] = 0;
    }
  }
  return out;
}

void validate_permutation(std::span<const std::size_t> perm, std::size_t n) {
  if (perm.size() != n) {
    throw ArgumentError("permute_subsystems: permutation has " +
                        std::to_string(perm.size()) + " entries for " +
                        std::to_string(n) + " registers");
  }
  std::vector<bool> seen(n, false);
  for (auto p : perm) {
    if (p >= n || seen[p]) {
      throw ArgumentError("permute_subsystems: not a permutation");
    }
    seen[p] = true;
  }
}

}  // namespace

SubsystemShape::SubsystemShape(std::vector<std::size_t> dims)
    : dims_(std::move(dims)) {
  for (auto d : dims_) {
    if (d == 0 || (d & (d - 1)) != 0) {
      throw ArgumentError("SubsystemShape: register dimension " +
                          std::to_string(d) + " is not a power of two");
    }
  }
}

SubsystemShape SubsystemShape::FromQubits(std::span<const int> qubits) {
  std::vector<std::size_t> dims;
  dims.reserve(qubits.size());
  for (int q : qubits) {
    if (q < 0 || q > 30) throw ArgumentError("SubsystemShape: bad qubit count");
    dims.push_back(std::size_t{1} << q);
  }
  return SubsystemShape(std::move(dims));
}

SubsystemShape SubsystemShape::Qubits(int count) {
  return SubsystemShape(std::vector<std::size_t>(count, 2));
}

std::size_t SubsystemShape::total_dim() const {
  return std::accumulate(dims_.begin(), dims_.end(), std::size_t{1},
                         std::multiplies<>());
}

SubsystemShape SubsystemShape::concat(const SubsystemShape& other) const {
  auto dims = dims_;
  dims.insert(dims.end(), other.dims_.begin(), other.dims_.end());
  return SubsystemShape(std::move(dims));
}

SubsystemShape SubsystemShape::select(
    std::span<const std::size_t> registers) const {
  std::vector<std::size_t> dims;
  for (auto r : registers) dims.push_back(dim(r));
  return SubsystemShape(std::move(dims));
}

ComplexMatrix identity(std::size_t dim) {
  return ComplexMatrix::Identity(dim, dim);
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix tensor(std::span<const ComplexMatrix> factors) {
  ComplexMatrix out = ComplexMatrix::Ones(1, 1);
  for (const auto& f : factors) out = tensor(out, f);
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& x, const SubsystemShape& shape,
                            std::span<const std::size_t> keep) {
  require_shape(x, shape, "partial_trace");
  const std::size_t n = shape.size();
  std::vector<bool> kept(n, false);
  for (auto k : keep) {
    if (k >= n) {
      throw ArgumentError("partial_trace: register index " + std::to_string(k) +
                          " out of range for " + std::to_string(n) +
                          " registers");
    }
    kept[k] = true;
  }
  std::vector<std::size_t> keep_order, trace_order;
  for (std::size_t r = 0; r < n; ++r) {
    (kept[r] ? keep_order : trace_order).push_back(r);
  }
  const auto& dims = shape.dims();
  const auto kept_idx = enumerate_indices(dims, keep_order);
  const auto traced_idx = enumerate_indices(dims, trace_order);
  const auto dk = static_cast<Eigen::Index>(kept_idx.size());
  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  for (Eigen::Index a = 0; a < dk; ++a) {
    for (Eigen::Index b = 0; b < dk; ++b) {
      Complex s = 0.0;
      for (auto t : traced_idx) {
        s += x(kept_idx[a] + t, kept_idx[b] + t);
      }
      out(a, b) = s;
    }
  }
  return out;
}

ComplexMatrix permute_subsystems(const ComplexMatrix& x,
                                 const SubsystemShape& shape,
                                 std::span<const std::size_t> perm) {
  require_shape(x, shape, "permute_subsystems");
  validate_permutation(perm, shape.size());
  const auto src = enumerate_indices(
      shape.dims(), std::vector<std::size_t>(perm.begin(), perm.end()));
  const auto d = x.rows();
  ComplexMatrix out(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      out(i, j) = x(src[i], src[j]);
    }
  }
  return out;
}

ComplexVector permute_subsystems(const ComplexVector& v,
                                 const SubsystemShape& shape,
                                 std::span<const std::size_t> perm) {
  if (static_cast<std::size_t>(v.size()) != shape.total_dim()) {
    throw ArgumentError("permute_subsystems: vector dimension mismatch");
  }
  validate_permutation(perm, shape.size());
  const auto src = enumerate_indices(
      shape.dims(), std::vector<std::size_t>(perm.begin(), perm.end()));
  ComplexVector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = v(src[i]);
  return out;
}

std::vector<std::size_t> inverse_permutation(
    std::span<const std::size_t> perm) {
  validate_permutation(perm, perm.size());
  std::vector<std::size_t> inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = i;
  return inv;
}

double norm(const ComplexMatrix& x, NormKind kind) {
  require_square(x, "norm");
  Eigen::JacobiSVD<ComplexMatrix> svd(x);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return 0.0;
  return kind == NormKind::kTrace ? s.sum() : s.maxCoeff();
}

double trace_norm(const ComplexMatrix& x) { return norm(x, NormKind::kTrace); }

double spectral_norm(const ComplexMatrix& x) {
  return norm(x, NormKind::kSpectral);
}

bool is_hermitian(const ComplexMatrix& x, double tol) {
  if (x.rows() != x.cols()) return false;
  return (x - x.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

ComplexMatrix hermitian_part(const ComplexMatrix& x) {
  return 0.5 * (x + x.adjoint());
}

RealVector hermitian_eigenvalues(const ComplexMatrix& x, double tol) {
  require_square(x, "hermitian_eigenvalues");
  if (!is_hermitian(x, tol)) {
    throw ArgumentError("hermitian_eigenvalues: input is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(x),
                                                  Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

bool is_psd(const ComplexMatrix& x, double tol) {
  if (!is_hermitian(x, tol)) return false;
  return hermitian_eigenvalues(x, tol).minCoeff() >= -tol;
}

double max_eigenvalue(const ComplexMatrix& x, double tol) {
  return hermitian_eigenvalues(x, tol).maxCoeff();
}

ComplexMatrix psd_sqrt(const ComplexMatrix& x) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(x));
  RealVector ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.cast<Complex>().asDiagonal() *
         es.eigenvectors().adjoint();
}

ComplexMatrix positive_part_normalized(const ComplexMatrix& x) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(x));
  RealVector ev = es.eigenvalues().cwiseMax(0.0);
  const double total = ev.sum();
  if (total <= 0.0) {
    throw InvariantError("positive_part_normalized: no positive part");
  }
  ev /= total;
  return es.eigenvectors() * ev.cast<Complex>().asDiagonal() *
         es.eigenvectors().adjoint();
}

double inner_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ArgumentError("inner_product: dimension mismatch");
  }
  // Tr(a* b) = sum_ij conj(a_ij) b_ij
  return (a.conjugate().cwiseProduct(b)).sum().real();
}

ComplexVector basis_ket(std::size_t dim, std::size_t index) {
  if (index >= dim) throw ArgumentError("basis_ket: index out of range");
  ComplexVector v = ComplexVector::Zero(dim);
  v(index) = 1.0;
  return v;
}

ComplexMatrix basis_projector(std::size_t dim, std::size_t index) {
  auto v = basis_ket(dim, index);
  return v * v.adjoint();
}

ComplexMatrix maximally_mixed(std::size_t dim) {
  return identity(dim) / static_cast<double>(dim);
}

ComplexMatrix max_entangled_projector(int qubits) {
  const std::size_t d = std::size_t{1} << qubits;
  ComplexVector v = ComplexVector::Zero(d * d);
  for (std::size_t y = 0; y < d; ++y) v(y * d + y) = 1.0;
  v /= std::sqrt(static_cast<double>(d));
  return v * v.adjoint();
}

DensityOperator::DensityOperator(ComplexMatrix matrix, SubsystemShape shape,
                                 double tol)
    : matrix_(std::move(matrix)), shape_(std::move(shape)) {
  require_shape(matrix_, shape_, "DensityOperator");
  if (!is_hermitian(matrix_, tol)) {
    throw InvariantError("DensityOperator: matrix is not Hermitian");
  }
  if (std::abs(matrix_.trace() - Complex(1.0)) > tol) {
    std::ostringstream os;
    os << "DensityOperator: trace " << matrix_.trace().real() << " != 1";
    throw InvariantError(os.str());
  }
  if (hermitian_eigenvalues(matrix_, tol).minCoeff() < -tol) {
    throw InvariantError("DensityOperator: matrix is not positive semidefinite");
  }
}

DensityOperator::DensityOperator(ComplexMatrix matrix, double tol)
    : DensityOperator(matrix, SubsystemShape({static_cast<std::size_t>(
                                  std::max<Eigen::Index>(matrix.rows(), 1))}),
                      tol) {}

double fidelity(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
    throw ArgumentError("fidelity: dimension mismatch");
  }
  const double f = trace_norm(psd_sqrt(rho) * psd_sqrt(sigma));
  return std::clamp(f, 0.0, 1.0);
}

double fidelity(const DensityOperator& rho, const DensityOperator& sigma) {
  return fidelity(rho.matrix(), sigma.matrix());
}

int qubit_count(std::size_t dim) {
  if (dim == 0 || (dim & (dim - 1)) != 0) {
    throw ArgumentError("dimension " + std::to_string(dim) +
                        " is not a power of two");
  }
  int q = 0;
  while ((std::size_t{1} << q) < dim) ++q;
  return q;
}

}  // namespace sqip
