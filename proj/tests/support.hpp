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

// Independent reference computations and random instance generators shared
// by the unit and acceptance tests. Nothing here calls the library routine it
// is used to check.

#ifndef SQIP_TESTS_SUPPORT_HPP_
#define SQIP_TESTS_SUPPORT_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "sqip/protocols.hpp"
#include "sqip/random.hpp"

namespace sqip::testing {

std::string data_path(const std::string& relative);

// Index-enumeration reference implementations.
ComplexMatrix oracle_kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix oracle_partial_trace(const ComplexMatrix& x, const std::vector<std::size_t>& dims,
                                   const std::vector<std::size_t>& keep);
ComplexMatrix oracle_apply_kraus(const std::vector<ComplexMatrix>& kraus, const ComplexMatrix& rho);
/// (Phi (x) id)(rho) for rho on [in, env].
ComplexMatrix oracle_apply_kraus_first(const std::vector<ComplexMatrix>& kraus,
                                       const ComplexMatrix& rho, std::size_t env);

/// Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations on the real
/// symmetric embedding, ascending.
std::vector<double> jacobi_eigenvalues(const ComplexMatrix& h);
double oracle_max_eigenvalue(const ComplexMatrix& h);
/// Sum of |eigenvalues| of a Hermitian matrix.
double oracle_trace_norm_hermitian(const ComplexMatrix& h);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Random channel with `env` Kraus operators, built from an isometry.
QuantumChannel random_channel(int in_qubits, int out_qubits, std::size_t env, CounterRng& rng);
/// Random accepting element 0 <= P <= I.
ComplexMatrix random_effect(std::size_t dim, CounterRng& rng);

/// One-round measure-only protocol with accepting element `accept`.
ProtocolSpec measure_only_protocol(const ComplexMatrix& accept);

/// Random protocol with the given widths: random preparation V_0, random
/// channels in between and a random final channel to the acceptance qubit.
ProtocolSpec random_protocol(const RoundShape& shape, const std::vector<int>& memory,
                             CounterRng& rng);

/// Prover for the commit-then-basis game that sends half of |phi+>, keeps
/// the other half and answers by measuring it in the announced basis.
ProverSpec commit_basis_epr_prover();

/// Frame statistics of a state computed directly as Tr(P_a rho).
std::vector<double> oracle_frame_probabilities(const std::vector<ComplexMatrix>& p,
                                               const ComplexMatrix& rho);

}  // namespace sqip::testing

#endif  // SQIP_TESTS_SUPPORT_HPP_
