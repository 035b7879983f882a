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

#include "sqip/random.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/QR>

namespace sqip {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Complex gaussian_complex(CounterRng& rng) {
  // Box-Muller on two uniforms; deterministic across standard libraries.
  double u1 = rng.uniform();
  const double u2 = rng.uniform();
  if (u1 < 1e-300) u1 = 1e-300;
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double th = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(th) / std::numbers::sqrt2,
          r * std::sin(th) / std::numbers::sqrt2};
}

ComplexMatrix ginibre(std::size_t rows, std::size_t cols, CounterRng& rng) {
  ComplexMatrix g(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) g(i, j) = gaussian_complex(rng);
  }
  return g;
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix64(mix64(seed + kGolden) ^ (stream * kGolden + 0x632be59bd9b4e019ULL))) {}

CounterRng CounterRng::split(std::uint64_t stream) const {
  return CounterRng(key_, stream + 1);
}

CounterRng::result_type CounterRng::operator()() {
  ++counter_;
  return mix64(key_ + counter_ * kGolden);
}

double CounterRng::uniform() {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

std::uint64_t CounterRng::below(std::uint64_t n) {
  if (n == 0) return 0;
  // Rejection sampling to avoid modulo bias.
  const std::uint64_t limit = max() - max() % n;
  std::uint64_t x;
  do {
    x = (*this)();
  } while (x >= limit);
  return x % n;
}

ComplexMatrix random_isometry(std::size_t rows, std::size_t cols,
                              CounterRng& rng) {
  if (rows < cols) throw ArgumentError("random_isometry: rows < cols");
  ComplexMatrix g = ginibre(rows, cols, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(rows, cols);
  ComplexMatrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  // Fix column phases so the distribution is Haar.
  for (std::size_t j = 0; j < cols; ++j) {
    const Complex d = r(j, j);
    const double a = std::abs(d);
    if (a > 0) q.col(j) *= d / a;
  }
  return q;
}

ComplexMatrix random_unitary(std::size_t dim, CounterRng& rng) {
  return random_isometry(dim, dim, rng);
}

ComplexMatrix random_density(std::size_t dim, CounterRng& rng) {
  ComplexMatrix g = ginibre(dim, dim, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return hermitian_part(rho);
}

ComplexMatrix random_pure_state(std::size_t dim, CounterRng& rng) {
  ComplexVector v = ginibre(dim, 1, rng).col(0);
  v.normalize();
  return v * v.adjoint();
}

ComplexMatrix random_hermitian(std::size_t dim, CounterRng& rng) {
  return hermitian_part(ginibre(dim, dim, rng));
}

}  // namespace sqip
