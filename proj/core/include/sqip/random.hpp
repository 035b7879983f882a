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

#ifndef SQIP_RANDOM_HPP_
#define SQIP_RANDOM_HPP_

#include <cstdint>
#include <limits>

#include "sqip/qcore.hpp"

namespace sqip {

/// Counter-based generator: output n of stream s under seed k is a pure
/// function of (k, s, n), so split streams replay bit-exactly regardless of
/// the order in which they are consumed. Mixing is SplitMix64.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

  /// Independent child stream; does not advance this generator.
  CounterRng split(std::uint64_t stream) const;

  result_type operator()();
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

  std::uint64_t key() const { return key_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

ComplexMatrix random_unitary(std::size_t dim, CounterRng& rng);
/// Density matrix drawn from the induced (Ginibre) measure with full rank.
ComplexMatrix random_density(std::size_t dim, CounterRng& rng);
ComplexMatrix random_pure_state(std::size_t dim, CounterRng& rng);
/// Hermitian matrix with i.i.d. Gaussian entries (GUE-like).
ComplexMatrix random_hermitian(std::size_t dim, CounterRng& rng);
/// Isometry with `rows >= cols` drawn from the Haar measure.
ComplexMatrix random_isometry(std::size_t rows, std::size_t cols,
                              CounterRng& rng);

}  // namespace sqip

#endif  // SQIP_RANDOM_HPP_
