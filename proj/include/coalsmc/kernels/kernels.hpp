/*
 * Copyright 2026 The coalsmc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

// Arithmetic reduction kernels used in the per-generation inner loops.
//
// Every kernel is defined by a fixed 4-lane reduction order so that the
// scalar reference and the AVX2 variant produce bit-identical results;
// the equivalence tests assert exact equality. The backend is picked at
// runtime from CPUID and can be forced for testing (or via the
// COALSMC_SIMD=scalar|avx2 environment variable).

namespace coalsmc::kernels {

enum class Backend { kAuto, kScalar, kAvx2 };

/// Name of the backend currently in use ("scalar" or "avx2").
const char* backend_name();

/// Force a backend; kAuto re-resolves from CPUID/environment.
/// Throws ParameterError if the requested backend is unavailable.
void force_backend(Backend b);

/// Neumaier-compensated sum (4 independent compensated lanes).
double sum(const double* x, std::size_t n);

/// Plain 4-lane dot product (no FMA contraction).
double dot(const double* a, const double* b, std::size_t n);

/// x[i] *= factor for all i.
void scale(double* x, std::size_t n, double factor);

struct MinMax {
  double min;
  double max;
};

/// Elementwise min and max (n >= 1).
MinMax minmax(const double* x, std::size_t n);

/// One-pass falling-factorial moments of an offspring-count vector.
/// All accumulators are plain 4-lane double sums; for counts below 2^17
/// every term and partial sum is an exactly representable integer.
struct OffspringMoments {
  double sum_ff2;     // sum of v(v-1)
  double sum_ff3;     // sum of v(v-1)(v-2)
  double sum_sq;      // sum of v^2
  double sum_ff2_sq;  // sum of v(v-1) * v^2
};

OffspringMoments offspring_moments(const std::int32_t* nu, std::size_t n);

inline double sum(std::span<const double> x) { return sum(x.data(), x.size()); }
inline double dot(std::span<const double> a, std::span<const double> b) {
  return dot(a.data(), b.data(), a.size());
}
inline void scale(std::span<double> x, double factor) {
  scale(x.data(), x.size(), factor);
}
inline MinMax minmax(std::span<const double> x) {
  return minmax(x.data(), x.size());
}
inline OffspringMoments offspring_moments(std::span<const std::int32_t> nu) {
  return offspring_moments(nu.data(), nu.size());
}

}  // namespace coalsmc::kernels
