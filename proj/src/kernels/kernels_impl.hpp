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

#include <cmath>
#include <cstddef>
#include <cstdint>

#include "coalsmc/kernels/kernels.hpp"

// Internal: per-backend entry points plus the shared lane-combine helpers.
// The scalar and AVX2 implementations must execute the identical IEEE
// operation DAG; the helpers here define the tail and combine steps both
// backends share.

namespace coalsmc::kernels::detail {

// Neumaier absorb. Error term association is load-bearing: (big - t) + small.
inline void absorb(double& s, double& c, double x) {
  const double t = s + x;
  if (std::abs(s) >= std::abs(x)) {
    c += (s - t) + x;
  } else {
    c += (x - t) + s;
  }
  s = t;
}

// Fold four compensated lanes into one value, fixed order.
inline double combine_compensated(const double s[4], const double c[4]) {
  double S = 0.0, C = 0.0;
  for (int l = 0; l < 4; ++l) {
    absorb(S, C, s[l]);
    absorb(S, C, c[l]);
  }
  return S + C;
}

// Fold four plain lanes, fixed pairwise order.
inline double combine_plain(const double s[4]) {
  return (s[0] + s[1]) + (s[2] + s[3]);
}

double scalar_sum(const double* x, std::size_t n);
double scalar_dot(const double* a, const double* b, std::size_t n);
void scalar_scale(double* x, std::size_t n, double factor);
MinMax scalar_minmax(const double* x, std::size_t n);
OffspringMoments scalar_offspring_moments(const std::int32_t* nu, std::size_t n);

#if defined(COALSMC_HAVE_AVX2)
double avx2_sum(const double* x, std::size_t n);
double avx2_dot(const double* a, const double* b, std::size_t n);
void avx2_scale(double* x, std::size_t n, double factor);
MinMax avx2_minmax(const double* x, std::size_t n);
OffspringMoments avx2_offspring_moments(const std::int32_t* nu, std::size_t n);
#endif

}  // namespace coalsmc::kernels::detail
