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
#include <cstdint>

namespace coalsmc {

/// Falling factorial (a)_b = a(a-1)...(a-b+1). Returns 1 for b == 0 and 0
/// for b > a. Callers keep a, b small enough that the product fits in 64
/// bits; with b <= 3 and a < 2^21 everything is exact.
inline std::uint64_t falling_factorial(std::uint64_t a, std::uint64_t b) {
  if (b > a) return 0;
  std::uint64_t out = 1;
  for (std::uint64_t k = 0; k < b; ++k) out *= a - k;
  return out;
}

/// Same quantity in double, for use inside floating-point statistics.
inline double falling_factorial_d(double a, int b) {
  double out = 1.0;
  for (int k = 0; k < b; ++k) out *= a - k;
  return out > 0.0 ? out : 0.0;
}

/// Neumaier-compensated accumulator. Running sums of particle weights and
/// clock increments must stay accurate to a few ulp for N up to 10^6.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }

  double value() const { return sum + carry; }
};

}  // namespace coalsmc
