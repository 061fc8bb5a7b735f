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

// Reference kernels. Element i is assigned to lane i mod 4; trailing
// elements are absorbed lane by lane. The AVX2 variants replay the exact
// same operation order, so outputs are bit-identical across backends.

#include "kernels_impl.hpp"

namespace coalsmc::kernels::detail {

double scalar_sum(const double* x, std::size_t n) {
  double s[4] = {0.0, 0.0, 0.0, 0.0};
  double c[4] = {0.0, 0.0, 0.0, 0.0};
  const std::size_t n4 = n & ~static_cast<std::size_t>(3);
  for (std::size_t i = 0; i < n4; i += 4) {
    for (int l = 0; l < 4; ++l) absorb(s[l], c[l], x[i + l]);
  }
  for (std::size_t l = 0; n4 + l < n; ++l) absorb(s[l], c[l], x[n4 + l]);
  return combine_compensated(s, c);
}

double scalar_dot(const double* a, const double* b, std::size_t n) {
  double s[4] = {0.0, 0.0, 0.0, 0.0};
  const std::size_t n4 = n & ~static_cast<std::size_t>(3);
  for (std::size_t i = 0; i < n4; i += 4) {
    for (int l = 0; l < 4; ++l) {
      const double p = a[i + l] * b[i + l];
      s[l] += p;
    }
  }
  for (std::size_t l = 0; n4 + l < n; ++l) {
    const double p = a[n4 + l] * b[n4 + l];
    s[l] += p;
  }
  return combine_plain(s);
}

void scalar_scale(double* x, std::size_t n, double factor) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= factor;
}

MinMax scalar_minmax(const double* x, std::size_t n) {
  double mn[4], mx[4];
  for (int l = 0; l < 4; ++l) {
    mn[l] = x[0];
    mx[l] = x[0];
  }
  const std::size_t n4 = n & ~static_cast<std::size_t>(3);
  for (std::size_t i = 0; i < n4; i += 4) {
    for (int l = 0; l < 4; ++l) {
      const double v = x[i + l];
      mn[l] = v < mn[l] ? v : mn[l];
      mx[l] = v > mx[l] ? v : mx[l];
    }
  }
  for (std::size_t l = 0; n4 + l < n; ++l) {
    const double v = x[n4 + l];
    mn[l] = v < mn[l] ? v : mn[l];
    mx[l] = v > mx[l] ? v : mx[l];
  }
  MinMax out{mn[0], mx[0]};
  for (int l = 1; l < 4; ++l) {
    out.min = mn[l] < out.min ? mn[l] : out.min;
    out.max = mx[l] > out.max ? mx[l] : out.max;
  }
  return out;
}

namespace {

inline void moment_terms(double e, double& f2, double& f3, double& sq,
                         double& f2sq) {
  const double em1 = e - 1.0;
  const double em2 = e - 2.0;
  f2 = e * em1;
  f3 = f2 * em2;
  sq = e * e;
  f2sq = f2 * sq;
}

}  // namespace

OffspringMoments scalar_offspring_moments(const std::int32_t* nu,
                                          std::size_t n) {
  double s2[4] = {0, 0, 0, 0}, s3[4] = {0, 0, 0, 0};
  double sq[4] = {0, 0, 0, 0}, s22[4] = {0, 0, 0, 0};
  const std::size_t n4 = n & ~static_cast<std::size_t>(3);
  for (std::size_t i = 0; i < n4; i += 4) {
    for (int l = 0; l < 4; ++l) {
      double f2, f3, q, f2q;
      moment_terms(static_cast<double>(nu[i + l]), f2, f3, q, f2q);
      s2[l] += f2;
      s3[l] += f3;
      sq[l] += q;
      s22[l] += f2q;
    }
  }
  for (std::size_t l = 0; n4 + l < n; ++l) {
    double f2, f3, q, f2q;
    moment_terms(static_cast<double>(nu[n4 + l]), f2, f3, q, f2q);
    s2[l] += f2;
    s3[l] += f3;
    sq[l] += q;
    s22[l] += f2q;
  }
  return OffspringMoments{combine_plain(s2), combine_plain(s3),
                          combine_plain(sq), combine_plain(s22)};
}

}  // namespace coalsmc::kernels::detail
