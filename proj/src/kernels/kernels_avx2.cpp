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

// AVX2 variants. One vector register carries the four reduction lanes of
// the scalar reference; no FMA is used, so each IEEE operation matches the
// scalar code and results are bit-identical.

#include "kernels_impl.hpp"

#if defined(COALSMC_HAVE_AVX2)

#include <immintrin.h>

namespace coalsmc::kernels::detail {

namespace {

const __m256d kSignMask = _mm256_set1_pd(-0.0);

inline void store_lanes(__m256d v, double out[4]) {
  _mm256_storeu_pd(out, v);
}

}  // namespace

double avx2_sum(const double* x, std::size_t n) {
  __m256d vs = _mm256_setzero_pd();
  __m256d vc = _mm256_setzero_pd();
  const std::size_t n4 = n & ~static_cast<std::size_t>(3);
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d vx = _mm256_loadu_pd(x + i);
    const __m256d t = _mm256_add_pd(vs, vx);
    const __m256d abs_s = _mm256_andnot_pd(kSignMask, vs);
    const __m256d abs_x = _mm256_andnot_pd(kSignMask, vx);
    const __m256d s_big = _mm256_cmp_pd(abs_s, abs_x, _CMP_GE_OQ);
    const __m256d big = _mm256_blendv_pd(vx, vs, s_big);
    const __m256d small = _mm256_blendv_pd(vs, vx, s_big);
    vc = _mm256_add_pd(vc, _mm256_add_pd(_mm256_sub_pd(big, t), small));
    vs = t;
  }
  double s[4], c[4];
  store_lanes(vs, s);
  store_lanes(vc, c);
  for (std::size_t l = 0; n4 + l < n; ++l) absorb(s[l], c[l], x[n4 + l]);
  return combine_compensated(s, c);
}

double avx2_dot(const double* a, const double* b, std::size_t n) {
  __m256d vs = _mm256_setzero_pd();
  const std::size_t n4 = n & ~static_cast<std::size_t>(3);
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d p = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    vs = _mm256_add_pd(vs, p);
  }
  double s[4];
  store_lanes(vs, s);
  for (std::size_t l = 0; n4 + l < n; ++l) {
    const double p = a[n4 + l] * b[n4 + l];
    s[l] += p;
  }
  return combine_plain(s);
}

void avx2_scale(double* x, std::size_t n, double factor) {
  const __m256d vf = _mm256_set1_pd(factor);
  const std::size_t n4 = n & ~static_cast<std::size_t>(3);
  for (std::size_t i = 0; i < n4; i += 4) {
    _mm256_storeu_pd(x + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), vf));
  }
  for (std::size_t i = n4; i < n; ++i) x[i] *= factor;
}

MinMax avx2_minmax(const double* x, std::size_t n) {
  __m256d vmn = _mm256_set1_pd(x[0]);
  __m256d vmx = vmn;
  const std::size_t n4 = n & ~static_cast<std::size_t>(3);
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d vx = _mm256_loadu_pd(x + i);
    vmn = _mm256_min_pd(vx, vmn);
    vmx = _mm256_max_pd(vx, vmx);
  }
  double mn[4], mx[4];
  store_lanes(vmn, mn);
  store_lanes(vmx, mx);
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

OffspringMoments avx2_offspring_moments(const std::int32_t* nu, std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d two = _mm256_set1_pd(2.0);
  __m256d a2 = _mm256_setzero_pd(), a3 = _mm256_setzero_pd();
  __m256d aq = _mm256_setzero_pd(), a22 = _mm256_setzero_pd();
  const std::size_t n4 = n & ~static_cast<std::size_t>(3);
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m128i vi =
        _mm_loadu_si128(reinterpret_cast<const __m128i*>(nu + i));
    const __m256d e = _mm256_cvtepi32_pd(vi);
    const __m256d em1 = _mm256_sub_pd(e, one);
    const __m256d em2 = _mm256_sub_pd(e, two);
    const __m256d f2 = _mm256_mul_pd(e, em1);
    const __m256d f3 = _mm256_mul_pd(f2, em2);
    const __m256d q = _mm256_mul_pd(e, e);
    const __m256d f2q = _mm256_mul_pd(f2, q);
    a2 = _mm256_add_pd(a2, f2);
    a3 = _mm256_add_pd(a3, f3);
    aq = _mm256_add_pd(aq, q);
    a22 = _mm256_add_pd(a22, f2q);
  }
  double s2[4], s3[4], sq[4], s22[4];
  store_lanes(a2, s2);
  store_lanes(a3, s3);
  store_lanes(aq, sq);
  store_lanes(a22, s22);
  for (std::size_t l = 0; n4 + l < n; ++l) {
    const double e = static_cast<double>(nu[n4 + l]);
    const double em1 = e - 1.0;
    const double em2 = e - 2.0;
    const double f2 = e * em1;
    const double f3 = f2 * em2;
    const double q = e * e;
    const double f2q = f2 * q;
    s2[l] += f2;
    s3[l] += f3;
    sq[l] += q;
    s22[l] += f2q;
  }
  return OffspringMoments{combine_plain(s2), combine_plain(s3),
                          combine_plain(sq), combine_plain(s22)};
}

}  // namespace coalsmc::kernels::detail

#endif  // COALSMC_HAVE_AVX2
